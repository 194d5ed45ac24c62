#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "metadist/moments.hpp"
#include "metadist/sim.hpp"

namespace metadist::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidArgs = 2;
inline constexpr int kExitMath = 3;
inline constexpr int kExitIo = 4;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double db_to_linear(double db);

// Accepts a number or "-inf" (mapping to a linear value of 0).
double parse_db(const std::string& text);

// Scenario as given on the command line, in dB/dBm notation.
struct ScenarioArgs {
  double lambda_bs = 1e-3;
  double gamma_pl = 4.0;
  std::string theta_db = "0";
  std::string power_dbm = "0";
  std::string noise_dbm = "-100";

  SystemParams to_params() const;
};

enum class OutputFormat { csv, json };

// Command output: a numeric table plus free-form metadata.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json meta = nlohmann::json::object();
};

// CSV: one header line then rows. JSON: {"meta", "columns", "rows"}.
void write_table(std::ostream& out, const Table& table, OutputFormat format);

enum class MomentColumns { exact, approx, both };

Table cmd_moments(const SystemParams& params, int n_max, MomentColumns method);

struct BasisChoice {
  bool match = true;
  double alpha = 0.0;
  double beta = 0.0;
};

// Reads a moments file: CSV with an "n,mu" header, or JSON holding a "moments"
// or "empirical_moments" array.
MomentSequence read_moments_file(const std::string& path);

Table cmd_reconstruct(const MomentSequence& moments, int order,
                      const BasisChoice& basis, int grid_points);

struct SimulateResult {
  sim::EmpiricalMeta campaign;
  nlohmann::json summary;
};

// Runs the campaign and writes the samples CSV and summary JSON.
SimulateResult cmd_simulate(const sim::SimConfig& config,
                            const std::string& samples_path,
                            const std::string& summary_path);

enum class MomentSource { exact, empirical };

Table cmd_compare(const SystemParams& params, const std::vector<double>& samples,
                  int order, int grid_points, MomentSource source);

std::vector<double> read_samples_file(const std::string& path);

struct PowerSweep {
  double lambda_min = 1e-4;
  double lambda_max = 1e-2;
  int points = 5;
};

// Rows (lambda, p_mW, p_dBm); meta carries the least-squares log-log slope.
Table cmd_power(const SystemParams& params, double x_rel, double epsilon,
                const PowerSweep& sweep);

// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace metadist::cli
