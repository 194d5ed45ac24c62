#include "metadist/sim_io.hpp"

#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace metadist::sim {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

void write_samples_csv(std::ostream& out, const std::vector<double>& samples) {
  out << "ccp\n";
  out << std::setprecision(17);
  for (double c : samples) out << c << '\n';
}

std::vector<double> read_samples_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "ccp") {
    throw std::runtime_error("samples CSV must start with a 'ccp' header");
  }
  std::vector<double> samples;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    const std::string field = trim(line);
    if (field.empty()) continue;
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw std::runtime_error("samples CSV: bad number on row " +
                               std::to_string(row));
    }
    if (!(value >= 0.0 && value <= 1.0)) {
      throw std::runtime_error("samples CSV: value outside [0,1] on row " +
                               std::to_string(row));
    }
    samples.push_back(value);
  }
  if (samples.empty()) throw std::runtime_error("samples CSV holds no samples");
  return samples;
}

std::string to_string(FadingMode mode) {
  return mode == FadingMode::sampled ? "sampled" : "analytic";
}

FadingMode fading_mode_from_string(const std::string& s) {
  if (s == "analytic") return FadingMode::analytic;
  if (s == "sampled") return FadingMode::sampled;
  throw std::invalid_argument("unknown fading mode '" + s + "'");
}

nlohmann::json config_to_json(const SimConfig& config) {
  const SystemParams& p = config.params;
  return {
      {"params",
       {{"lambda_bs", p.lambda_bs},
        {"gamma_pl", p.gamma_pl},
        {"theta", p.theta},
        {"power_mw", p.power},
        {"noise_mw", p.noise}}},
      {"region_radius_m", config.region_radius},
      {"num_realizations", config.num_realizations},
      {"fading_mode", to_string(config.fading_mode)},
      {"num_channel_draws", config.num_channel_draws},
      {"rng_seed", config.rng_seed},
  };
}

SimConfig config_from_json(const nlohmann::json& j) {
  SimConfig c;
  const auto& p = j.at("params");
  c.params.lambda_bs = p.at("lambda_bs").get<double>();
  c.params.gamma_pl = p.at("gamma_pl").get<double>();
  c.params.theta = p.at("theta").get<double>();
  c.params.power = p.at("power_mw").get<double>();
  c.params.noise = p.at("noise_mw").get<double>();
  c.region_radius = j.at("region_radius_m").get<double>();
  c.num_realizations = j.at("num_realizations").get<int>();
  c.fading_mode = fading_mode_from_string(j.at("fading_mode").get<std::string>());
  c.num_channel_draws = j.at("num_channel_draws").get<int>();
  c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  return c;
}

nlohmann::json campaign_to_json(const EmpiricalMeta& emp) {
  return {
      {"config", config_to_json(emp.config)},
      {"samples", emp.ccp_samples},
      {"diagnostics", {{"empty_redraws", emp.empty_redraws}}},
  };
}

EmpiricalMeta campaign_from_json(const nlohmann::json& j) {
  EmpiricalMeta emp;
  emp.config = config_from_json(j.at("config"));
  emp.ccp_samples = j.at("samples").get<std::vector<double>>();
  emp.empty_redraws = j.at("diagnostics").at("empty_redraws").get<long>();
  return emp;
}

}  // namespace metadist::sim
