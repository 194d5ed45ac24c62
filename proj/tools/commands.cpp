#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "metadist/errors.hpp"
#include "metadist/jacobi.hpp"
#include "metadist/scaling.hpp"
#include "metadist/sim_io.hpp"

namespace metadist::cli {

using nlohmann::json;

namespace {

constexpr int kSummaryMomentOrder = 10;
constexpr int kSummaryGridPoints = 21;
constexpr double kCompareFloor = 0.02;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw DomainError("grid needs at least 2 points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = static_cast<double>(i) / (points - 1);
  }
  grid.back() = 1.0;
  return grid;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

json moments_json(const MomentSequence& m) {
  return json{{"method", std::string(to_string(m.method))}, {"values", m.values}};
}

json basis_json(const jacobi::ReconstructedDistribution& dist) {
  const auto diag = jacobi::convergence_diagnostic(dist);
  return json{{"alpha", dist.basis.alpha},
              {"beta", dist.basis.beta},
              {"order", dist.basis.order},
              {"coefficients", dist.coefficients},
              {"precision_warning", dist.precision_warning()},
              {"convergence",
               {{"terms", diag.terms},
                {"warning", diag.warning},
                {"message", diag.message}}}};
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// All mass at 1 (e.g. theta = 0): no beta shape can be matched.
bool point_mass_at_one(const MomentSequence& m) {
  return m.values.size() > 1 && m.values[1] >= 1.0 - 1e-15;
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double parse_db(const std::string& text) {
  const std::string t = lower(text);
  if (t == "-inf" || t == "-infinity") return 0.0;
  double value = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw DomainError("not a dB value: '" + text + "'");
  }
  return db_to_linear(value);
}

SystemParams ScenarioArgs::to_params() const {
  SystemParams p;
  p.lambda_bs = lambda_bs;
  p.gamma_pl = gamma_pl;
  p.theta = parse_db(theta_db);
  p.power = parse_db(power_dbm);
  p.noise = parse_db(noise_dbm);
  p.validate();
  return p;
}

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
  if (format == OutputFormat::json) {
    json j{{"meta", table.meta}, {"columns", table.columns}, {"rows", table.rows}};
    out << j.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_number(row[i]);
    }
    out << '\n';
  }
}

Table cmd_moments(const SystemParams& params, int n_max, MomentColumns method) {
  params.validate();
  if (n_max < 1) throw DomainError("n-max must be >= 1");
  const bool want_exact = method != MomentColumns::approx;
  const bool want_approx = method != MomentColumns::exact;
  const double nan = std::nan("");
  const double pi_lambda = std::numbers::pi * params.lambda_bs;

  Table t;
  t.columns = {"n", "mu_exact", "mu_approx", "abs_diff", "error_bound"};
  for (int n = 1; n <= n_max; ++n) {
    const double ex = want_exact ? moments::moment_exact(params, n) : nan;
    const double ap = want_approx ? moments::moment_approx(params, n) : nan;
    double bound = 0.0;
    if (params.theta > 0.0) {
      const IntegralCoeffs c = moments::coeffs(params, n);
      bound = pi_lambda *
              moments::approx_error_bound(c.a_coef, c.b_coef, params.gamma_pl);
    }
    t.rows.push_back({static_cast<double>(n), ex, ap,
                      want_exact && want_approx ? std::abs(ex - ap) : nan, bound});
  }
  t.meta = json{{"command", "moments"},
                {"params",
                 {{"lambda_bs", params.lambda_bs},
                  {"gamma_pl", params.gamma_pl},
                  {"theta", params.theta},
                  {"power_mw", params.power},
                  {"noise_mw", params.noise}}}};
  return t;
}

MomentSequence read_moments_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open moments file '" + path + "'");
  MomentSequence seq;
  seq.method = MomentMethod::empirical;

  if (std::filesystem::path(path).extension() == ".json") {
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw IoError("moments file '" + path + "': " + e.what());
    }
    const char* key = j.contains("moments") ? "moments" : "empirical_moments";
    if (!j.contains(key) || !j[key].is_array()) {
      throw IoError("moments file '" + path +
                    "' has no 'moments' or 'empirical_moments' array");
    }
    seq.values = j[key].get<std::vector<double>>();
  } else {
    std::string line;
    std::getline(in, line);
    if (line.rfind("n,mu", 0) != 0) {
      throw IoError("moments CSV '" + path + "' must start with 'n,mu'");
    }
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream row(line);
      int n = -1;
      char comma = 0;
      double mu = 0.0;
      if (!(row >> n >> comma >> mu) || comma != ',' ||
          n != static_cast<int>(seq.values.size())) {
        throw IoError("moments CSV '" + path + "': bad row '" + line + "'");
      }
      seq.values.push_back(mu);
    }
  }
  if (seq.values.empty() || std::abs(seq.values[0] - 1.0) > 1e-12) {
    throw IoError("moments file '" + path + "' must start with mu_0 = 1");
  }
  return seq;
}

Table cmd_reconstruct(const MomentSequence& moments, int order,
                      const BasisChoice& basis, int grid_points) {
  if (order < 0 || order > jacobi::kMaxOrder) {
    throw DomainError("order must be in [0, " + std::to_string(jacobi::kMaxOrder) + "]");
  }
  jacobi::ReconstructedDistribution dist;
  if (basis.match) {
    dist = jacobi::reconstruct(moments, order);
  } else {
    dist = jacobi::fourier_jacobi_coeffs(
        moments, jacobi::JacobiBasis{basis.alpha, basis.beta, order});
  }
  Table t;
  t.columns = {"x", "pdf", "cdf", "reliability"};
  for (double x : uniform_grid(grid_points)) {
    const double pdf = (x > 0.0 && x < 1.0) ? jacobi::eval_pdf(dist, x) : std::nan("");
    const double cdf = clamp01(jacobi::eval_cdf(dist, x));
    t.rows.push_back({x, pdf, cdf, jacobi::meta_reliability(dist, x)});
  }
  t.meta = json{{"command", "reconstruct"},
                {"basis_mode", basis.match ? "match" : "explicit"},
                {"basis", basis_json(dist)},
                {"moments", moments_json(moments)}};
  return t;
}

SimulateResult cmd_simulate(const sim::SimConfig& config,
                            const std::string& samples_path,
                            const std::string& summary_path) {
  config.validate();
  SimulateResult res;
  res.campaign = sim::run_campaign(config);

  std::ofstream samples(samples_path);
  if (!samples) throw IoError("cannot write samples file '" + samples_path + "'");
  sim::write_samples_csv(samples, res.campaign.ccp_samples);
  samples.close();
  if (!samples) throw IoError("failed writing '" + samples_path + "'");

  std::vector<double> sorted = res.campaign.ccp_samples;
  std::sort(sorted.begin(), sorted.end());
  json grid = json::array();
  for (double x : uniform_grid(kSummaryGridPoints)) {
    grid.push_back({{"x", x}, {"reliability", sim::empirical_reliability_sorted(sorted, x)}});
  }
  res.summary = sim::campaign_to_json(res.campaign);
  res.summary["samples_file"] = samples_path;
  res.summary["empirical_moments"] =
      sim::empirical_moments(res.campaign, kSummaryMomentOrder).values;
  res.summary["reliability_grid"] = grid;

  std::ofstream summary(summary_path);
  if (!summary) throw IoError("cannot write summary file '" + summary_path + "'");
  summary << res.summary.dump(2) << '\n';
  summary.close();
  if (!summary) throw IoError("failed writing '" + summary_path + "'");
  return res;
}

std::vector<double> read_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open samples file '" + path + "'");
  try {
    return sim::read_samples_csv(in);
  } catch (const std::runtime_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

Table cmd_compare(const SystemParams& params, const std::vector<double>& samples,
                  int order, int grid_points, MomentSource source) {
  params.validate();
  if (order < 0 || order > jacobi::kMaxOrder) {
    throw DomainError("order must be in [0, " + std::to_string(jacobi::kMaxOrder) + "]");
  }
  sim::EmpiricalMeta emp;
  emp.ccp_samples = samples;
  const int needed = std::max(order, 2);
  const MomentSequence empirical =
      sim::empirical_moments(emp, std::max(needed, kSummaryMomentOrder));
  MomentSequence used = source == MomentSource::empirical
                            ? empirical
                            : moments::exact_moments(params, needed);
  used.values.resize(needed + 1);

  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());

  Table t;
  t.columns = {"x", "empirical_rel", "beta_rel", "fj_rel", "relerr_beta", "relerr_fj"};
  json basis_meta;
  std::function<double(double)> beta_rel;
  std::function<double(double)> fj_rel;
  std::optional<jacobi::ReconstructedDistribution> beta_dist, fj_dist;
  if (point_mass_at_one(used)) {
    beta_rel = fj_rel = [](double x) { return x < 1.0 ? 1.0 : 0.0; };
    basis_meta = "point mass at 1";
  } else {
    fj_dist = jacobi::reconstruct(used, order);
    jacobi::JacobiBasis b0 = fj_dist->basis;
    b0.order = 0;
    beta_dist = jacobi::fourier_jacobi_coeffs(used, b0);
    beta_rel = [&](double x) { return jacobi::meta_reliability(*beta_dist, x); };
    fj_rel = [&](double x) { return jacobi::meta_reliability(*fj_dist, x); };
    basis_meta = basis_json(*fj_dist);
  }

  for (double x : uniform_grid(grid_points)) {
    const double e = sim::empirical_reliability_sorted(sorted, x);
    if (e < kCompareFloor) continue;
    const double rb = beta_rel(x);
    const double rf = fj_rel(x);
    t.rows.push_back({x, e, rb, rf, std::abs(rb - e) / e, std::abs(rf - e) / e});
  }

  auto median_of = [&](std::size_t col) {
    std::vector<double> v;
    for (const auto& r : t.rows) v.push_back(r[col]);
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  };
  t.meta = json{{"command", "compare"},
                {"num_samples", samples.size()},
                {"moment_source", source == MomentSource::exact ? "exact" : "empirical"},
                {"empirical_moments", empirical.values},
                {"basis", basis_meta},
                {"median_relerr_beta", median_of(4)},
                {"median_relerr_fj", median_of(5)}};
  return t;
}

Table cmd_power(const SystemParams& params, double x_rel, double epsilon,
                const PowerSweep& sweep) {
  if (sweep.points < 2 || !(sweep.lambda_min > 0.0) ||
      !(sweep.lambda_max > sweep.lambda_min)) {
    throw DomainError("lambda sweep needs 0 < min < max and at least 2 points");
  }
  const scaling::QosSpec qos{x_rel, epsilon};
  qos.validate();

  Table t;
  t.columns = {"lambda", "p_mW", "p_dBm"};
  const double log_lo = std::log(sweep.lambda_min);
  const double log_hi = std::log(sweep.lambda_max);
  std::vector<double> lx, ly;
  bool unconstrained = false;
  for (int i = 0; i < sweep.points; ++i) {
    SystemParams p = params;
    p.lambda_bs = std::exp(log_lo + (log_hi - log_lo) * i / (sweep.points - 1));
    if (i == sweep.points - 1) p.lambda_bs = sweep.lambda_max;
    const scaling::PowerResult r = scaling::min_power(p, qos);
    unconstrained = r.unconstrained;
    const double dbm = r.power_mw > 0.0 ? 10.0 * std::log10(r.power_mw)
                                        : -std::numeric_limits<double>::infinity();
    t.rows.push_back({p.lambda_bs, r.power_mw, dbm});
    if (r.power_mw > 0.0) {
      lx.push_back(std::log(p.lambda_bs));
      ly.push_back(std::log(r.power_mw));
    }
  }

  double slope = std::nan("");
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    slope = sxy / sxx;
  }
  t.meta = json{{"command", "power"},
                {"x_rel", x_rel},
                {"epsilon", epsilon},
                {"target_mu2", 1.0 - epsilon + x_rel * x_rel},
                {"unconstrained", unconstrained},
                {"loglog_slope", slope}};
  return t;
}

namespace {

void add_scenario(CLI::App* cmd, ScenarioArgs& s, bool with_power = true) {
  cmd->add_option("--lambda", s.lambda_bs, "BS density per m^2")->capture_default_str();
  cmd->add_option("--gamma", s.gamma_pl, "path-loss exponent (> 2)")->capture_default_str();
  cmd->add_option("--theta-db", s.theta_db, "SIR threshold in dB (-inf allowed)")
      ->capture_default_str();
  if (with_power) {
    cmd->add_option("--power-dbm", s.power_dbm, "transmit power in dBm")
        ->capture_default_str();
  }
  cmd->add_option("--noise-dbm", s.noise_dbm, "noise power in dBm (-inf allowed)")
      ->capture_default_str();
}

void add_format(CLI::App* cmd, OutputFormat& format, std::string& out_path) {
  cmd->add_option("--format", format, "output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"csv", OutputFormat::csv},
                                              {"json", OutputFormat::json}},
          CLI::ignore_case));
  cmd->add_option("--out", out_path, "output path (stdout if omitted)");
}

std::string sidecar_path(const std::string& path, const char* suffix) {
  std::filesystem::path p(path);
  p.replace_extension(suffix);
  return p.string();
}

void emit(const Table& table, OutputFormat format, const std::string& out_path,
          std::ostream& out, std::ostream& err) {
  if (out_path.empty()) {
    write_table(out, table, format);
    if (format == OutputFormat::csv) err << "# meta " << table.meta.dump() << '\n';
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw IoError("cannot write '" + out_path + "'");
  write_table(file, table, format);
  file.close();
  if (!file) throw IoError("failed writing '" + out_path + "'");
  if (format == OutputFormat::csv) {
    const std::string meta_path = sidecar_path(out_path, ".meta.json");
    std::ofstream meta(meta_path);
    if (!meta) throw IoError("cannot write '" + meta_path + "'");
    meta << table.meta.dump(2) << '\n';
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Meta distribution of the SIR/SINR in Poisson cellular networks"};
  app.require_subcommand(1);

  ScenarioArgs scenario;
  OutputFormat format = OutputFormat::csv;
  std::string out_path;
  int order = jacobi::kDefaultOrder;
  int grid_points = 101;

  auto* moments_cmd = app.add_subcommand("moments", "moments of the coverage probability");
  add_scenario(moments_cmd, scenario);
  add_format(moments_cmd, format, out_path);
  int n_max = 10;
  MomentColumns method = MomentColumns::both;
  moments_cmd->add_option("--n-max", n_max, "highest moment order")->capture_default_str();
  moments_cmd->add_option("--method", method, "exact, approx or both")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, MomentColumns>{{"exact", MomentColumns::exact},
                                               {"approx", MomentColumns::approx},
                                               {"both", MomentColumns::both}},
          CLI::ignore_case));

  auto* recon_cmd = app.add_subcommand("reconstruct", "Fourier-Jacobi reconstruction");
  add_scenario(recon_cmd, scenario);
  add_format(recon_cmd, format, out_path);
  std::string moments_file;
  std::string basis_mode = "match";
  BasisChoice basis;
  recon_cmd->add_option("--moments-file", moments_file, "read moments instead of computing");
  recon_cmd->add_option("--order", order, "expansion order")->capture_default_str();
  recon_cmd->add_option("--basis", basis_mode, "match or explicit")
      ->check(CLI::IsMember({"match", "explicit"}));
  auto* alpha_opt = recon_cmd->add_option("--alpha", basis.alpha, "explicit basis alpha");
  auto* beta_opt = recon_cmd->add_option("--beta", basis.beta, "explicit basis beta");
  recon_cmd->add_option("--grid-points", grid_points, "uniform grid size")
      ->capture_default_str();

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo campaign");
  add_scenario(sim_cmd, scenario);
  sim::SimConfig sim_config;
  std::string mode = "analytic";
  std::string samples_out = "samples.csv";
  std::string summary_out;
  sim_cmd->add_option("--radius-m", sim_config.region_radius, "simulation disk radius")
      ->capture_default_str();
  sim_cmd->add_option("--realizations", sim_config.num_realizations)->capture_default_str();
  sim_cmd->add_option("--mode", mode, "analytic or sampled")
      ->check(CLI::IsMember({"analytic", "sampled"}));
  sim_cmd->add_option("--channel-draws", sim_config.num_channel_draws)->capture_default_str();
  sim_cmd->add_option("--seed", sim_config.rng_seed)->capture_default_str();
  sim_cmd->add_option("--threads", sim_config.num_threads, "0 = hardware concurrency");
  sim_cmd->add_option("--out", samples_out, "samples CSV path")->capture_default_str();
  sim_cmd->add_option("--summary", summary_out, "summary JSON path");

  auto* cmp_cmd = app.add_subcommand("compare", "reconstruction vs simulation");
  add_scenario(cmp_cmd, scenario);
  add_format(cmp_cmd, format, out_path);
  std::string samples_in;
  MomentSource source = MomentSource::exact;
  cmp_cmd->add_option("--samples", samples_in, "samples CSV from simulate")->required();
  cmp_cmd->add_option("--order", order, "expansion order")->capture_default_str();
  cmp_cmd->add_option("--grid-points", grid_points)->capture_default_str();
  cmp_cmd->add_option("--moments-source", source, "exact or empirical")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, MomentSource>{{"exact", MomentSource::exact},
                                              {"empirical", MomentSource::empirical}},
          CLI::ignore_case));

  auto* power_cmd = app.add_subcommand("power", "minimum transmit power vs density");
  add_scenario(power_cmd, scenario, false);
  add_format(power_cmd, format, out_path);
  double x_rel = 0.5;
  double epsilon = 0.1;
  PowerSweep sweep;
  power_cmd->add_option("--x-rel", x_rel, "reliability threshold")->capture_default_str();
  power_cmd->add_option("--epsilon", epsilon, "outage tolerance")->capture_default_str();
  power_cmd->add_option("--lambda-min", sweep.lambda_min)->capture_default_str();
  power_cmd->add_option("--lambda-max", sweep.lambda_max)->capture_default_str();
  power_cmd->add_option("--lambda-points", sweep.points)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidArgs;
  }

  try {
    if (moments_cmd->parsed()) {
      emit(cmd_moments(scenario.to_params(), n_max, method), format, out_path, out, err);
    } else if (recon_cmd->parsed()) {
      basis.match = basis_mode == "match";
      if (!basis.match && (alpha_opt->count() == 0 || beta_opt->count() == 0)) {
        throw DomainError("--basis explicit needs --alpha and --beta");
      }
      const int needed = std::max(order, 2);
      MomentSequence m = moments_file.empty()
                             ? moments::exact_moments(scenario.to_params(), needed)
                             : read_moments_file(moments_file);
      emit(cmd_reconstruct(m, order, basis, grid_points), format, out_path, out, err);
    } else if (sim_cmd->parsed()) {
      sim_config.params = scenario.to_params();
      sim_config.fading_mode = sim::fading_mode_from_string(mode);
      if (summary_out.empty()) summary_out = sidecar_path(samples_out, ".summary.json");
      const SimulateResult r = cmd_simulate(sim_config, samples_out, summary_out);
      out << "wrote " << r.campaign.ccp_samples.size() << " samples to " << samples_out
          << " and summary to " << summary_out << '\n';
    } else if (cmp_cmd->parsed()) {
      const auto samples = read_samples_file(samples_in);
      emit(cmd_compare(scenario.to_params(), samples, order, grid_points, source),
           format, out_path, out, err);
    } else if (power_cmd->parsed()) {
      SystemParams p = scenario.to_params();
      const Table t = cmd_power(p, x_rel, epsilon, sweep);
      emit(t, format, out_path, out, err);
      err << "fitted log-log slope: " << format_number(t.meta["loglog_slope"].get<double>())
          << '\n';
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InfeasibleQosError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitMath;
  } catch (const DegenerateMomentsError& e) {
    err << "degenerate moments: " << e.what() << '\n';
    return kExitMath;
  } catch (const InsufficientMomentsError& e) {
    err << "insufficient moments: " << e.what() << '\n';
    return kExitMath;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << '\n';
    return kExitMath;
  } catch (const DomainError& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitInvalidArgs;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitMath;
  }
  return kExitOk;
}

}  // namespace metadist::cli
