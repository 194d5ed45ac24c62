// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "metadist/jacobi.hpp"
#include "metadist/moments.hpp"
#include "metadist/quadrature.hpp"
#include "metadist/scaling.hpp"
#include "metadist/sim.hpp"
#include "metadist/specfun.hpp"
#include "oracles.hpp"

using namespace metadist;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the worst observed value against its limit.
class Check {
 public:
  void fail(const std::string& why) {
    if (pass_) first_failure_ = why;
    pass_ = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
  bool pass() const { return pass_; }
  const std::string& first_failure() const { return first_failure_; }

 private:
  bool pass_ = true;
  std::string first_failure_;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Outcome finish(const Check& c, const std::string& summary) {
  return {c.pass(), c.pass() ? summary : c.first_failure() + "; " + summary};
}

SystemParams reference_params(double gamma_pl = 5.0) { return {1e-3, gamma_pl, 1.0, 1.0, 1e-10}; }

// integral over [0,1] of g(x, 1-x); both halves mapped by a fourth power so
// endpoint powers above -1 become smooth.
double integrate01(const std::function<double(double, double)>& g, double tol = 1e-12) {
  quad::QuadOptions opts;
  opts.abs_tol = tol / 2;
  opts.max_intervals = 5000;
  const double s_mid = std::pow(0.5, 0.25);
  auto half = [&](bool upper) {
    return quad::integrate_finite(
               [&](double s) {
                 const double u = s * s * s * s;
                 const double jac = 4.0 * s * s * s;
                 return upper ? jac * g(1.0 - u, u) : jac * g(u, 1.0 - u);
               },
               0.0, s_mid, opts)
        .value;
  };
  return half(false) + half(true);
}

double bare_integral(double a, double b, double g) {
  quad::QuadOptions opts;
  opts.abs_tol = 1e-14;
  opts.rel_tol = 1e-13;
  return quad::integrate_semi_infinite_decaying(
             [&](double z) { return std::exp(-(a * z + b * std::pow(z, 0.5 * g))); },
             quad::DecayBound{a, 1.0}, opts)
      .value;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

Outcome moment_exactness() {
  Check c;
  double worst_trivial = 0.0;
  for (double g : {2.5, 3.0, 4.0, 5.0}) {
    for (double lambda : {1e-5, 1e-3, 1e-1}) {
      for (double p : {1e-3, 1.0, 100.0}) {
        for (double noise : {0.0, 1e-10, 1.0}) {
          const SystemParams sp{lambda, g, 0.0, p, noise};
          for (int n : {1, 2, 5, 10}) {
            const double e = std::abs(moments::moment_exact(sp, n) - 1.0);
            const double a = std::abs(moments::moment_approx(sp, n) - 1.0);
            worst_trivial = std::max({worst_trivial, e, a});
          }
        }
      }
    }
  }
  c.expect(worst_trivial <= 1e-10, fmt("theta=0 deviation %.3g > 1e-10", worst_trivial));

  double worst_noiseless = 0.0;
  for (double g : {3.0, 4.0, 5.0}) {
    for (double theta : {0.1, 1.0, 10.0}) {
      const SystemParams sp{1e-3, g, theta, 1.0, 0.0};
      for (int n = 1; n <= 10; ++n) {
        const double ref = 1.0 / (1.0 + oracle::rho_quadrature(n, g, theta));
        const double e = std::abs(moments::moment_exact(sp, n) - ref);
        const double a = std::abs(moments::moment_approx(sp, n) - ref);
        worst_noiseless = std::max({worst_noiseless, e, a});
      }
    }
  }
  c.expect(worst_noiseless <= 1e-9, fmt("noiseless deviation %.3g > 1e-9", worst_noiseless));
  return finish(c, fmt("max |mu-1| at theta=0: %.2g; max |mu-1/2F1| at noise=0: %.2g",
                       worst_trivial, worst_noiseless));
}

Outcome bound_soundness() {
  Check c;
  double min_slack = INFINITY;
  for (double g : {2.5, 3.0, 4.0, 5.0}) {
    for (double a : {1e-3, 1.0, 1e3}) {
      for (double b : {1e-3, 1.0, 1e3}) {
        const double err = std::abs(bare_integral(a, b, g) - 1.0 / moments::approx_k(a, b, g));
        const double bound = moments::approx_error_bound(a, b, g);
        c.expect(err <= bound, fmt("gamma=%g A=%g B=%g: error %.3g exceeds bound", g, a, b, err));
        if (bound > 0) min_slack = std::min(min_slack, bound / std::max(err, 1e-300));
      }
    }
  }
  int decays = 0;
  for (double g : {2.5, 3.0, 4.0, 5.0}) {
    for (double b : {1e-3, 1.0, 1e3}) {
      double prev = moments::approx_error_bound(1e6, b, g);
      bool ok = true;
      for (double a : {1e7, 1e8, 1e9}) {
        const double bound = moments::approx_error_bound(a, b, g);
        ok = ok && bound < prev;
        prev = bound;
      }
      ok = ok && prev < 1e-6;
      c.expect(ok, fmt("gamma=%g B=%g: bound not decreasing to 0 over A=1e7..1e9", g, b));
      decays += ok;
    }
  }
  return finish(c, fmt("36 grid points, min bound/error ratio %.3g; %g/12 monotone decays",
                       min_slack, decays));
}

Outcome jacobi_machinery() {
  Check c;
  const jacobi::JacobiBasis matched = jacobi::reconstruct(
      moments::exact_moments(reference_params(), 10), 10).basis;
  const std::vector<std::pair<double, double>> pairs = {
      {0.0, 0.0}, {-0.5, -0.5}, {1.5, 0.7}, {matched.alpha, matched.beta}};
  double worst_orth = 0.0;
  for (auto [a, b] : pairs) {
    for (int m = 0; m <= 12; ++m) {
      for (int n = m; n <= 12; ++n) {
        const double ip = integrate01([&](double x, double omx) {
          return jacobi::jacobi_poly(a, b, m, x) * jacobi::jacobi_poly(a, b, n, x) *
                 std::pow(omx, a) * std::pow(x, b);
        });
        const double target = m == n ? jacobi::norm_h(a, b, n) : 0.0;
        worst_orth = std::max(worst_orth, std::abs(ip - target));
      }
    }
  }
  c.expect(worst_orth <= 1e-8, fmt("orthogonality error %.3g > 1e-8", worst_orth));

  double worst_legendre = 0.0;
  for (int n = 0; n <= 12; ++n) {
    worst_legendre =
        std::max(worst_legendre, std::abs(jacobi::norm_h(0.0, 0.0, n) - 1.0 / (2 * n + 1)));
  }
  c.expect(worst_legendre <= 1e-12, fmt("Legendre h_n error %.3g > 1e-12", worst_legendre));

  double worst_rodrigues = 0.0;
  quad::QuadOptions opts;
  opts.abs_tol = 1e-13;
  for (auto [a, b] : pairs) {
    for (int n = 1; n <= 12; ++n) {
      for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        // t = s^4 removes the t^b endpoint singularity.
        const double lhs = quad::integrate_finite(
                               [&](double s) {
                                 const double t = s * s * s * s;
                                 return 4.0 * s * s * s * std::pow(1 - t, a) * std::pow(t, b) *
                                        jacobi::jacobi_poly(a, b, n, t);
                               },
                               0.0, std::pow(x, 0.25), opts)
                               .value;
        const double rhs = -1.0 / n * std::pow(1 - x, a + 1) * std::pow(x, b + 1) *
                           jacobi::jacobi_poly(a + 1, b + 1, n - 1, x);
        worst_rodrigues = std::max(worst_rodrigues, std::abs(lhs - rhs));
      }
    }
  }
  c.expect(worst_rodrigues <= 1e-8, fmt("antiderivative error %.3g > 1e-8", worst_rodrigues));
  return finish(c, fmt("orthogonality %.2g, Legendre h_n %.2g, antiderivative %.2g", worst_orth,
                       worst_legendre, worst_rodrigues));
}

Outcome beta_round_trip() {
  Check c;
  const double p = 2.7, q = 1.3;
  MomentSequence m;
  m.values = oracle::beta_moments(p, q, 10);
  m.method = MomentMethod::empirical;
  const jacobi::ReconstructedDistribution d =
      jacobi::fourier_jacobi_coeffs(m, jacobi::moment_match_basis(m.values[1], m.values[2], 10));
  double worst_coef = 0.0;
  for (int n = 1; n <= 10; ++n) worst_coef = std::max(worst_coef, std::abs(d.coefficients[n]));
  c.expect(worst_coef < 1e-8, fmt("max |a_n| %.3g >= 1e-8", worst_coef));
  double worst_cdf = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    worst_cdf = std::max(worst_cdf,
                         std::abs(jacobi::eval_cdf(d, x) - specfun::reg_inc_beta(x, p, q)));
  }
  c.expect(worst_cdf <= 1e-6, fmt("CDF deviation %.3g > 1e-6", worst_cdf));
  return finish(c, fmt("alpha=%.6g beta=%.6g, max |a_n| %.2g, max CDF error %.2g", d.basis.alpha,
                       d.basis.beta, worst_coef, worst_cdf));
}

Outcome reliability_curve_check() {
  Check c;
  sim::SimConfig cfg;
  cfg.params = reference_params(5.0);
  cfg.num_realizations = 2000;
  cfg.rng_seed = 0;
  sim::EmpiricalMeta emp = sim::run_campaign(cfg);
  std::vector<double> sorted = emp.ccp_samples;
  std::sort(sorted.begin(), sorted.end());

  const MomentSequence exact = moments::exact_moments(cfg.params, 10);
  const jacobi::ReconstructedDistribution fj = jacobi::reconstruct(exact, 10);
  jacobi::JacobiBasis b0 = fj.basis;
  b0.order = 0;
  const jacobi::ReconstructedDistribution beta = jacobi::fourier_jacobi_coeffs(exact, b0);

  std::vector<double> err_fj, err_beta;
  int within = 0;
  for (int i = 1; i <= 19; ++i) {
    const double x = 0.05 * i;
    const double e = sim::empirical_reliability_sorted(sorted, x);
    err_fj.push_back(std::abs(jacobi::meta_reliability(fj, x) - e) / e);
    err_beta.push_back(std::abs(jacobi::meta_reliability(beta, x) - e) / e);
    within += err_fj.back() < 0.02;
  }
  const double med_fj = median(err_fj);
  const double med_beta = median(err_beta);
  const double frac = within / 19.0;
  c.expect(med_fj < med_beta, fmt("(a) median relerr FJ %.4f not below beta %.4f", med_fj, med_beta));
  c.expect(frac >= 0.8, fmt("(b) relerr < 0.02 on %.0f%% of grid (< 80%%)", 100 * frac));
  return finish(c, fmt("median relerr FJ %.4f vs beta %.4f; FJ relerr < 0.02 on %g/19 points",
                       med_fj, med_beta, static_cast<double>(within)));
}

Outcome threshold_sweep_check() {
  Check c;
  SystemParams noisy = reference_params(3.0);
  std::vector<double> theta_db, err1, err2, mu1;
  for (int i = 0; i <= 60; ++i) {
    const double db = -10.0 + 0.5 * i;
    noisy.theta = std::pow(10.0, db / 10.0);
    theta_db.push_back(db);
    const double e1 = moments::moment_exact(noisy, 1);
    mu1.push_back(e1);
    err1.push_back(std::abs(moments::moment_approx(noisy, 1) - e1));
    err2.push_back(std::abs(moments::moment_approx(noisy, 2) - moments::moment_exact(noisy, 2)));
    for (int n = 1; n <= 2; ++n) {
      const IntegralCoeffs k = moments::coeffs(noisy, n);
      const double bound = std::numbers::pi * noisy.lambda_bs *
                           moments::approx_error_bound(k.a_coef, k.b_coef, noisy.gamma_pl);
      const double err = n == 1 ? err1.back() : err2.back();
      c.expect(err <= bound, fmt("n=%g at %g dB: approximation error %.3g above bound %.3g", n,
                                 db, err, bound));
    }
    const double noiseless = 1.0 / (1.0 + moments::rho_n(noisy, 1));
    c.expect(noiseless >= e1, fmt("noiseless mean %.6g below noisy mean %.6g at %g dB",
                                  noiseless, e1, db));
  }
  double cross_db = NAN;
  for (std::size_t i = 1; i < mu1.size(); ++i) {
    if (mu1[i - 1] >= 0.5 && mu1[i] < 0.5) {
      const double t = (mu1[i - 1] - 0.5) / (mu1[i - 1] - mu1[i]);
      cross_db = theta_db[i - 1] + t * (theta_db[i] - theta_db[i - 1]);
    }
  }
  c.expect(!std::isnan(cross_db), "mu_1 never crosses 0.5 in the sweep");
  const auto argmax = [&](const std::vector<double>& v) {
    return theta_db[std::max_element(v.begin(), v.end()) - v.begin()];
  };
  const double peak1 = argmax(err1);
  const double peak2 = argmax(err2);
  c.expect(std::abs(peak1 - cross_db) <= 10.0,
           fmt("n=1 error peak at %g dB, crossing at %g dB", peak1, cross_db));
  c.expect(std::abs(peak2 - cross_db) <= 10.0,
           fmt("n=2 error peak at %g dB, crossing at %g dB", peak2, cross_db));
  const double max1 = *std::max_element(err1.begin(), err1.end());
  const double max2 = *std::max_element(err2.begin(), err2.end());
  return finish(c, fmt("mu_1 = 0.5 at %.2f dB; max error n=1 %.3g at %g dB, ", cross_db, max1,
                       peak1) +
                       fmt("n=2 %.3g at %g dB", max2, peak2));
}

Outcome scaling_law() {
  Check c;
  const scaling::QosSpec qos{0.3, 0.4};
  const double target = 1.0 - qos.epsilon + qos.x_rel * qos.x_rel;
  double worst_slope = 0.0, worst_mu2 = 0.0;
  for (double g : {3.0, 4.0, 5.0}) {
    std::vector<double> lambdas, powers;
    for (int i = 0; i <= 8; ++i) {
      SystemParams sp{1e-4 * std::pow(10.0, 0.25 * i), g, 0.1, 1.0, 1e-10};
      const scaling::PowerResult r = scaling::min_power(sp, qos);
      lambdas.push_back(sp.lambda_bs);
      powers.push_back(r.power_mw);
      sp.power = r.power_mw;
      worst_mu2 = std::max(worst_mu2, std::abs(moments::moment_approx(sp, 2) / target - 1.0));
    }
    const double slope = loglog_slope(lambdas, powers);
    worst_slope = std::max(worst_slope, std::abs(slope + 0.5 * g));
  }
  c.expect(worst_slope <= 1e-6, fmt("slope deviation %.3g > 1e-6", worst_slope));
  c.expect(worst_mu2 <= 1e-9, fmt("mu_2 relative deviation %.3g > 1e-9", worst_mu2));

  sim::SimConfig cfg;
  cfg.params = {1e-3, 4.0, 0.1, 1.0, 1e-10};
  cfg.params.power = scaling::min_power(cfg.params, qos).power_mw;
  cfg.num_realizations = 2000;
  cfg.rng_seed = 0;
  const sim::EmpiricalMeta emp = sim::run_campaign(cfg);
  const double achieved = sim::empirical_reliability(emp, qos.x_rel);
  c.expect(achieved >= 1.0 - qos.epsilon,
           fmt("simulated P(C > %g) = %.4f below %.4f", qos.x_rel, achieved, 1.0 - qos.epsilon));
  return finish(c, fmt("slope error %.2g, mu_2 relative error %.2g, simulated P(C > x) %.4f >= %.2f",
                       worst_slope, worst_mu2, achieved, 1.0 - qos.epsilon));
}

Outcome simulator_consistency() {
  Check c;
  sim::SimConfig cfg;
  cfg.params = reference_params(5.0);
  cfg.num_realizations = 5000;
  cfg.rng_seed = 0;
  const sim::EmpiricalMeta emp = sim::run_campaign(cfg);
  const double n = static_cast<double>(emp.ccp_samples.size());
  std::string moment_summary;
  for (int k = 1; k <= 2; ++k) {
    double sum = 0.0, sum_sq = 0.0;
    for (double s : emp.ccp_samples) {
      const double v = std::pow(s, k);
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / (n - 1));
    const double exact = moments::moment_exact(cfg.params, k);
    const double z = (mean - exact) / se;
    c.expect(std::abs(z) <= 3.0, fmt("mu_%g empirical %.5f vs exact %.5f is %.2f SE", k, mean,
                                     exact, z));
    moment_summary += fmt("mu_%g z=%.2f; ", k, z);
  }

  double worst_z = 0.0;
  const int draws = 700;
  for (std::uint64_t i = 0; i < 100; ++i) {
    sim::Rng rng = sim::realization_rng(12345, i);
    const std::vector<sim::Point> pts = sim::draw_ppp(cfg, rng);
    if (pts.empty()) continue;
    const double exact = sim::ccp_analytic(pts, cfg.params);
    const double sampled = sim::ccp_sampled(pts, cfg.params, draws, rng);
    const double se = std::sqrt(exact * (1.0 - exact) / draws);
    const double diff = std::abs(sampled - exact);
    const double z = se > 0 ? diff / se : (diff == 0 ? 0.0 : INFINITY);
    worst_z = std::max(worst_z, z);
  }
  c.expect(worst_z <= 4.0, fmt("sampled vs analytic worst deviation %.2f SE > 4", worst_z));
  return finish(c, moment_summary + fmt("sampled vs analytic worst %.2f SE over 100", worst_z));
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "moment exactness limits", 5, moment_exactness},
      {2, "error-bound soundness", 30, bound_soundness},
      {3, "Jacobi machinery", 10, jacobi_machinery},
      {4, "beta round trip", 1, beta_round_trip},
      {5, "reliability curve vs simulation (gamma=5)", 120, reliability_curve_check},
      {6, "approximate moments vs threshold (gamma=3)", 30, threshold_sweep_check},
      {7, "power scaling law", 120, scaling_law},
      {8, "simulator self-consistency", 300, simulator_consistency},
  };
  int failures = 0;
  for (const Criterion& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_s) {
      o.pass = false;
      o.detail += fmt("; runtime %.1f s over %.0f s limit", secs, cr.limit_s);
    }
    failures += !o.pass;
    std::printf("%s [%d] %s (%.2f s / %.0f s): %s\n", o.pass ? "PASS" : "FAIL", cr.id, cr.name,
                secs, cr.limit_s, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
