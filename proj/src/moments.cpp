#include "metadist/moments.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "metadist/errors.hpp"
#include "metadist/quadrature.hpp"
#include "metadist/specfun.hpp"

namespace metadist {

void SystemParams::validate() const {
  if (!(lambda_bs > 0.0) || !std::isfinite(lambda_bs)) {
    throw DomainError("lambda_bs must be positive");
  }
  if (!(gamma_pl > 2.0) || !std::isfinite(gamma_pl)) {
    throw DomainError("path-loss exponent must exceed 2");
  }
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw DomainError("theta must be nonnegative");
  }
  if (!(power > 0.0) || !std::isfinite(power)) {
    throw DomainError("transmit power must be positive");
  }
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw DomainError("noise power must be nonnegative");
  }
}

std::string_view to_string(MomentMethod m) {
  switch (m) {
    case MomentMethod::exact_quadrature:
      return "exact_quadrature";
    case MomentMethod::closed_form:
      return "closed_form";
    case MomentMethod::empirical:
      return "empirical";
  }
  return "unknown";
}

}  // namespace metadist

namespace metadist::moments {

namespace {

void check_order(int n) {
  if (n < 0) throw DomainError("moment order must be nonnegative");
}

}  // namespace

double rho_n(const SystemParams& params, int n) {
  params.validate();
  if (n < 1) throw DomainError("rho_n: n must be positive");
  if (params.theta == 0.0) return 0.0;
  const double delta = 2.0 / params.gamma_pl;
  const double rho =
      specfun::gauss_2f1(n, -delta, 1.0 - delta, -params.theta) - 1.0;
  return std::max(rho, 0.0);
}

IntegralCoeffs coeffs(const SystemParams& params, int n) {
  const double rho = rho_n(params, n);
  IntegralCoeffs c;
  c.rho = rho;
  c.a_coef = std::numbers::pi * params.lambda_bs * (1.0 + rho);
  c.b_coef = n * params.theta * params.noise / params.power;
  return c;
}

double moment_exact(const SystemParams& params, int n, double tol) {
  params.validate();
  check_order(n);
  if (n == 0 || params.theta == 0.0) return 1.0;

  const IntegralCoeffs c = coeffs(params, n);
  const double scale = std::numbers::pi * params.lambda_bs;

  const double half_gamma = 0.5 * params.gamma_pl;
  auto integrand = [&](double z) {
    return scale * std::exp(-(c.a_coef * z + c.b_coef * std::pow(z, half_gamma)));
  };
  const quad::QuadResult r = quad::integrate_semi_infinite_decaying(
      integrand, quad::DecayBound{c.a_coef, scale}, tol);
  return r.value;
}

double approx_k(double a_coef, double b_coef, double gamma_pl) {
  if (!(gamma_pl > 2.0)) throw DomainError("approx_k: gamma must exceed 2");
  if (!(b_coef >= 0.0)) throw DomainError("approx_k: B must be nonnegative");
  const double delta = 2.0 / gamma_pl;
  return a_coef +
         gamma_pl * std::pow(b_coef, delta) / (2.0 * specfun::gamma_fn(delta));
}

double moment_approx(const SystemParams& params, int n) {
  params.validate();
  check_order(n);
  if (n == 0 || params.theta == 0.0) return 1.0;
  const IntegralCoeffs c = coeffs(params, n);
  return std::numbers::pi * params.lambda_bs /
         approx_k(c.a_coef, c.b_coef, params.gamma_pl);
}

double big_m_constant(double gamma_pl) {
  if (!(gamma_pl > 2.0)) throw DomainError("big_m_constant: gamma must exceed 2");
  const double delta = 2.0 / gamma_pl;
  const double min_f = (1.0 - 0.5 * gamma_pl) /
                       std::pow(specfun::gamma_fn(delta),
                                gamma_pl / (gamma_pl - 2.0));
  return std::exp(-min_f);
}

double approx_error_bound(double a_coef, double b_coef, double gamma_pl) {
  if (!(a_coef > 0.0)) throw DomainError("approx_error_bound: A must be positive");
  if (!(b_coef >= 0.0)) {
    throw DomainError("approx_error_bound: B must be nonnegative");
  }
  if (!(gamma_pl > 2.0)) {
    throw DomainError("approx_error_bound: gamma must exceed 2");
  }
  if (b_coef == 0.0) return 0.0;

  const double delta = 2.0 / gamma_pl;
  const double k = approx_k(a_coef, b_coef, gamma_pl);
  const double ratio = std::pow(b_coef, delta) / k;
  const double m = big_m_constant(gamma_pl);
  return gamma_pl * m / (2.0 * k) *
         (ratio / specfun::gamma_fn(delta) +
          specfun::gamma_fn(0.5 * gamma_pl) * std::pow(ratio, 0.5 * gamma_pl));
}

MomentSequence exact_moments(const SystemParams& params, int max_order,
                             double tol) {
  check_order(max_order);
  MomentSequence seq{{}, MomentMethod::exact_quadrature, params};
  seq.values.reserve(max_order + 1);
  for (int n = 0; n <= max_order; ++n) {
    seq.values.push_back(moment_exact(params, n, tol));
  }
  return seq;
}

MomentSequence approx_moments(const SystemParams& params, int max_order) {
  check_order(max_order);
  MomentSequence seq{{}, MomentMethod::closed_form, params};
  seq.values.reserve(max_order + 1);
  for (int n = 0; n <= max_order; ++n) {
    seq.values.push_back(moment_approx(params, n));
  }
  return seq;
}

double hausdorff_min_difference(const MomentSequence& seq, int max_diff_order) {
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> diff = seq.values;
  for (int k = 0; k <= max_diff_order && !diff.empty(); ++k) {
    for (double d : diff) worst = std::min(worst, d);
    // (-1)^{k+1} Delta^{k+1} mu_n = (-1)^k Delta^k mu_n - (-1)^k Delta^k mu_{n+1}
    std::vector<double> next;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) {
      next.push_back(diff[i] - diff[i + 1]);
    }
    diff = std::move(next);
  }
  return worst;
}

}  // namespace metadist::moments
