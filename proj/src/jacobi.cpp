#include "metadist/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "metadist/errors.hpp"
#include "metadist/specfun.hpp"

namespace metadist::jacobi {

namespace {

// Neumaier-compensated accumulator in extended precision.
class CompensatedSum {
 public:
  void add(long double v) {
    const long double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

long double binomial_ld(long double top, int k) {
  if (k < 0) return 0.0L;
  long double r = 1.0L;
  for (int j = 0; j < k; ++j) r *= (top - j) / (j + 1);
  return r;
}

void check_params(double alpha, double beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw DomainError("Jacobi parameters must satisfy alpha, beta > -1");
  }
}

long double modified_moment_ld(const std::vector<double>& mu, int n, int l) {
  CompensatedSum acc;
  const int m = n - l;
  long double binom = 1.0L;
  for (int k = 0; k <= m; ++k) {
    const long double term = binom * static_cast<long double>(mu[n - k]);
    acc.add((k % 2 == 0) ? term : -term);
    binom = binom * (m - k) / (k + 1);
  }
  return acc.value();
}

}  // namespace

void JacobiBasis::validate() const {
  check_params(alpha, beta);
  if (order < 0) throw DomainError("Jacobi basis order must be nonnegative");
  if (order > kMaxOrder) {
    throw DomainError("Jacobi basis order exceeds the cap of " +
                      std::to_string(kMaxOrder));
  }
}

std::vector<double> jacobi_values(double alpha, double beta, int max_n,
                                  double x) {
  check_params(alpha, beta);
  if (max_n < 0) throw DomainError("jacobi_values: negative degree");
  std::vector<double> p(max_n + 1);
  const double t = 2.0 * x - 1.0;
  p[0] = 1.0;
  if (max_n == 0) return p;
  const double ab = alpha + beta;
  p[1] = (alpha + 1.0) + 0.5 * (ab + 2.0) * (t - 1.0);
  for (int n = 2; n <= max_n; ++n) {
    const double s = 2.0 * n + ab;
    const double a1 = 2.0 * n * (n + ab) * (s - 2.0);
    const double a2 = (s - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (s - 2.0) * (s - 1.0) * s;
    const double a4 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * s;
    p[n] = ((a2 + a3 * t) * p[n - 1] - a4 * p[n - 2]) / a1;
  }
  return p;
}

double jacobi_poly(double alpha, double beta, int n, double x) {
  return jacobi_values(alpha, beta, n, x).back();
}

double norm_h(double alpha, double beta, int n) {
  check_params(alpha, beta);
  if (n < 0) throw DomainError("norm_h: negative degree");
  using specfun::ln_gamma;
  if (n == 0) {
    return std::exp(ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0) -
                    ln_gamma(alpha + beta + 2.0));
  }
  const double log_ratio = ln_gamma(n + alpha + 1.0) + ln_gamma(n + beta + 1.0) -
                           ln_gamma(n + 1.0) - ln_gamma(n + alpha + beta + 1.0);
  return std::exp(log_ratio) / (2.0 * n + alpha + beta + 1.0);
}

double modified_moment(const MomentSequence& moments, int n, int l) {
  if (n < 0 || l < 0 || l > n) {
    throw DomainError("modified_moment: requires 0 <= l <= n");
  }
  if (moments.max_order() < n) {
    throw InsufficientMomentsError("modified_moment: need moments up to order " +
                                   std::to_string(n));
  }
  return static_cast<double>(modified_moment_ld(moments.values, n, l));
}

ReconstructedDistribution fourier_jacobi_coeffs(const MomentSequence& moments,
                                                const JacobiBasis& basis) {
  basis.validate();
  if (moments.max_order() < basis.order) {
    throw InsufficientMomentsError(
        "fourier_jacobi_coeffs: order " + std::to_string(basis.order) +
        " needs " + std::to_string(basis.order + 1) + " moments, got " +
        std::to_string(moments.values.size()));
  }

  ReconstructedDistribution dist{basis, {}, moments};
  dist.coefficients.reserve(basis.order + 1);
  dist.coefficients.push_back(1.0 / norm_h(basis.alpha, basis.beta, 0));
  for (int n = 1; n <= basis.order; ++n) {
    CompensatedSum acc;
    const long double top_a = n + static_cast<long double>(basis.alpha);
    const long double top_b = n + static_cast<long double>(basis.beta);
    for (int l = 0; l <= n; ++l) {
      acc.add(binomial_ld(top_a, l) * binomial_ld(top_b, n - l) *
              modified_moment_ld(moments.values, n, l));
    }
    dist.coefficients.push_back(
        static_cast<double>(acc.value() / norm_h(basis.alpha, basis.beta, n)));
  }
  return dist;
}

JacobiBasis moment_match_basis(double mu1, double mu2, int order) {
  if (!(mu1 > 0.0 && mu1 < 1.0)) {
    throw DegenerateMomentsError("moment matching needs 0 < mu_1 < 1");
  }
  const double variance = mu2 - mu1 * mu1;
  if (!(variance > 1e-14)) {
    throw DegenerateMomentsError("moment matching needs positive variance");
  }
  if (!(mu2 < mu1)) {
    throw DegenerateMomentsError("moment matching needs mu_2 < mu_1");
  }
  JacobiBasis basis;
  const double alpha1 = (mu1 - mu2) * (1.0 - mu1) / variance;
  basis.alpha = alpha1 - 1.0;
  basis.beta = alpha1 * mu1 / (1.0 - mu1) - 1.0;
  basis.order = order;
  basis.validate();
  return basis;
}

ReconstructedDistribution reconstruct(const MomentSequence& moments,
                                      int order) {
  if (moments.max_order() < 2) {
    throw InsufficientMomentsError("reconstruct: need at least mu_0..mu_2");
  }
  const JacobiBasis basis =
      moment_match_basis(moments.values[1], moments.values[2], order);
  return fourier_jacobi_coeffs(moments, basis);
}

double eval_pdf(const ReconstructedDistribution& dist, double x) {
  const JacobiBasis& b = dist.basis;
  const std::vector<double> p = jacobi_values(b.alpha, b.beta, b.order, x);
  double series = 0.0;
  for (int n = 0; n <= b.order; ++n) series += dist.coefficients[n] * p[n];
  return std::pow(1.0 - x, b.alpha) * std::pow(x, b.beta) * series;
}

double eval_cdf(const ReconstructedDistribution& dist, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const JacobiBasis& b = dist.basis;
  const double h0 = norm_h(b.alpha, b.beta, 0);
  const double leading =
      specfun::reg_inc_beta(x, b.beta + 1.0, b.alpha + 1.0) * h0 *
      dist.coefficients[0];
  if (b.order == 0) return leading;

  // int_0^x w P_n = -(1/n) (1-x)^{alpha+1} x^{beta+1} P_{n-1}^{(alpha+1,beta+1)}(x)
  const std::vector<double> q =
      jacobi_values(b.alpha + 1.0, b.beta + 1.0, b.order - 1, x);
  double series = 0.0;
  for (int n = 1; n <= b.order; ++n) {
    series += dist.coefficients[n] / n * q[n - 1];
  }
  return leading -
         std::pow(1.0 - x, b.alpha + 1.0) * std::pow(x, b.beta + 1.0) * series;
}

double meta_reliability(const ReconstructedDistribution& dist, double x) {
  return std::clamp(1.0 - eval_cdf(dist, x), 0.0, 1.0);
}

ConvergenceReport convergence_diagnostic(
    const ReconstructedDistribution& dist) {
  ConvergenceReport report;
  const double alpha = dist.basis.alpha;
  for (std::size_t n = 0; n < dist.coefficients.size(); ++n) {
    const double growth = alpha > 0.0 ? std::exp(alpha * static_cast<double>(n))
                                      : std::exp(alpha);
    report.terms.push_back(std::fabs(dist.coefficients[n]) * growth);
  }

  const std::size_t third = report.terms.size() / 3;
  if (third == 0) {
    report.message = "too few terms to assess decay";
    return report;
  }
  double head = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < third; ++i) {
    head += report.terms[i];
    tail += report.terms[report.terms.size() - 1 - i];
  }
  head /= static_cast<double>(third);
  tail /= static_cast<double>(third);
  if (tail >= head) {
    report.warning = true;
    report.message = "bounded coefficient terms do not decay";
  } else {
    report.message = "bounded coefficient terms decay";
  }
  return report;
}

}  // namespace metadist::jacobi
