#pragma once

#include <string>
#include <vector>

#include "metadist/moments.hpp"

// Reconstruction of a density on [0,1] from its moments by a truncated
// Fourier-Jacobi series in shifted Jacobi polynomials P_n^{(alpha,beta)},
// orthogonal under w(x) = (1-x)^alpha x^beta.

namespace metadist::jacobi {

inline constexpr int kDefaultOrder = 10;
inline constexpr int kPrecisionWarnOrder = 12;
inline constexpr int kMaxOrder = 20;

struct JacobiBasis {
  double alpha = 0.0;
  double beta = 0.0;
  int order = kDefaultOrder;

  // alpha, beta > -1 and 0 <= order <= kMaxOrder.
  void validate() const;
};

struct ReconstructedDistribution {
  JacobiBasis basis;
  std::vector<double> coefficients;  // a_0..a_N
  MomentSequence source_moments;

  // Beyond order 12 the alternating moment sums lose most of their digits.
  bool precision_warning() const {
    return basis.order > kPrecisionWarnOrder;
  }
};

struct ConvergenceReport {
  // |a_n| e^{alpha n} for alpha > 0, |a_n| e^{alpha} otherwise.
  std::vector<double> terms;
  bool warning = false;
  std::string message;
};

// Shifted Jacobi polynomial P_n^{(alpha,beta)}(x) on [0,1], three-term
// recurrence in t = 2x - 1.
double jacobi_poly(double alpha, double beta, int n, double x);

// P_0(x)..P_max_n(x) in one pass of the recurrence.
std::vector<double> jacobi_values(double alpha, double beta, int max_n,
                                  double x);

// h_n = int_0^1 P_n^2 w dx.
double norm_h(double alpha, double beta, int n);

// hat mu_{n,l} = int x^l (x-1)^{n-l} f(x) dx
//             = sum_k C(n-l,k) (-1)^k mu_{n-k}.
double modified_moment(const MomentSequence& moments, int n, int l);

ReconstructedDistribution fourier_jacobi_coeffs(const MomentSequence& moments,
                                                const JacobiBasis& basis);

// (alpha, beta) such that the leading beta term reproduces mu_1 and mu_2,
// which forces a_1 = a_2 = 0. Throws DegenerateMomentsError on zero variance
// or mu_1 outside (0,1).
JacobiBasis moment_match_basis(double mu1, double mu2,
                               int order = kDefaultOrder);

// Moment-matched basis followed by the coefficient projection.
ReconstructedDistribution reconstruct(const MomentSequence& moments,
                                      int order = kDefaultOrder);

// Truncated series density. Not clipped: may be slightly negative.
double eval_pdf(const ReconstructedDistribution& dist, double x);

// Truncated series CDF (unclamped).
double eval_cdf(const ReconstructedDistribution& dist, double x);

// P(C > x) = 1 - F(x), clamped to [0,1].
double meta_reliability(const ReconstructedDistribution& dist, double x);

ConvergenceReport convergence_diagnostic(const ReconstructedDistribution& dist);

}  // namespace metadist::jacobi
