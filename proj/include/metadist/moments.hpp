#pragma once

#include <string_view>
#include <vector>

namespace metadist {

// Downlink Poisson cellular scenario. Linear units: density per m^2, powers in
// mW, threshold as a linear SINR ratio.
struct SystemParams {
  double lambda_bs = 1e-3;
  double gamma_pl = 4.0;
  double theta = 1.0;
  double power = 1.0;
  double noise = 0.0;

  // Throws DomainError if any field is outside its admissible range.
  void validate() const;
};

enum class MomentMethod { exact_quadrature, closed_form, empirical };

std::string_view to_string(MomentMethod m);

// mu_0..mu_N of the conditional coverage probability.
struct MomentSequence {
  std::vector<double> values;
  MomentMethod method = MomentMethod::exact_quadrature;
  SystemParams params;

  int max_order() const { return static_cast<int>(values.size()) - 1; }
};

// Coefficients of the moment integral
//   mu_n = pi*lambda * int_0^inf exp(-(A_n z + B_n z^{gamma/2})) dz.
struct IntegralCoeffs {
  double a_coef = 0.0;  // pi*lambda*(1 + rho_n)
  double b_coef = 0.0;  // n*theta*noise/power
  double rho = 0.0;
};

}  // namespace metadist

namespace metadist::moments {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr int kDefaultMaxOrder = 20;

// rho_n = 2F1(n, -2/gamma; 1-2/gamma; -theta) - 1.
double rho_n(const SystemParams& params, int n);

IntegralCoeffs coeffs(const SystemParams& params, int n);

// mu_n by adaptive quadrature of the moment integral. theta = 0 and n = 0
// short-circuit to 1.
double moment_exact(const SystemParams& params, int n,
                    double tol = kDefaultTol);

// Closed-form approximation pi*lambda / K with
//   K = A_n + gamma*B_n^{2/gamma} / (2*Gamma(2/gamma)).
double moment_approx(const SystemParams& params, int n);

// K of the closed-form approximation int exp(-(Az + Bz^{g/2})) dz ~ 1/K.
double approx_k(double a_coef, double b_coef, double gamma_pl);

// Upper bound on |int_0^inf exp(-(Az + Bz^{g/2})) dz - 1/K|. Multiply by
// pi*lambda to bound the moment error.
double approx_error_bound(double a_coef, double b_coef, double gamma_pl);

// max_{z>=0} exp(-f(z)) for f(z) = (A-K)z + B z^{gamma/2}; independent of A, B:
//   M = exp((gamma/2 - 1) / Gamma(2/gamma)^{gamma/(gamma-2)}) >= 1.
double big_m_constant(double gamma_pl);

MomentSequence exact_moments(const SystemParams& params, int max_order,
                             double tol = kDefaultTol);
MomentSequence approx_moments(const SystemParams& params, int max_order);

// Smallest value of (-1)^k Delta^k mu_n over k = 0..max_diff_order and all n
// where the difference is defined. Moments of a law on [0,1] are completely
// monotone, so a clearly negative value signals a broken sequence.
double hausdorff_min_difference(const MomentSequence& seq,
                                int max_diff_order = 4);

}  // namespace metadist::moments
