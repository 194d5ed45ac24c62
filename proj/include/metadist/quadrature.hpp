#pragma once

#include <functional>

namespace metadist::quad {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  // Zero disables the relative criterion.
  double rel_tol = 0.0;
  int max_intervals = 2000;
};

using Integrand = std::function<double(double)>;

// Adaptive 7/15-point Gauss-Kronrod integration over [lo, hi]. The interval
// with the largest error estimate is bisected until the summed estimate meets
// max(abs_tol, rel_tol*|value|). Endpoints are never sampled, so integrable
// endpoint singularities are allowed. Throws ConvergenceError when the
// interval budget is exhausted.
QuadResult integrate_finite(const Integrand& f, double lo, double hi,
                            const QuadOptions& opts);
QuadResult integrate_finite(const Integrand& f, double lo, double hi,
                            double tol = 1e-10);

// Envelope f(z) <= prefactor * exp(-rate * z) on [0, inf).
struct DecayBound {
  double rate = 1.0;
  double prefactor = 1.0;
};

// Upper limit beyond which the envelope's tail integral is below tail_tol.
double truncation_point(const DecayBound& bound, double tail_tol);

// Integral over [0, inf) of an eventually exponentially decaying integrand.
// The range is cut at the point where the envelope tail is below a tenth of
// the tolerance; the remaining budget goes to integrate_finite.
QuadResult integrate_semi_infinite_decaying(const Integrand& f,
                                            const DecayBound& bound,
                                            const QuadOptions& opts);
QuadResult integrate_semi_infinite_decaying(const Integrand& f,
                                            const DecayBound& bound,
                                            double tol = 1e-10);

}  // namespace metadist::quad
