#pragma once

#include "metadist/moments.hpp"

// Minimum BS transmit power meeting P(C > x) >= 1 - epsilon, derived from the
// second-moment lower bound P(C >= x) >= mu_2 - x^2 and the closed-form
// approximation of mu_2. The result scales as lambda^{-gamma/2}.

namespace metadist::scaling {

struct QosSpec {
  double x_rel = 0.5;    // reliability threshold, in (0,1)
  double epsilon = 0.1;  // outage tolerance, in (0,1)

  void validate() const;
};

// mu2 - x^2. Values <= 0 carry no information.
double markov_lower_bound(double mu2, double x);

struct PowerResult {
  double power_mw = 0.0;
  // theta = 0 or noise = 0: the bound is met at any positive power.
  bool unconstrained = false;
  double coefficient = 0.0;  // c in p = c * lambda^{-gamma/2}
};

// Ignores params.power. Throws InfeasibleQosError when
// (1 - eps + x^2)(1 + rho_2) >= 1; the message reports the limiting mu_2 value
// 1/(1 + rho_2).
PowerResult min_power(const SystemParams& params, const QosSpec& qos);

}  // namespace metadist::scaling
