#include "metadist/scaling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "metadist/errors.hpp"
#include "metadist/specfun.hpp"

namespace metadist::scaling {

void QosSpec::validate() const {
  if (!(x_rel > 0.0 && x_rel < 1.0)) {
    throw DomainError("reliability threshold must lie in (0,1)");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("outage tolerance must lie in (0,1)");
  }
}

double markov_lower_bound(double mu2, double x) {
  if (!(mu2 >= 0.0 && mu2 <= 1.0)) {
    throw DomainError("markov_lower_bound: mu2 must lie in [0,1]");
  }
  return mu2 - x * x;
}

PowerResult min_power(const SystemParams& params, const QosSpec& qos) {
  qos.validate();
  SystemParams p = params;
  p.power = 1.0;  // placeholder; rho_2 does not depend on it
  p.validate();

  const double target = 1.0 - qos.epsilon + qos.x_rel * qos.x_rel;
  const double rho2 = moments::rho_n(p, 2);
  const double slack = 1.0 - target * (1.0 + rho2);
  if (!(slack > 0.0)) {
    throw InfeasibleQosError(
        "QoS infeasible: need mu_2 >= " + std::to_string(target) +
        " but mu_2 cannot exceed 1/(1+rho_2) = " +
        std::to_string(1.0 / (1.0 + rho2)));
  }

  PowerResult result;
  if (p.theta == 0.0 || p.noise == 0.0) {
    result.unconstrained = true;
    return result;
  }
  const double g = p.gamma_pl;
  const double base = 2.0 * std::numbers::pi * slack /
                      (g * target * std::pow(2.0 * p.theta * p.noise, 2.0 / g)) *
                      specfun::gamma_fn(2.0 / g);
  result.coefficient = std::pow(base, -0.5 * g);
  result.power_mw = result.coefficient * std::pow(p.lambda_bs, -0.5 * g);
  return result;
}

}  // namespace metadist::scaling
