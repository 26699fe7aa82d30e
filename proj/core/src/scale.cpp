#include "wfl/scale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wfl {

ScaleState init_scale(double zeta, double beta0) {
  if (!(zeta > 0.0 && zeta < 1.0))
    throw std::domain_error("init_scale: zeta must lie in (0,1)");
  if (std::isnan(beta0) || beta0 <= 0.0)
    throw std::domain_error("init_scale: beta0 must be positive (or +inf)");
  return ScaleState{0.0, 1.0, zeta, beta0};
}

ScaleState observe(ScaleState state, double r) {
  if (!std::isfinite(r)) throw std::domain_error("observe: reward must be finite");
  state.sigma_max = std::max(state.zeta * state.sigma_max, std::abs(r));
  state.sigma = std::max(state.zeta * state.sigma + (1.0 - state.zeta) * state.sigma_max,
                         kSigmaFloor);
  return state;
}

double current_beta(const ScaleState& state) {
  return state.beta0 / state.sigma;
}

WflParams params_from(const ScaleState& state) {
  if (std::isinf(state.beta0)) return WflParams::conventional();
  return WflParams::from_beta(current_beta(state));
}

}  // namespace wfl
