// Running reward-scale tracking. Each reward branch keeps a decaying record
// of the largest recent |r| and eases the working scale toward it, which in
// turn sets the branch inverse temperature beta = beta0 / sigma. A beta0 of
// +infinity switches the branch to plain TD learning.

#pragma once

#include <limits>

#include "wfl/update_rule.hpp"

namespace wfl {

inline constexpr double kSigmaFloor = 1e-8;

struct ScaleState {
  double sigma_max = 0.0;  // decayed running max of |r|
  double sigma = 1.0;      // working scale, floored at kSigmaFloor
  double zeta = 0.999;     // adaptation gradualness, in (0,1)
  double beta0 = 1.0;      // dimensionless baseline; +inf = plain TD
};

// Validated initial state: sigma_max = 0, sigma = 1 so beta starts at beta0.
ScaleState init_scale(double zeta, double beta0);

// One reward observation:
//   sigma_max' = max(zeta * sigma_max, |r|)
//   sigma'     = zeta * sigma + (1 - zeta) * sigma_max'
ScaleState observe(ScaleState state, double r);

// beta0 / sigma (+inf passes through for the plain-TD sentinel).
double current_beta(const ScaleState& state);

// Update-rule parameters for this branch; sentinel-aware.
WflParams params_from(const ScaleState& state);

}  // namespace wfl
