// Nonlinear TD update weights derived from a bound-anchored optimality
// probability. The weight applied to value/policy gradients is
//
//     (1 - lambda) * (q - v) + lambda * delta_ln
//
// where delta_ln is the log-ratio of non-optimality probabilities. The sign
// of delta_ln follows the bound convention so that the weight is positive
// exactly when q > v for either convention. lambda = 1/(1+beta) mixes the
// linear TD term with the logarithmic one; lambda = 0 is plain TD learning.

#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace wfl {

// Probabilities are kept strictly inside (0,1) by this margin, and values
// that land outside their bound are pulled back by the same margin.
inline constexpr double kProbEpsilon = 1e-12;

// Process-wide counters for numerically suspect events. Atomic so the
// stateless math below stays callable from any thread.
struct Diagnostics {
  std::atomic<std::uint64_t> value_clamps{0};      // v or q outside its bound
  std::atomic<std::uint64_t> prob_saturations{0};  // p pinned at 1-eps in fisher

  void reset() {
    value_clamps.store(0, std::memory_order_relaxed);
    prob_saturations.store(0, std::memory_order_relaxed);
  }
};

Diagnostics& diagnostics();

// Which reward bound anchors the optimality probability.
//   upper(R):  p = exp(beta * (x - R)),  admissible x <= R
//   lower(R):  p = exp(-beta * (x - R)), admissible x >= R
class BoundConvention {
 public:
  static BoundConvention upper(double bound) { return BoundConvention(true, bound); }
  static BoundConvention lower(double bound) { return BoundConvention(false, bound); }

  bool is_upper() const { return upper_; }
  double bound() const { return bound_; }

  // Nonnegative for admissible values.
  double distance(double x) const { return upper_ ? bound_ - x : x - bound_; }
  bool admissible(double x) const { return distance(x) >= 0.0; }

 private:
  BoundConvention(bool upper, double bound) : upper_(upper), bound_(bound) {
    if (!std::isfinite(bound)) throw std::domain_error("BoundConvention: bound must be finite");
  }
  bool upper_;
  double bound_;
};

// lambda = 1/(1+beta). +infinity is the plain-TD sentinel and maps to
// exactly 0; beta <= 0 or NaN is a domain error.
double lambda_from_beta(double beta);

struct WflParams {
  double beta = 1.0;    // inverse temperature, 1/reward units
  double lambda = 0.5;  // 1/(1+beta), derived

  static WflParams from_beta(double beta) { return WflParams{beta, lambda_from_beta(beta)}; }
  // Plain TD learning: the logarithmic term is switched off entirely.
  static WflParams conventional() {
    return WflParams{std::numeric_limits<double>::infinity(), 0.0};
  }
  bool is_conventional() const { return lambda == 0.0; }
};

struct OptimalityPair {
  double p_v;
  double p_q;
};

// p(optimality flag | value) for the given convention, clamped to
// [eps, 1-eps]. Values beyond the bound saturate at 1-eps.
double optimality_prob(double value, const WflParams& params, const BoundConvention& bound);

OptimalityPair optimality_pair(double v, double q, const WflParams& params,
                               const BoundConvention& bound);

// Log-ratio term ln((1-p_v)/(1-p_q)), negated for the lower-bound convention
// so its sign always agrees with that of q - v.
double delta_ln(const OptimalityPair& pair, const BoundConvention& bound);

// Combined gradient weight (1-lambda)*(q-v) + lambda*delta_ln. Inadmissible
// v/q are clamped just inside the bound before the probability evaluation
// (the linear term keeps the raw q-v) and counted in diagnostics().
double update_weight(double v, double q, const WflParams& params, const BoundConvention& bound);

// First-order reference for delta_ln: the log of the ratio of distances to
// the bound. Exact in the limit beta*distance -> 0. Values at the bound are
// a domain error (log of zero).
double taylor_delta_ln(double v, double q, const BoundConvention& bound);

// Fisher information of the binary optimality variable w.r.t. the value:
// beta^2 * p_v / (1 - p_v).
double fisher_information(double v, const WflParams& params, const BoundConvention& bound);

}  // namespace wfl
