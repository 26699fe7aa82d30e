#include "wfl/update_rule.hpp"

#include <algorithm>

namespace wfl {

Diagnostics& diagnostics() {
  static Diagnostics d;
  return d;
}

namespace {

double clamp_prob(double p) {
  return std::clamp(p, kProbEpsilon, 1.0 - kProbEpsilon);
}

// Signed exponent beta*(value - bound) with the convention folded in; <= 0
// for admissible values.
double prob_exponent(double value, const WflParams& params, const BoundConvention& bound) {
  if (!std::isfinite(value)) throw std::domain_error("optimality_prob: value must be finite");
  if (!std::isfinite(params.beta) || params.beta <= 0.0)
    throw std::domain_error("optimality_prob: beta must be finite and positive");
  return bound.is_upper() ? params.beta * (value - bound.bound())
                          : -params.beta * (value - bound.bound());
}

// 1 - p computed via expm1 so the near-bound regime keeps full precision,
// clamped to the same margin as the probability itself.
double one_minus_prob(double value, const WflParams& params, const BoundConvention& bound) {
  return clamp_prob(-std::expm1(prob_exponent(value, params, bound)));
}

double pull_inside(double x, const BoundConvention& bound) {
  if (bound.admissible(x)) return x;
  diagnostics().value_clamps.fetch_add(1, std::memory_order_relaxed);
  return bound.is_upper() ? bound.bound() - kProbEpsilon : bound.bound() + kProbEpsilon;
}

}  // namespace

double lambda_from_beta(double beta) {
  if (std::isinf(beta) && beta > 0.0) return 0.0;
  if (std::isnan(beta) || beta <= 0.0)
    throw std::domain_error("lambda_from_beta: beta must be positive");
  return 1.0 / (1.0 + beta);
}

double optimality_prob(double value, const WflParams& params, const BoundConvention& bound) {
  return clamp_prob(std::exp(prob_exponent(value, params, bound)));
}

OptimalityPair optimality_pair(double v, double q, const WflParams& params,
                               const BoundConvention& bound) {
  return {optimality_prob(v, params, bound), optimality_prob(q, params, bound)};
}

double delta_ln(const OptimalityPair& pair, const BoundConvention& bound) {
  if (!(pair.p_v > 0.0 && pair.p_v < 1.0 && pair.p_q > 0.0 && pair.p_q < 1.0))
    throw std::domain_error("delta_ln: probabilities must lie strictly inside (0,1)");
  const double ratio = std::log1p(-pair.p_v) - std::log1p(-pair.p_q);
  return bound.is_upper() ? ratio : -ratio;
}

double update_weight(double v, double q, const WflParams& params, const BoundConvention& bound) {
  if (!std::isfinite(v) || !std::isfinite(q))
    throw std::domain_error("update_weight: values must be finite");
  const double delta = q - v;
  if (params.is_conventional()) return delta;

  const double omp_v = one_minus_prob(pull_inside(v, bound), params, bound);
  const double omp_q = one_minus_prob(pull_inside(q, bound), params, bound);
  double dln = std::log(omp_v) - std::log(omp_q);
  if (!bound.is_upper()) dln = -dln;
  return (1.0 - params.lambda) * delta + params.lambda * dln;
}

double taylor_delta_ln(double v, double q, const BoundConvention& bound) {
  if (!std::isfinite(v) || !std::isfinite(q))
    throw std::domain_error("taylor_delta_ln: values must be finite");
  const double dv = bound.distance(v);
  const double dq = bound.distance(q);
  if (dv <= 0.0 || dq <= 0.0)
    throw std::domain_error("taylor_delta_ln: values must lie strictly inside the bound");
  const double ratio = std::log(dq) - std::log(dv);
  return bound.is_upper() ? -ratio : ratio;
}

double fisher_information(double v, const WflParams& params, const BoundConvention& bound) {
  const double p = optimality_prob(v, params, bound);
  const double omp = one_minus_prob(v, params, bound);
  if (p >= 1.0 - kProbEpsilon || omp <= kProbEpsilon)
    diagnostics().prob_saturations.fetch_add(1, std::memory_order_relaxed);
  return params.beta * params.beta * p / omp;
}

}  // namespace wfl
