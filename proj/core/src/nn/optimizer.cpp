#include "wfl/nn/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace wfl::nn {

Optimizer::Optimizer(OptimizerConfig cfg, std::size_t param_count) : cfg_(cfg) {
  if (cfg_.kind == OptimizerKind::adam) moments_.assign(2 * param_count, 0.0);
}

void Optimizer::step(std::span<double> params, std::span<const double> grads) {
  if (params.size() != grads.size())
    throw std::invalid_argument("Optimizer::step: size mismatch");
  for (double g : grads) {
    if (!std::isfinite(g)) {
      ++skipped_;
      return;
    }
  }

  const std::size_t n = params.size();
  if (cfg_.kind == OptimizerKind::sgd) {
    for (std::size_t i = 0; i < n; ++i) params[i] -= cfg_.lr * grads[i];
    return;
  }

  ++t_;
  double* m = moments_.data();
  double* v = moments_.data() + n;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < n; ++i) {
    const double g = grads[i];
    m[i] = cfg_.beta1 * m[i] + (1.0 - cfg_.beta1) * g;
    v[i] = cfg_.beta2 * v[i] + (1.0 - cfg_.beta2) * g * g;
    const double mhat = m[i] / bc1;
    const double vhat = v[i] / bc2;
    double p = params[i];
    if (cfg_.weight_decay != 0.0) p -= cfg_.lr * cfg_.weight_decay * p;
    params[i] = p - cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
  }
}

void Optimizer::restore(std::span<const double> moments, std::int64_t step_count) {
  if (moments.size() != moments_.size())
    throw std::invalid_argument("Optimizer::restore: state size mismatch");
  std::copy(moments.begin(), moments.end(), moments_.begin());
  t_ = step_count;
}

}  // namespace wfl::nn
