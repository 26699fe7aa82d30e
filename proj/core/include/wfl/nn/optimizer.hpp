// First-order parameter updates. Adam is the training default; plain SGD is
// kept for exact correspondence with tabular update rules.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wfl::nn {

enum class OptimizerKind { adam, sgd };

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::adam;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;  // decoupled, applied directly to the parameters
};

class Optimizer {
 public:
  Optimizer(OptimizerConfig cfg, std::size_t param_count);

  // One descent step. A non-finite gradient anywhere skips the whole step
  // and bumps skipped_steps().
  void step(std::span<double> params, std::span<const double> grads);

  std::uint64_t skipped_steps() const { return skipped_; }
  const OptimizerConfig& config() const { return cfg_; }

  // Flat state for checkpointing: [m..., v...] plus the step counter.
  std::span<const double> moments() const { return moments_; }
  std::int64_t step_count() const { return t_; }
  void restore(std::span<const double> moments, std::int64_t step_count);

 private:
  OptimizerConfig cfg_;
  std::vector<double> moments_;  // adam: first half m, second half v
  std::int64_t t_ = 0;
  std::uint64_t skipped_ = 0;
};

}  // namespace wfl::nn
