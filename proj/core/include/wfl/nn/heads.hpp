// Value and policy heads on top of Mlp.
//
// Value heads carry a branch sign: the reward branch emits nonnegative
// values, the punishment branch nonpositive ones, so every estimate is
// admissible for its reward bound by construction. The rectified output has
// derivative 1 at exactly zero, which is where zero-initialized heads start.
//
// The policy head is a diagonal Gaussian whose mean saturates into the
// action interval and whose stddev is softplus-shifted above a small floor.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wfl/nn/mlp.hpp"

namespace wfl::nn {

enum class Sign { nonnegative, nonpositive };

class ValueHead {
 public:
  ValueHead(int state_dim, const std::vector<int>& hidden, Sign sign, bool use_bias = true);

  Sign sign() const { return sign_; }
  Mlp& net() { return net_; }
  const Mlp& net() const { return net_; }

  double value(std::span<const double> s, Mlp::Workspace& ws) const;

  // Accumulates scale * dV/dparams into grad using the activations left in
  // ws by the immediately preceding value() call.
  void add_grad(Mlp::Workspace& ws, double scale, std::span<double> grad) const;

  double value_and_grad(std::span<const double> s, Mlp::Workspace& ws, double scale,
                        std::span<double> grad) const;

 private:
  static std::vector<int> layer_sizes(int state_dim, const std::vector<int>& hidden);
  double squash(double y) const;
  Mlp net_;
  Sign sign_;
};

inline double softplus(double x) {
  return x > 30.0 ? x : std::log1p(std::exp(x));
}

inline constexpr double kStddevFloor = 1e-3;

class GaussianPolicyHead {
 public:
  // stddev_init is the standard deviation a zero-initialized final layer
  // produces (the softplus argument is shifted to hit it).
  GaussianPolicyHead(int state_dim, const std::vector<int>& hidden, int action_dim,
                     double action_low, double action_high, double stddev_init = 1.2);

  int action_dim() const { return action_dim_; }
  double action_low() const { return lo_; }
  double action_high() const { return hi_; }
  Mlp& net() { return net_; }
  const Mlp& net() const { return net_; }

  std::uint64_t boundary_evals() const { return boundary_evals_; }

  struct Moments {
    std::vector<double> mean;
    std::vector<double> stddev;
  };
  Moments moments(std::span<const double> s, Mlp::Workspace& ws) const;

  // Draw from N(mean, stddev^2); the caller clips before executing.
  void sample(std::span<const double> s, Mlp::Workspace& ws, Rng& rng,
              std::span<double> action_out) const;

  double density(std::span<const double> s, std::span<const double> a, Mlp::Workspace& ws) const;
  double log_prob(std::span<const double> s, std::span<const double> a, Mlp::Workspace& ws) const;

  // Log-density and scale * dlogpi/dparams accumulated into grad. Actions
  // outside the interval are evaluated at the clipped boundary and counted.
  double log_prob_and_grad(std::span<const double> s, std::span<const double> a,
                           Mlp::Workspace& ws, double scale, std::span<double> grad) const;

  // Gradient-only variant reusing the activations of the immediately
  // preceding log_prob() on the same state and workspace.
  void add_log_prob_grad(std::span<const double> a, Mlp::Workspace& ws, double scale,
                         std::span<double> grad) const;

 private:
  void heads_from(const std::vector<double>& raw, std::span<double> mean,
                  std::span<double> stddev) const;
  double log_prob_impl(std::span<const double> s, std::span<const double> a, Mlp::Workspace& ws,
                       double* grad_scale, std::span<double> grad) const;

  Mlp net_;
  int action_dim_;
  double lo_, hi_;
  double stddev_shift_;
  mutable std::uint64_t boundary_evals_ = 0;
};

}  // namespace wfl::nn
