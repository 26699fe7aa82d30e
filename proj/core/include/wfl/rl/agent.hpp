// Reward-punishment actor-critic. Each branch owns a signed value head and
// a Gaussian policy; behavior actions come from a value-weighted mixture of
// the two policies. Critic and actor gradients share one scalar weight per
// sample, computed by the bound-anchored update rule with the branch's
// scale-adapted inverse temperature.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wfl/nn/heads.hpp"
#include "wfl/nn/optimizer.hpp"
#include "wfl/rl/replay_buffer.hpp"
#include "wfl/rl/transition.hpp"
#include "wfl/scale.hpp"
#include "wfl/update_rule.hpp"

namespace wfl::rl {

enum class Branch { plus, minus };

struct AgentConfig {
  int state_dim = 3;
  int action_dim = 1;
  double action_low = -2.0;
  double action_high = 2.0;

  std::vector<int> hidden = {100, 100};
  bool value_bias = true;  // false gives exactly tabular linear value heads

  double gamma = 0.99;
  double zeta = 0.999;
  double beta0_plus = std::numeric_limits<double>::infinity();
  double beta0_minus = std::numeric_limits<double>::infinity();

  double beta_w = 10.0;  // mixture sharpness
  double kappa = 0.01;   // density-ratio keep-close penalty
  double ratio_clip_lo = 0.1;
  double ratio_clip_hi = 10.0;

  double tau = 0.01;  // target mix rate per gradient batch
  nn::OptimizerConfig optimizer{};
  int batch_size = 32;
  std::size_t replay_capacity = 10000;
};

// Mixture weight w = e^a / (e^a + e^b) with a = beta_w V+, b = -beta_w V-,
// computed in log space.
double mixture_weight_from_logits(double a, double b);

class Agent {
 public:
  Agent(AgentConfig cfg, std::uint64_t seed);

  struct ActResult {
    std::vector<double> action;  // clipped to the action interval
    double b_density;            // mixture density at that action
  };
  ActResult act(std::span<const double> s);

  // Store a transition and feed both reward-scale trackers.
  void observe(Transition t);

  // Replay ceil(size/2) stored transitions in minibatches; refreshes the
  // branch temperatures per batch and soft-updates the targets after each.
  void end_of_episode_replay();

  // One gradient batch over explicit transitions (also the replay path).
  void update_on_batch(std::span<const Transition* const> batch);
  void update_on_batch(std::span<const Transition> batch);

  double td_target(Branch branch, double r, double v_next, bool terminal) const;
  double critic_update_weight(Branch branch, double v, double q) const;

  double value(Branch branch, std::span<const double> s);
  double target_value(Branch branch, std::span<const double> s);
  double mixture_weight(std::span<const double> s);
  double policy_log_prob(Branch branch, std::span<const double> s, std::span<const double> a);

  const ScaleState& scale(Branch branch) const {
    return branch == Branch::plus ? scale_plus_ : scale_minus_;
  }
  WflParams wfl_params(Branch branch) const {
    return params_from(scale(branch));
  }
  static BoundConvention bound(Branch branch) {
    // punishments live under an upper bound at zero, rewards above a lower one
    return branch == Branch::plus ? BoundConvention::lower(0.0) : BoundConvention::upper(0.0);
  }

  ReplayBuffer& buffer() { return buffer_; }
  const AgentConfig& config() const { return cfg_; }

  struct Counters {
    std::uint64_t skipped_actor_samples = 0;  // degenerate behavior density
    std::uint64_t clipped_ratios = 0;
  };
  const Counters& counters() const { return counters_; }
  std::uint64_t optimizer_skipped_steps() const;
  // number of gradient batches applied so far (adam step counter)
  std::int64_t gradient_batches() const;

  void save_checkpoint(const std::string& base_path) const;
  void load_checkpoint(const std::string& base_path);

 private:
  void apply_updates();

  AgentConfig cfg_;
  Rng rng_;

  nn::ValueHead v_plus_;
  nn::ValueHead v_minus_;
  nn::ValueHead v_plus_target_;
  nn::ValueHead v_minus_target_;
  nn::GaussianPolicyHead pi_plus_;
  nn::GaussianPolicyHead pi_minus_;

  nn::Optimizer opt_v_plus_;
  nn::Optimizer opt_v_minus_;
  nn::Optimizer opt_pi_plus_;
  nn::Optimizer opt_pi_minus_;

  std::vector<double> grad_v_plus_, grad_v_minus_, grad_pi_plus_, grad_pi_minus_;
  nn::Mlp::Workspace ws_value_, ws_target_, ws_policy_;

  ScaleState scale_plus_;
  ScaleState scale_minus_;
  ReplayBuffer buffer_;
  Counters counters_;
};

}  // namespace wfl::rl
