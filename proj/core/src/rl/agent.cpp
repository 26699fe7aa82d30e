#include "wfl/rl/agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wfl/nn/target.hpp"
#include "wfl/nn/checkpoint.hpp"

namespace wfl::rl {

namespace {
constexpr double kDensityFloor = 1e-30;

double sigmoid(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}
}  // namespace

double mixture_weight_from_logits(double a, double b) {
  return sigmoid(a - b);
}

Agent::Agent(AgentConfig cfg, std::uint64_t seed)
    : cfg_(std::move(cfg)),
      rng_(seed),
      v_plus_(cfg_.state_dim, cfg_.hidden, nn::Sign::nonnegative, cfg_.value_bias),
      v_minus_(cfg_.state_dim, cfg_.hidden, nn::Sign::nonpositive, cfg_.value_bias),
      v_plus_target_(cfg_.state_dim, cfg_.hidden, nn::Sign::nonnegative, cfg_.value_bias),
      v_minus_target_(cfg_.state_dim, cfg_.hidden, nn::Sign::nonpositive, cfg_.value_bias),
      pi_plus_(cfg_.state_dim, cfg_.hidden, cfg_.action_dim, cfg_.action_low, cfg_.action_high),
      pi_minus_(cfg_.state_dim, cfg_.hidden, cfg_.action_dim, cfg_.action_low, cfg_.action_high),
      opt_v_plus_(cfg_.optimizer, v_plus_.net().param_count()),
      opt_v_minus_(cfg_.optimizer, v_minus_.net().param_count()),
      opt_pi_plus_(cfg_.optimizer, pi_plus_.net().param_count()),
      opt_pi_minus_(cfg_.optimizer, pi_minus_.net().param_count()),
      scale_plus_(init_scale(cfg_.zeta, cfg_.beta0_plus)),
      scale_minus_(init_scale(cfg_.zeta, cfg_.beta0_minus)),
      buffer_(cfg_.replay_capacity) {
  v_plus_.net().init_params(rng_);
  v_minus_.net().init_params(rng_);
  pi_plus_.net().init_params(rng_);
  pi_minus_.net().init_params(rng_);
  v_plus_target_.net().params() = v_plus_.net().params();
  v_minus_target_.net().params() = v_minus_.net().params();

  grad_v_plus_.assign(v_plus_.net().param_count(), 0.0);
  grad_v_minus_.assign(v_minus_.net().param_count(), 0.0);
  grad_pi_plus_.assign(pi_plus_.net().param_count(), 0.0);
  grad_pi_minus_.assign(pi_minus_.net().param_count(), 0.0);
  ws_value_ = v_plus_.net().make_workspace();
  ws_target_ = v_plus_target_.net().make_workspace();
  ws_policy_ = pi_plus_.net().make_workspace();
}

Agent::ActResult Agent::act(std::span<const double> s) {
  const double vp = v_plus_.value(s, ws_value_);
  const double vm = v_minus_.value(s, ws_value_);
  const double w = mixture_weight_from_logits(cfg_.beta_w * vp, -cfg_.beta_w * vm);

  const bool use_plus = rng_.uniform() < w;
  const nn::GaussianPolicyHead& head = use_plus ? pi_plus_ : pi_minus_;

  ActResult out;
  out.action.resize(cfg_.action_dim);
  head.sample(s, ws_policy_, rng_, out.action);
  for (double& a : out.action) a = std::clamp(a, cfg_.action_low, cfg_.action_high);

  const double dp = pi_plus_.density(s, out.action, ws_policy_);
  const double dm = pi_minus_.density(s, out.action, ws_policy_);
  out.b_density = w * dp + (1.0 - w) * dm;
  return out;
}

void Agent::observe(Transition t) {
  // scale trackers see each branch reward before the transition is stored
  scale_plus_ = wfl::observe(scale_plus_, t.r_plus);
  scale_minus_ = wfl::observe(scale_minus_, t.r_minus);
  buffer_.push(std::move(t));
}

double Agent::td_target(Branch branch, double r, double v_next, bool terminal) const {
  if (branch == Branch::plus ? r < 0.0 : r > 0.0)
    throw std::invalid_argument("td_target: reward sign does not match branch");
  return (1.0 - cfg_.gamma) * r + (terminal ? 0.0 : cfg_.gamma * v_next);
}

double Agent::critic_update_weight(Branch branch, double v, double q) const {
  return update_weight(v, q, wfl_params(branch), bound(branch));
}

double Agent::value(Branch branch, std::span<const double> s) {
  return (branch == Branch::plus ? v_plus_ : v_minus_).value(s, ws_value_);
}

double Agent::target_value(Branch branch, std::span<const double> s) {
  return (branch == Branch::plus ? v_plus_target_ : v_minus_target_).value(s, ws_target_);
}

double Agent::mixture_weight(std::span<const double> s) {
  const double vp = v_plus_.value(s, ws_value_);
  const double vm = v_minus_.value(s, ws_value_);
  return mixture_weight_from_logits(cfg_.beta_w * vp, -cfg_.beta_w * vm);
}

double Agent::policy_log_prob(Branch branch, std::span<const double> s,
                              std::span<const double> a) {
  return (branch == Branch::plus ? pi_plus_ : pi_minus_).log_prob(s, a, ws_policy_);
}

void Agent::update_on_batch(std::span<const Transition> batch) {
  std::vector<const Transition*> ptrs(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) ptrs[i] = &batch[i];
  update_on_batch(std::span<const Transition* const>(ptrs));
}

void Agent::update_on_batch(std::span<const Transition* const> batch) {
  if (batch.empty()) return;

  // one temperature snapshot per batch
  const WflParams wp = params_from(scale_plus_);
  const WflParams wm = params_from(scale_minus_);
  const auto bound_plus = bound(Branch::plus);
  const auto bound_minus = bound(Branch::minus);

  std::fill(grad_v_plus_.begin(), grad_v_plus_.end(), 0.0);
  std::fill(grad_v_minus_.begin(), grad_v_minus_.end(), 0.0);
  std::fill(grad_pi_plus_.begin(), grad_pi_plus_.end(), 0.0);
  std::fill(grad_pi_minus_.begin(), grad_pi_minus_.end(), 0.0);

  const double inv_b = 1.0 / static_cast<double>(batch.size());

  for (const Transition* t : batch) {
    // critics: q bootstraps through the branch target network
    const double vnp = v_plus_target_.value(t->s_next, ws_target_);
    const double qp = td_target(Branch::plus, t->r_plus, vnp, t->terminal);
    const double vp = v_plus_.value(t->s, ws_value_);
    const double wgt_p = update_weight(vp, qp, wp, bound_plus);
    v_plus_.add_grad(ws_value_, -wgt_p * inv_b, grad_v_plus_);

    const double vnm = v_minus_target_.value(t->s_next, ws_target_);
    const double qm = td_target(Branch::minus, t->r_minus, vnm, t->terminal);
    const double vm = v_minus_.value(t->s, ws_value_);
    const double wgt_m = update_weight(vm, qm, wm, bound_minus);
    v_minus_.add_grad(ws_value_, -wgt_m * inv_b, grad_v_minus_);

    // actors: same per-sample weights, importance-corrected against the
    // stored behavior density and kept close to it by a quadratic penalty
    if (t->b_density <= kDensityFloor) {
      ++counters_.skipped_actor_samples;
      continue;
    }
    const double log_b = std::log(t->b_density);

    const double logp_p = pi_plus_.log_prob(t->s, t->a, ws_policy_);
    double ratio_p = std::exp(logp_p - log_b);
    if (ratio_p < cfg_.ratio_clip_lo || ratio_p > cfg_.ratio_clip_hi) {
      ratio_p = std::clamp(ratio_p, cfg_.ratio_clip_lo, cfg_.ratio_clip_hi);
      ++counters_.clipped_ratios;
    }
    const double coef_p = (-ratio_p * wgt_p + 2.0 * cfg_.kappa * (logp_p - log_b)) * inv_b;
    pi_plus_.add_log_prob_grad(t->a, ws_policy_, coef_p, grad_pi_plus_);

    const double logp_m = pi_minus_.log_prob(t->s, t->a, ws_policy_);
    double ratio_m = std::exp(logp_m - log_b);
    if (ratio_m < cfg_.ratio_clip_lo || ratio_m > cfg_.ratio_clip_hi) {
      ratio_m = std::clamp(ratio_m, cfg_.ratio_clip_lo, cfg_.ratio_clip_hi);
      ++counters_.clipped_ratios;
    }
    const double coef_m = (-ratio_m * wgt_m + 2.0 * cfg_.kappa * (logp_m - log_b)) * inv_b;
    pi_minus_.add_log_prob_grad(t->a, ws_policy_, coef_m, grad_pi_minus_);
  }

  apply_updates();
}

void Agent::apply_updates() {
  opt_v_plus_.step(v_plus_.net().params(), grad_v_plus_);
  opt_v_minus_.step(v_minus_.net().params(), grad_v_minus_);
  opt_pi_plus_.step(pi_plus_.net().params(), grad_pi_plus_);
  opt_pi_minus_.step(pi_minus_.net().params(), grad_pi_minus_);
  nn::polyak_update(v_plus_target_.net().params(), v_plus_.net().params(), cfg_.tau);
  nn::polyak_update(v_minus_target_.net().params(), v_minus_.net().params(), cfg_.tau);
}

void Agent::end_of_episode_replay() {
  const std::size_t n = buffer_.size();
  if (n == 0) return;
  const std::size_t k = (n + 1) / 2;
  const std::vector<std::size_t> idx = buffer_.sample_without_replacement(k, rng_);

  std::vector<const Transition*> batch;
  batch.reserve(cfg_.batch_size);
  for (std::size_t start = 0; start < k; start += cfg_.batch_size) {
    const std::size_t stop = std::min(k, start + static_cast<std::size_t>(cfg_.batch_size));
    batch.clear();
    for (std::size_t i = start; i < stop; ++i) batch.push_back(&buffer_[idx[i]]);
    update_on_batch(std::span<const Transition* const>(batch));
  }
}

std::uint64_t Agent::optimizer_skipped_steps() const {
  return opt_v_plus_.skipped_steps() + opt_v_minus_.skipped_steps() +
         opt_pi_plus_.skipped_steps() + opt_pi_minus_.skipped_steps();
}

std::int64_t Agent::gradient_batches() const {
  return opt_v_plus_.step_count();
}

void Agent::save_checkpoint(const std::string& base_path) const {
  nn::Checkpoint ck;
  ck.add_block("v_plus", v_plus_.net().params(), v_plus_.net().layer_sizes());
  ck.add_block("v_minus", v_minus_.net().params(), v_minus_.net().layer_sizes());
  ck.add_block("pi_plus", pi_plus_.net().params(), pi_plus_.net().layer_sizes());
  ck.add_block("pi_minus", pi_minus_.net().params(), pi_minus_.net().layer_sizes());
  ck.add_block("opt_v_plus", opt_v_plus_.moments());
  ck.add_block("opt_v_minus", opt_v_minus_.moments());
  ck.add_block("opt_pi_plus", opt_pi_plus_.moments());
  ck.add_block("opt_pi_minus", opt_pi_minus_.moments());

  ck.counters["opt_v_plus.t"] = opt_v_plus_.step_count();
  ck.counters["opt_v_minus.t"] = opt_v_minus_.step_count();
  ck.counters["opt_pi_plus.t"] = opt_pi_plus_.step_count();
  ck.counters["opt_pi_minus.t"] = opt_pi_minus_.step_count();

  ck.scalars["scale_plus.sigma_max"] = scale_plus_.sigma_max;
  ck.scalars["scale_plus.sigma"] = scale_plus_.sigma;
  ck.scalars["scale_plus.zeta"] = scale_plus_.zeta;
  ck.scalars["scale_plus.beta0"] = scale_plus_.beta0;
  ck.scalars["scale_minus.sigma_max"] = scale_minus_.sigma_max;
  ck.scalars["scale_minus.sigma"] = scale_minus_.sigma;
  ck.scalars["scale_minus.zeta"] = scale_minus_.zeta;
  ck.scalars["scale_minus.beta0"] = scale_minus_.beta0;

  ck.save(base_path);
}

void Agent::load_checkpoint(const std::string& base_path) {
  const nn::Checkpoint ck = nn::Checkpoint::load(base_path);

  auto restore_net = [&](const char* name, nn::Mlp& net) {
    const nn::CheckpointBlock* b = ck.find(name);
    if (!b || b->data.size() != net.param_count())
      throw std::runtime_error(std::string("checkpoint: bad or missing block ") + name);
    net.params() = b->data;
  };
  restore_net("v_plus", v_plus_.net());
  restore_net("v_minus", v_minus_.net());
  restore_net("pi_plus", pi_plus_.net());
  restore_net("pi_minus", pi_minus_.net());
  // targets restart from the restored online parameters
  v_plus_target_.net().params() = v_plus_.net().params();
  v_minus_target_.net().params() = v_minus_.net().params();

  auto restore_opt = [&](const char* name, nn::Optimizer& opt) {
    const nn::CheckpointBlock* b = ck.find(name);
    if (!b) throw std::runtime_error(std::string("checkpoint: missing block ") + name);
    opt.restore(b->data, ck.counters.at(std::string(name) + ".t"));
  };
  restore_opt("opt_v_plus", opt_v_plus_);
  restore_opt("opt_v_minus", opt_v_minus_);
  restore_opt("opt_pi_plus", opt_pi_plus_);
  restore_opt("opt_pi_minus", opt_pi_minus_);

  scale_plus_.sigma_max = ck.scalars.at("scale_plus.sigma_max");
  scale_plus_.sigma = ck.scalars.at("scale_plus.sigma");
  scale_plus_.zeta = ck.scalars.at("scale_plus.zeta");
  scale_plus_.beta0 = ck.scalars.at("scale_plus.beta0");
  scale_minus_.sigma_max = ck.scalars.at("scale_minus.sigma_max");
  scale_minus_.sigma = ck.scalars.at("scale_minus.sigma");
  scale_minus_.zeta = ck.scalars.at("scale_minus.zeta");
  scale_minus_.beta0 = ck.scalars.at("scale_minus.beta0");
}

}  // namespace wfl::rl
