#include "wfl/nn/heads.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wfl::nn {

namespace {
constexpr double kHalfLog2Pi = 0.9189385332046727;  // 0.5*ln(2*pi)

double sigmoid(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}
}  // namespace

std::vector<int> ValueHead::layer_sizes(int state_dim, const std::vector<int>& hidden) {
  std::vector<int> sizes;
  sizes.push_back(state_dim);
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(1);
  return sizes;
}

ValueHead::ValueHead(int state_dim, const std::vector<int>& hidden, Sign sign, bool use_bias)
    : net_(layer_sizes(state_dim, hidden), use_bias), sign_(sign) {}

double ValueHead::squash(double y) const {
  const double r = y > 0.0 ? y : 0.0;
  return sign_ == Sign::nonnegative ? r : -r;
}

double ValueHead::value(std::span<const double> s, Mlp::Workspace& ws) const {
  double y;
  net_.forward(s, ws, std::span<double>(&y, 1));
  return squash(y);
}

void ValueHead::add_grad(Mlp::Workspace& ws, double scale, std::span<double> grad) const {
  const double y = ws.pre.back()[0];
  // rectifier derivative taken as 1 at exactly zero so zero-initialized
  // heads receive gradient from the first update on
  double dy = y >= 0.0 ? 1.0 : 0.0;
  if (sign_ == Sign::nonpositive) dy = -dy;
  net_.backward(ws, std::span<const double>(&dy, 1), scale, grad);
}

double ValueHead::value_and_grad(std::span<const double> s, Mlp::Workspace& ws, double scale,
                                 std::span<double> grad) const {
  const double v = value(s, ws);
  add_grad(ws, scale, grad);
  return v;
}

GaussianPolicyHead::GaussianPolicyHead(int state_dim, const std::vector<int>& hidden,
                                       int action_dim, double action_low, double action_high)
    : net_([&] {
        std::vector<int> sizes;
        sizes.push_back(state_dim);
        sizes.insert(sizes.end(), hidden.begin(), hidden.end());
        sizes.push_back(2 * action_dim);
        return sizes;
      }()),
      action_dim_(action_dim),
      lo_(action_low),
      hi_(action_high) {
  if (action_dim <= 0) throw std::invalid_argument("GaussianPolicyHead: action_dim must be > 0");
  if (!(action_low < action_high))
    throw std::invalid_argument("GaussianPolicyHead: empty action interval");
}

void GaussianPolicyHead::heads_from(const std::vector<double>& raw, std::span<double> mean,
                                    std::span<double> stddev) const {
  const double center = 0.5 * (lo_ + hi_);
  const double half = 0.5 * (hi_ - lo_);
  for (int i = 0; i < action_dim_; ++i) {
    mean[i] = center + half * std::tanh(raw[i]);
    stddev[i] = kStddevFloor + softplus(raw[action_dim_ + i]);
  }
}

GaussianPolicyHead::Moments GaussianPolicyHead::moments(std::span<const double> s,
                                                        Mlp::Workspace& ws) const {
  Moments m;
  m.mean.resize(action_dim_);
  m.stddev.resize(action_dim_);
  auto& raw = ws.act.back();
  net_.forward(s, ws, std::span<double>(raw.data(), raw.size()));
  heads_from(raw, m.mean, m.stddev);
  return m;
}

void GaussianPolicyHead::sample(std::span<const double> s, Mlp::Workspace& ws, Rng& rng,
                                std::span<double> action_out) const {
  const Moments m = moments(s, ws);
  for (int i = 0; i < action_dim_; ++i) action_out[i] = m.mean[i] + m.stddev[i] * rng.normal();
}

double GaussianPolicyHead::log_prob_impl(std::span<const double> s, std::span<const double> a,
                                         Mlp::Workspace& ws, double* grad_scale,
                                         std::span<double> grad) const {
  if (static_cast<int>(a.size()) != action_dim_)
    throw std::invalid_argument("GaussianPolicyHead: action dimension mismatch");

  auto& raw = ws.act.back();
  net_.forward(s, ws, std::span<double>(raw.data(), raw.size()));

  const double center = 0.5 * (lo_ + hi_);
  const double half = 0.5 * (hi_ - lo_);

  thread_local std::vector<double> dout;
  if (grad_scale) dout.assign(2 * action_dim_, 0.0);

  double logp = 0.0;
  bool clipped = false;
  for (int i = 0; i < action_dim_; ++i) {
    double ai = a[i];
    if (ai < lo_ || ai > hi_) {
      ai = std::clamp(ai, lo_, hi_);
      clipped = true;
    }
    const double t = std::tanh(raw[i]);
    const double mu = center + half * t;
    const double sig = kStddevFloor + softplus(raw[action_dim_ + i]);
    const double z = (ai - mu) / sig;
    logp += -0.5 * z * z - std::log(sig) - kHalfLog2Pi;
    if (grad_scale) {
      const double dmu = z / sig;
      const double dsig = (z * z - 1.0) / sig;
      dout[i] = dmu * half * (1.0 - t * t);
      dout[action_dim_ + i] = dsig * sigmoid(raw[action_dim_ + i]);
    }
  }
  if (clipped) ++boundary_evals_;
  if (grad_scale) net_.backward(ws, dout, *grad_scale, grad);
  return logp;
}

double GaussianPolicyHead::log_prob(std::span<const double> s, std::span<const double> a,
                                    Mlp::Workspace& ws) const {
  return log_prob_impl(s, a, ws, nullptr, {});
}

double GaussianPolicyHead::density(std::span<const double> s, std::span<const double> a,
                                   Mlp::Workspace& ws) const {
  return std::exp(log_prob(s, a, ws));
}

double GaussianPolicyHead::log_prob_and_grad(std::span<const double> s, std::span<const double> a,
                                             Mlp::Workspace& ws, double scale,
                                             std::span<double> grad) const {
  return log_prob_impl(s, a, ws, &scale, grad);
}

void GaussianPolicyHead::add_log_prob_grad(std::span<const double> a, Mlp::Workspace& ws,
                                           double scale, std::span<double> grad) const {
  const auto& raw = ws.act.back();
  const double center = 0.5 * (lo_ + hi_);
  const double half = 0.5 * (hi_ - lo_);

  thread_local std::vector<double> dout;
  dout.assign(2 * action_dim_, 0.0);
  for (int i = 0; i < action_dim_; ++i) {
    const double ai = std::clamp(a[i], lo_, hi_);
    const double t = std::tanh(raw[i]);
    const double mu = center + half * t;
    const double sig = kStddevFloor + softplus(raw[action_dim_ + i]);
    const double z = (ai - mu) / sig;
    dout[i] = (z / sig) * half * (1.0 - t * t);
    dout[action_dim_ + i] = ((z * z - 1.0) / sig) * sigmoid(raw[action_dim_ + i]);
  }
  net_.backward(ws, dout, scale, grad);
}

}  // namespace wfl::nn
