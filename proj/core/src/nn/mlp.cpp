#include "wfl/nn/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wfl::nn {

Mlp::Mlp(std::vector<int> sizes, bool use_bias)
    : sizes_(std::move(sizes)), use_bias_(use_bias) {
  if (sizes_.size() < 2) throw std::invalid_argument("Mlp: need at least input and output sizes");
  for (int s : sizes_)
    if (s <= 0) throw std::invalid_argument("Mlp: layer sizes must be positive");

  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    weight_offsets_.push_back(total);
    total += static_cast<std::size_t>(sizes_[l + 1]) * sizes_[l];
    bias_offsets_.push_back(total);
    if (use_bias_) total += sizes_[l + 1];
  }
  params_.assign(total, 0.0);
}

void Mlp::init_params(Rng& rng) {
  const std::size_t layers = sizes_.size() - 1;
  for (std::size_t l = 0; l < layers; ++l) {
    const int fan_in = sizes_[l];
    const int fan_out = sizes_[l + 1];
    double* w = params_.data() + weight_offsets_[l];
    if (l + 1 == layers) {
      // final layer stays zero: initial outputs are exactly zero
      for (int i = 0; i < fan_out * fan_in; ++i) w[i] = 0.0;
      if (use_bias_)
        for (int i = 0; i < fan_out; ++i) params_[bias_offsets_[l] + i] = 0.0;
    } else {
      const double limit = 1.0 / std::sqrt(static_cast<double>(fan_in));
      for (int i = 0; i < fan_out * fan_in; ++i) w[i] = rng.uniform(-limit, limit);
      if (use_bias_)
        for (int i = 0; i < fan_out; ++i) params_[bias_offsets_[l] + i] = 0.0;
    }
  }
}

Mlp::Workspace Mlp::make_workspace() const {
  Workspace ws;
  ws.act.resize(sizes_.size());
  ws.pre.resize(sizes_.size() - 1);
  for (std::size_t i = 0; i < sizes_.size(); ++i) ws.act[i].resize(sizes_[i]);
  for (std::size_t i = 0; i + 1 < sizes_.size(); ++i) ws.pre[i].resize(sizes_[i + 1]);
  std::size_t widest = 0;
  for (int s : sizes_) widest = std::max<std::size_t>(widest, s);
  ws.dpre.resize(widest);
  ws.dprev.resize(widest);
  return ws;
}

void Mlp::forward(std::span<const double> x, Workspace& ws, std::span<double> out) const {
  if (static_cast<int>(x.size()) != input_dim())
    throw std::invalid_argument("Mlp::forward: input dimension mismatch");
  if (static_cast<int>(out.size()) != output_dim())
    throw std::invalid_argument("Mlp::forward: output dimension mismatch");

  const std::size_t layers = sizes_.size() - 1;
  for (int i = 0; i < input_dim(); ++i) ws.act[0][i] = x[i];

  for (std::size_t l = 0; l < layers; ++l) {
    const int in = sizes_[l];
    const int n = sizes_[l + 1];
    const double* w = params_.data() + weight_offsets_[l];
    const double* b = use_bias_ ? params_.data() + bias_offsets_[l] : nullptr;
    const double* a = ws.act[l].data();
    double* z = ws.pre[l].data();
    for (int i = 0; i < n; ++i) {
      const double* row = w + static_cast<std::size_t>(i) * in;
      // four accumulators break the FP latency chain; order is fixed, so
      // results stay deterministic
      double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
      int j = 0;
      for (; j + 4 <= in; j += 4) {
        s0 += row[j] * a[j];
        s1 += row[j + 1] * a[j + 1];
        s2 += row[j + 2] * a[j + 2];
        s3 += row[j + 3] * a[j + 3];
      }
      double acc = (s0 + s1) + (s2 + s3);
      for (; j < in; ++j) acc += row[j] * a[j];
      z[i] = acc + (b ? b[i] : 0.0);
    }
    double* next = ws.act[l + 1].data();
    if (l + 1 < layers) {
      for (int i = 0; i < n; ++i) next[i] = z[i] > 0.0 ? z[i] : 0.0;
    } else {
      for (int i = 0; i < n; ++i) next[i] = z[i];
    }
  }
  const auto& last = ws.act.back();
  for (int i = 0; i < output_dim(); ++i) out[i] = last[i];
}

void Mlp::backward(Workspace& ws, std::span<const double> dout, double scale,
                   std::span<double> grad) const {
  if (static_cast<int>(dout.size()) != output_dim())
    throw std::invalid_argument("Mlp::backward: dout dimension mismatch");
  if (grad.size() != params_.size())
    throw std::invalid_argument("Mlp::backward: grad buffer size mismatch");

  const std::size_t layers = sizes_.size() - 1;
  std::vector<double>& dpre = ws.dpre;
  std::vector<double>& dprev = ws.dprev;

  for (int i = 0; i < output_dim(); ++i) dpre[i] = dout[i];

  for (std::size_t l = layers; l-- > 0;) {
    const int in = sizes_[l];
    const int n = sizes_[l + 1];
    const double* w = params_.data() + weight_offsets_[l];
    const double* a = ws.act[l].data();
    double* gw = grad.data() + weight_offsets_[l];
    for (int i = 0; i < n; ++i) {
      const double d = scale * dpre[i];
      double* grow = gw + static_cast<std::size_t>(i) * in;
      for (int j = 0; j < in; ++j) grow[j] += d * a[j];
    }
    if (use_bias_) {
      double* gb = grad.data() + bias_offsets_[l];
      for (int i = 0; i < n; ++i) gb[i] += scale * dpre[i];
    }
    if (l == 0) break;

    for (int j = 0; j < in; ++j) dprev[j] = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = dpre[i];
      const double* row = w + static_cast<std::size_t>(i) * in;
      for (int j = 0; j < in; ++j) dprev[j] += d * row[j];
    }
    // rectifier mask of the previous hidden layer
    const double* zprev = ws.pre[l - 1].data();
    for (int j = 0; j < in; ++j) dpre[j] = zprev[j] > 0.0 ? dprev[j] : 0.0;
  }
}

}  // namespace wfl::nn
