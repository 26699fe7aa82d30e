// Fixed-topology fully connected network with hand-written backprop.
// Hidden layers use the rectifier; the output layer is linear. Parameters
// live in one flat vector (per layer: row-major weights, then biases) so
// optimizers, target copies, and checkpoints can treat them uniformly.

#pragma once

#include <span>
#include <vector>

#include "wfl/rng.hpp"

namespace wfl::nn {

class Mlp {
 public:
  // sizes = {input, hidden..., output}; use_bias=false drops all bias terms
  // (useful for exactly tabular linear heads in tests).
  explicit Mlp(std::vector<int> sizes, bool use_bias = true);

  int input_dim() const { return sizes_.front(); }
  int output_dim() const { return sizes_.back(); }
  std::size_t param_count() const { return params_.size(); }

  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }
  const std::vector<int>& layer_sizes() const { return sizes_; }

  // Hidden weights ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)), hidden biases zero,
  // final layer all zero.
  void init_params(Rng& rng);

  // Scratch space for one forward/backward pair; reusable across calls.
  struct Workspace {
    std::vector<std::vector<double>> act;  // act[0] = input copy
    std::vector<std::vector<double>> pre;  // pre-activations per layer
    std::vector<double> dpre;              // backward scratch
    std::vector<double> dprev;
  };
  Workspace make_workspace() const;

  // out must have output_dim() elements.
  void forward(std::span<const double> x, Workspace& ws, std::span<double> out) const;

  // Accumulate scale * d(dout . output)/d(params) into grad, using the
  // activations recorded by the matching forward call.
  void backward(Workspace& ws, std::span<const double> dout, double scale,
                std::span<double> grad) const;

 private:
  std::vector<int> sizes_;
  bool use_bias_;
  std::vector<double> params_;
  std::vector<std::size_t> weight_offsets_;  // per layer
  std::vector<std::size_t> bias_offsets_;    // per layer (unused when !use_bias_)
};

}  // namespace wfl::nn
