// Environment contract: tasks emit the reward and punishment branches
// separately (r_plus >= 0, r_minus <= 0). Agents depend on nothing else.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wfl::env {

struct EnvStep {
  std::vector<double> observation;
  double r_plus = 0.0;   // >= 0
  double r_minus = 0.0;  // <= 0
  bool terminal = false;
};

class Environment {
 public:
  virtual ~Environment() = default;

  virtual int observation_dim() const = 0;
  virtual int action_dim() const = 0;
  virtual double action_low() const = 0;
  virtual double action_high() const = 0;

  // Starts a new episode; the sequence of start states is determined by the
  // seed the environment was constructed with.
  virtual std::vector<double> reset() = 0;
  virtual EnvStep step(std::span<const double> action) = 0;
};

}  // namespace wfl::env
