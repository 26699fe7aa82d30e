// Slow-tracking copies of online parameters for bootstrap targets.

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace wfl::nn {

// shadow <- (1-tau)*shadow + tau*online, elementwise.
inline void polyak_update(std::span<double> shadow, std::span<const double> online, double tau) {
  if (shadow.size() != online.size())
    throw std::invalid_argument("polyak_update: size mismatch");
  for (std::size_t i = 0; i < shadow.size(); ++i)
    shadow[i] = (1.0 - tau) * shadow[i] + tau * online[i];
}

class TargetNetwork {
 public:
  TargetNetwork(std::span<const double> online, double tau)
      : shadow_(online.begin(), online.end()), tau_(tau) {
    if (!(tau > 0.0 && tau <= 1.0))
      throw std::invalid_argument("TargetNetwork: tau must lie in (0,1]");
  }

  void update(std::span<const double> online) { polyak_update(shadow_, online, tau_); }

  double tau() const { return tau_; }
  std::span<const double> params() const { return shadow_; }

 private:
  std::vector<double> shadow_;
  double tau_;
};

}  // namespace wfl::nn
