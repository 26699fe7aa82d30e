#include "wfl/env/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wfl::env {

Pendulum::Pendulum(std::uint64_t seed) : rng_(seed) {}

double Pendulum::wrap_angle(double q) {
  double m = std::fmod(q + M_PI, 2.0 * M_PI);
  if (m < 0.0) m += 2.0 * M_PI;
  double wrapped = m - M_PI;  // [-pi, pi)
  if (wrapped == -M_PI) wrapped = M_PI;
  return wrapped;
}

std::vector<double> Pendulum::reset() {
  state_.q = rng_.uniform(-M_PI, M_PI);
  state_.qdot = rng_.uniform(-1.0, 1.0);
  steps_taken_ = 0;
  return observation();
}

std::vector<double> Pendulum::observation() const {
  return {std::cos(state_.q), std::sin(state_.q), state_.qdot};
}

EnvStep Pendulum::step(std::span<const double> action) {
  if (action.size() != 1) throw std::invalid_argument("Pendulum::step: action must be scalar");
  if (!std::isfinite(action[0]))
    throw std::invalid_argument("Pendulum::step: action must be finite");

  const double tau = std::clamp(action[0], -kMaxTorque, kMaxTorque);
  const double accel = (3.0 * kGravity / (2.0 * kLength)) * std::sin(state_.q) +
                       (3.0 / (kMass * kLength * kLength)) * tau;
  state_.qdot = std::clamp(state_.qdot + accel * kDt, -kMaxSpeed, kMaxSpeed);
  state_.q = wrap_angle(state_.q + state_.qdot * kDt);

  // rewards on the post-transition state with the executed torque
  const Reward r = rewards(state_.q, state_.qdot, tau);
  EnvStep out;
  out.observation = observation();
  out.r_plus = r.r_plus;
  out.r_minus = r.r_minus;
  out.terminal = ++steps_taken_ >= kEpisodeSteps;
  return out;
}

Pendulum::Reward Pendulum::rewards(double q, double qdot, double tau) {
  const double upright = 1.0 + std::cos(q);
  return Reward{upright, -(0.1 * std::abs(qdot) + 0.001 * std::abs(tau)) * upright};
}

double Pendulum::energy() const {
  // uniform rod pivoted at one end: I = m l^2 / 3, potential mg(l/2)cos(q)
  const double inertia = kMass * kLength * kLength / 3.0;
  return 0.5 * inertia * state_.qdot * state_.qdot +
         kMass * kGravity * (kLength / 2.0) * std::cos(state_.q);
}

}  // namespace wfl::env
