// Torque-limited pendulum swing-up with a split reward:
//   r_plus  = 1 + cos(q)                      (closeness to upright)
//   r_minus = -(0.1|qdot| + 0.001|tau|) (1 + cos(q))  (motion near upright)
// Rod dynamics integrated with semi-implicit Euler, matching the usual
// swing-up benchmark constants (g=10, m=1, l=1, dt=0.05, torque in [-2,2],
// speed clamped to [-8,8], 200 steps per episode).

#pragma once

#include "wfl/env/env.hpp"
#include "wfl/rng.hpp"

namespace wfl::env {

struct PendulumState {
  double q = 0.0;     // angle, wrapped to (-pi, pi], 0 = upright
  double qdot = 0.0;  // angular velocity, clamped to [-8, 8]
};

class Pendulum final : public Environment {
 public:
  static constexpr double kGravity = 10.0;
  static constexpr double kMass = 1.0;
  static constexpr double kLength = 1.0;
  static constexpr double kDt = 0.05;
  static constexpr double kMaxSpeed = 8.0;
  static constexpr double kMaxTorque = 2.0;
  static constexpr int kEpisodeSteps = 200;

  explicit Pendulum(std::uint64_t seed);

  int observation_dim() const override { return 3; }
  int action_dim() const override { return 1; }
  double action_low() const override { return -kMaxTorque; }
  double action_high() const override { return kMaxTorque; }

  std::vector<double> reset() override;
  EnvStep step(std::span<const double> action) override;

  const PendulumState& state() const { return state_; }
  void set_state(const PendulumState& s) { state_ = s; }

  // Kinetic plus potential energy of the rod; useful for integrator checks.
  double energy() const;

  static double wrap_angle(double q);

  // The split reward map at a (post-transition) state with executed torque.
  struct Reward {
    double r_plus;
    double r_minus;
  };
  static Reward rewards(double q, double qdot, double tau);

 private:
  std::vector<double> observation() const;

  PendulumState state_;
  int steps_taken_ = 0;
  Rng rng_;
};

}  // namespace wfl::env
