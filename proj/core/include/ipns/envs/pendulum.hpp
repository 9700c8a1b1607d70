#pragma once

#include "ipns/envs/environment.hpp"

namespace ipns::envs {

/// Torque-limited pendulum swing-up. theta = 0 is upright.
/// State (3): cos theta, sin theta, theta-dot. Reward
/// -(theta^2 + 0.1 theta-dot^2 + 0.001 u^2) with theta wrapped to [-pi, pi)
/// and u the applied torque.
class PendulumSwingup final : public Environment {
 public:
  struct Config {
    double max_torque = 2.0;
    double max_speed = 8.0;
    double gravity = 10.0;
    double mass = 1.0;
    double length = 1.0;
    double initial_angle_bound = 3.141592653589793;
    double initial_speed_bound = 1.0;
    int max_steps = 200;
  };

  PendulumSwingup() : PendulumSwingup(Config{}) {}
  explicit PendulumSwingup(Config config);

  const EnvSpec& spec() const override { return spec_; }
  Vector reset(RngStream& rng) override;
  StepResult step(const Vector& action, RngStream& rng) override;
  std::unique_ptr<Environment> clone() const override;

  double angle() const { return theta_; }
  double speed() const { return dtheta_; }
  void set_state(double theta, double dtheta);
  const Config& config() const { return config_; }

 private:
  Vector observation() const;

  Config config_;
  EnvSpec spec_;
  double theta_ = 0, dtheta_ = 0;
};

}  // namespace ipns::envs
