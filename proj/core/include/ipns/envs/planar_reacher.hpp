#pragma once

#include "ipns/envs/environment.hpp"

namespace ipns::envs {

/// Two-link planar arm reaching a random target.
///
/// State (10): cos q1, cos q2, sin q1, sin q2, target x, target y,
/// effector velocity x, y, effector - target x, y.
/// Joint accelerations are gain * action - damping * joint velocity,
/// integrated with semi-implicit Euler. Reward is -|d|^2 - |a|^2 with d the
/// effector-target displacement after the step. Episodes last 50 steps.
class PlanarReacher final : public Environment {
 public:
  struct Config {
    double link1 = 0.1;
    double link2 = 0.11;
    double gain = 20.0;
    double damping = 2.0;
    double initial_angle_noise = 0.1;
    int max_steps = 50;
  };

  PlanarReacher() : PlanarReacher(Config{}) {}
  explicit PlanarReacher(Config config);

  const EnvSpec& spec() const override { return spec_; }
  Vector reset(RngStream& rng) override;
  StepResult step(const Vector& action, RngStream& rng) override;
  std::unique_ptr<Environment> clone() const override;

  /// Places the arm directly; the episode counter restarts at 0.
  void set_configuration(double q1, double q2, double dq1, double dq2, double target_x,
                         double target_y);
  /// Effector position for the current joint angles.
  Eigen::Vector2d effector() const;
  Vector observation() const;
  const Config& config() const { return config_; }

  /// -|displacement|^2 - |action|^2
  static double reward(const Eigen::Vector2d& displacement, const Vector& action);

 private:
  Config config_;
  EnvSpec spec_;
  double q1_ = 0, q2_ = 0, dq1_ = 0, dq2_ = 0;
  Eigen::Vector2d target_ = Eigen::Vector2d::Zero();
};

}  // namespace ipns::envs
