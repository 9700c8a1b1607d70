#pragma once

#include <optional>

#include "ipns/envs/environment.hpp"

namespace ipns::envs {

/// 2D double integrator in the box [-1, 1]^2 driven toward a goal.
/// State (6): position x, y, velocity x, y, goal x, y.
/// Dense reward: -|position - goal|. Sparse reward: 1 inside the goal
/// radius, else 0.
class PointMass2d final : public Environment {
 public:
  struct Config {
    bool sparse = false;
    double gain = 2.0;
    double damping = 1.0;
    double initial_noise = 0.1;
    double goal_distance = 0.8;  // random goals lie on this circle around the origin
    std::optional<Eigen::Vector2d> fixed_goal;
    double goal_radius = 0.1;
    int max_steps = 100;
  };

  PointMass2d() : PointMass2d(Config{}) {}
  explicit PointMass2d(Config config);

  const EnvSpec& spec() const override { return spec_; }
  Vector reset(RngStream& rng) override;
  StepResult step(const Vector& action, RngStream& rng) override;
  std::unique_ptr<Environment> clone() const override;

  const Eigen::Vector2d& position() const { return position_; }
  const Eigen::Vector2d& goal() const { return goal_; }
  const Config& config() const { return config_; }

 private:
  Vector observation() const;
  double reward() const;

  Config config_;
  EnvSpec spec_;
  Eigen::Vector2d position_ = Eigen::Vector2d::Zero();
  Eigen::Vector2d velocity_ = Eigen::Vector2d::Zero();
  Eigen::Vector2d goal_ = Eigen::Vector2d::Zero();
};

}  // namespace ipns::envs
