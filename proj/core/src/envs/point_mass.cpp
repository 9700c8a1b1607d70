#include "ipns/envs/point_mass.hpp"

#include <cmath>
#include <numbers>

namespace ipns::envs {

PointMass2d::PointMass2d(Config config) : config_(std::move(config)) {
  spec_.name = config_.sparse ? "point_mass_2d_sparse" : "point_mass_2d";
  spec_.state_dim = 6;
  spec_.action_dim = 2;
  spec_.action_low = Vector::Constant(2, -1.0);
  spec_.action_high = Vector::Constant(2, 1.0);
  spec_.max_steps = config_.max_steps;
  spec_.validate();
}

Vector PointMass2d::observation() const {
  Vector s(6);
  s << position_.x(), position_.y(), velocity_.x(), velocity_.y(), goal_.x(), goal_.y();
  return s;
}

double PointMass2d::reward() const {
  const double dist = (position_ - goal_).norm();
  if (config_.sparse) return dist <= config_.goal_radius ? 1.0 : 0.0;
  return -dist;
}

Vector PointMass2d::reset(RngStream& rng) {
  const double n = config_.initial_noise;
  position_ = {rng.uniform(-n, n), rng.uniform(-n, n)};
  velocity_.setZero();
  if (config_.fixed_goal) {
    goal_ = *config_.fixed_goal;
  } else {
    const double phi = rng.uniform(-std::numbers::pi, std::numbers::pi);
    goal_ = config_.goal_distance * Eigen::Vector2d(std::cos(phi), std::sin(phi));
  }
  elapsed_ = 0;
  needs_reset_ = false;
  return observation();
}

StepResult PointMass2d::step(const Vector& action, RngStream& /*rng*/) {
  StepResult out;
  const Vector a = begin_step(action, out.action_clipped);
  velocity_ += kDt * (config_.gain * Eigen::Vector2d(a(0), a(1)) - config_.damping * velocity_);
  position_ += kDt * velocity_;
  // walls are inelastic
  for (int i = 0; i < 2; ++i) {
    if (std::abs(position_(i)) > 1.0) {
      position_(i) = std::copysign(1.0, position_(i));
      velocity_(i) = 0.0;
    }
  }
  out.state = observation();
  out.reward = reward();
  out.truncated = time_limit_reached();
  needs_reset_ = out.truncated;
  return out;
}

std::unique_ptr<Environment> PointMass2d::clone() const {
  return std::make_unique<PointMass2d>(*this);
}

}  // namespace ipns::envs
