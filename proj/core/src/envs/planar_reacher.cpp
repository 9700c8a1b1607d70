#include "ipns/envs/planar_reacher.hpp"

#include <cmath>
#include <numbers>

namespace ipns::envs {

PlanarReacher::PlanarReacher(Config config) : config_(config) {
  spec_.name = "planar_reacher";
  spec_.state_dim = 10;
  spec_.action_dim = 2;
  spec_.action_low = Vector::Constant(2, -1.0);
  spec_.action_high = Vector::Constant(2, 1.0);
  spec_.max_steps = config_.max_steps;
  spec_.validate();
}

Eigen::Vector2d PlanarReacher::effector() const {
  return {config_.link1 * std::cos(q1_) + config_.link2 * std::cos(q1_ + q2_),
          config_.link1 * std::sin(q1_) + config_.link2 * std::sin(q1_ + q2_)};
}

Vector PlanarReacher::observation() const {
  const double s12 = std::sin(q1_ + q2_);
  const double c12 = std::cos(q1_ + q2_);
  const double l1 = config_.link1;
  const double l2 = config_.link2;
  const double vx = (-l1 * std::sin(q1_) - l2 * s12) * dq1_ - l2 * s12 * dq2_;
  const double vy = (l1 * std::cos(q1_) + l2 * c12) * dq1_ + l2 * c12 * dq2_;
  const Eigen::Vector2d d = effector() - target_;
  Vector s(10);
  s << std::cos(q1_), std::cos(q2_), std::sin(q1_), std::sin(q2_), target_.x(), target_.y(), vx, vy,
      d.x(), d.y();
  return s;
}

Vector PlanarReacher::reset(RngStream& rng) {
  const double noise = config_.initial_angle_noise;
  q1_ = rng.uniform(-noise, noise);
  q2_ = rng.uniform(-noise, noise);
  dq1_ = 0.0;
  dq2_ = 0.0;
  // uniform by area over the reachable annulus
  const double r_min = std::abs(config_.link1 - config_.link2);
  const double r_max = config_.link1 + config_.link2;
  const double r = std::sqrt(rng.uniform(r_min * r_min, r_max * r_max));
  const double phi = rng.uniform(-std::numbers::pi, std::numbers::pi);
  target_ = {r * std::cos(phi), r * std::sin(phi)};
  elapsed_ = 0;
  needs_reset_ = false;
  return observation();
}

StepResult PlanarReacher::step(const Vector& action, RngStream& /*rng*/) {
  StepResult out;
  const Vector a = begin_step(action, out.action_clipped);
  dq1_ += kDt * (config_.gain * a(0) - config_.damping * dq1_);
  dq2_ += kDt * (config_.gain * a(1) - config_.damping * dq2_);
  q1_ = std::remainder(q1_ + kDt * dq1_, 2.0 * std::numbers::pi);
  q2_ = std::remainder(q2_ + kDt * dq2_, 2.0 * std::numbers::pi);
  out.state = observation();
  out.reward = reward(effector() - target_, a);
  out.truncated = time_limit_reached();
  needs_reset_ = out.truncated;
  return out;
}

std::unique_ptr<Environment> PlanarReacher::clone() const {
  return std::make_unique<PlanarReacher>(*this);
}

void PlanarReacher::set_configuration(double q1, double q2, double dq1, double dq2,
                                      double target_x, double target_y) {
  q1_ = q1;
  q2_ = q2;
  dq1_ = dq1;
  dq2_ = dq2;
  target_ = {target_x, target_y};
  elapsed_ = 0;
  needs_reset_ = false;
}

double PlanarReacher::reward(const Eigen::Vector2d& displacement, const Vector& action) {
  return -displacement.squaredNorm() - action.squaredNorm();
}

}  // namespace ipns::envs
