#include "ipns/envs/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ipns::envs {
namespace {

double wrap_angle(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  double y = std::fmod(x + std::numbers::pi, two_pi);
  if (y < 0) y += two_pi;
  return y - std::numbers::pi;
}

}  // namespace

PendulumSwingup::PendulumSwingup(Config config) : config_(config) {
  spec_.name = "pendulum_swingup";
  spec_.state_dim = 3;
  spec_.action_dim = 1;
  spec_.action_low = Vector::Constant(1, -1.0);
  spec_.action_high = Vector::Constant(1, 1.0);
  spec_.max_steps = config_.max_steps;
  spec_.validate();
}

Vector PendulumSwingup::observation() const {
  Vector s(3);
  s << std::cos(theta_), std::sin(theta_), dtheta_;
  return s;
}

Vector PendulumSwingup::reset(RngStream& rng) {
  theta_ = rng.uniform(-config_.initial_angle_bound, config_.initial_angle_bound);
  dtheta_ = rng.uniform(-config_.initial_speed_bound, config_.initial_speed_bound);
  elapsed_ = 0;
  needs_reset_ = false;
  return observation();
}

StepResult PendulumSwingup::step(const Vector& action, RngStream& /*rng*/) {
  StepResult out;
  const Vector a = begin_step(action, out.action_clipped);
  const double u = config_.max_torque * a(0);
  const double th = wrap_angle(theta_);
  const double cost = th * th + 0.1 * dtheta_ * dtheta_ + 0.001 * u * u;

  const double g = config_.gravity, m = config_.mass, l = config_.length;
  dtheta_ += kDt * (3.0 * g / (2.0 * l) * std::sin(theta_) + 3.0 / (m * l * l) * u);
  dtheta_ = std::clamp(dtheta_, -config_.max_speed, config_.max_speed);
  theta_ = wrap_angle(theta_ + kDt * dtheta_);

  out.state = observation();
  out.reward = -cost;
  out.truncated = time_limit_reached();
  needs_reset_ = out.truncated;
  return out;
}

std::unique_ptr<Environment> PendulumSwingup::clone() const {
  return std::make_unique<PendulumSwingup>(*this);
}

void PendulumSwingup::set_state(double theta, double dtheta) {
  theta_ = theta;
  dtheta_ = dtheta;
  elapsed_ = 0;
  needs_reset_ = false;
}

}  // namespace ipns::envs
