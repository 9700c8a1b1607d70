#include "ipns/envs/environment.hpp"

#include <stdexcept>

#include "ipns/envs/pendulum.hpp"
#include "ipns/envs/planar_reacher.hpp"
#include "ipns/envs/point_mass.hpp"
#include "ipns/numerics/errors.hpp"

namespace ipns::envs {

void EnvSpec::validate() const {
  if (state_dim < 1) throw ConfigError(name + ": state dimension must be >= 1");
  if (action_dim < 1) throw ConfigError(name + ": action dimension must be >= 1");
  if (action_low.size() != action_dim || action_high.size() != action_dim)
    throw ConfigError(name + ": action bounds do not match action dimension");
  if (((action_high - action_low).array() <= 0.0).any())
    throw ConfigError(name + ": action bounds need low < high");
  if (max_steps < 1) throw ConfigError(name + ": episode length must be >= 1");
}

Vector Environment::begin_step(const Vector& action, bool& clipped) {
  const EnvSpec& s = spec();
  if (needs_reset_) throw std::logic_error(s.name + ": step() called before reset()");
  if (action.size() != s.action_dim)
    throw ShapeError(s.name + ": action has " + std::to_string(action.size()) +
                     " entries, expected " + std::to_string(s.action_dim));
  if (!action.allFinite()) throw DomainError(s.name + ": non-finite action");
  Vector a = action.cwiseMax(s.action_low).cwiseMin(s.action_high);
  clipped = (a.array() != action.array()).any();
  ++elapsed_;
  return a;
}

std::vector<std::string> env_names() {
  return {"planar_reacher", "pendulum_swingup", "point_mass_2d", "point_mass_2d_sparse"};
}

std::unique_ptr<Environment> make_env(const std::string& name) {
  if (name == "planar_reacher") return std::make_unique<PlanarReacher>();
  if (name == "pendulum_swingup") return std::make_unique<PendulumSwingup>();
  if (name == "point_mass_2d") return std::make_unique<PointMass2d>();
  if (name == "point_mass_2d_sparse") {
    PointMass2d::Config c;
    c.sparse = true;
    return std::make_unique<PointMass2d>(c);
  }
  throw ConfigError("unknown environment '" + name + "'");
}

Vector random_action(const EnvSpec& spec, RngStream& rng) {
  Vector a(spec.action_dim);
  for (int i = 0; i < spec.action_dim; ++i) a(i) = rng.uniform(spec.action_low(i), spec.action_high(i));
  return a;
}

std::vector<Vector> env_random_rollout(Environment& env, int steps, RngStream& rng) {
  if (steps < 1) throw DomainError("env_random_rollout: steps must be >= 1");
  std::vector<Vector> states;
  states.reserve(static_cast<std::size_t>(steps));
  env.reset(rng);
  while (static_cast<int>(states.size()) < steps) {
    StepResult r = env.step(random_action(env.spec(), rng), rng);
    const bool finished = r.done || r.truncated;
    states.push_back(std::move(r.state));
    if (finished) env.reset(rng);
  }
  return states;
}

}  // namespace ipns::envs
