#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ipns/numerics/mlp.hpp"
#include "ipns/numerics/rng.hpp"

namespace ipns::envs {

/// Integration step shared by every built-in environment.
inline constexpr double kDt = 0.05;

struct EnvSpec {
  std::string name;
  int state_dim = 0;
  int action_dim = 0;
  Vector action_low;
  Vector action_high;
  int max_steps = 1;

  /// Throws ConfigError when the invariants (positive dims, low < high, T >= 1) fail.
  void validate() const;
};

struct StepResult {
  Vector state;
  double reward = 0.0;
  bool done = false;       // terminal condition
  bool truncated = false;  // time limit reached
  bool action_clipped = false;
};

/// Uniform reset/step interface. One instance is one episode stream and is
/// not thread-safe; clone() gives an independent copy with identical state.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const EnvSpec& spec() const = 0;
  virtual Vector reset(RngStream& rng) = 0;
  /// Clips the action to bounds, advances one step of size kDt. Throws
  /// DomainError on non-finite actions and std::logic_error when stepping a
  /// finished episode without reset.
  virtual StepResult step(const Vector& action, RngStream& rng) = 0;
  virtual std::unique_ptr<Environment> clone() const = 0;

  int elapsed_steps() const { return elapsed_; }

 protected:
  /// Validates and clips an action, advances the step counter.
  Vector begin_step(const Vector& action, bool& clipped);
  bool time_limit_reached() const { return elapsed_ >= spec().max_steps; }

  int elapsed_ = 0;
  bool needs_reset_ = true;
};

/// Names accepted by make_env.
std::vector<std::string> env_names();

/// planar_reacher, pendulum_swingup, point_mass_2d, point_mass_2d_sparse.
/// Throws ConfigError for unknown names.
std::unique_ptr<Environment> make_env(const std::string& name);

/// States visited by a uniform-random policy. Exactly `steps` entries: the
/// successor state of every step, resetting when an episode ends.
std::vector<Vector> env_random_rollout(Environment& env, int steps, RngStream& rng);

/// Uniform sample from the action box.
Vector random_action(const EnvSpec& spec, RngStream& rng);

}  // namespace ipns::envs
