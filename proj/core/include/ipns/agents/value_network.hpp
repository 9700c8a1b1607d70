#pragma once

#include <vector>

#include "ipns/agents/replay_buffer.hpp"
#include "ipns/numerics/adam.hpp"

namespace ipns::agents {

/// State-value network trained by TD(0) on extrinsic rewards, with a
/// soft-updated target copy for bootstrapping.
class ValueNetwork {
 public:
  ValueNetwork() = default;
  ValueNetwork(int state_dim, const std::vector<int>& hidden, const AdamConfig& adam,
               RngStream& rng);

  double value(const Vector& state) const;
  Vector values(const Matrix& states) const;

  /// delta_j = r_j + gamma (1 - done_j) Vtarget(s'_j) - V(s_j), extrinsic r.
  Vector td_errors(const Batch& batch, double gamma) const;

  /// One gradient step on mean delta^2, then target <- soft update.
  /// Returns the mean squared TD error measured before the step.
  double update(const Batch& batch, double gamma, double tau);

  MlpParams online;
  MlpParams target;
  AdamState adam;
};

}  // namespace ipns::agents
