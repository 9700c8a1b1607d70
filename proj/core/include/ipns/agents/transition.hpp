#pragma once

#include "ipns/numerics/mlp.hpp"

namespace ipns::agents {

/// One environment step as stored in the replay buffer. The extrinsic
/// reward and the intrinsic bonus are kept apart and only combined when a
/// batch is used for an update.
struct Transition {
  Vector state;
  Vector action;
  double reward = 0.0;
  /// Intrinsic bonus in (0, 1]; 0 means no bonus was assigned.
  double intrinsic = 0.0;
  Vector next_state;
  bool done = false;

  bool has_intrinsic() const { return intrinsic > 0.0; }
};

/// (1 - beta) * r + beta * zeta when `usable`, else r.
double compose_reward(double reward, double intrinsic, double beta, bool usable);
double compose_reward(const Transition& t, double beta);

}  // namespace ipns::agents
