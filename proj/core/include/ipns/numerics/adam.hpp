#pragma once

#include <cstdint>

#include "ipns/numerics/mlp.hpp"

namespace ipns {

struct AdamConfig {
  double learning_rate = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Moment accumulators for one network; shapes mirror the parameters.
struct AdamState {
  MlpParams first_moment;
  MlpParams second_moment;
  std::int64_t step = 0;
  double learning_rate = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState for_params(const MlpParams& params, const AdamConfig& config = {});

  friend bool operator==(const AdamState&, const AdamState&) = default;
};

/// One bias-corrected Adam step, in place. Throws ShapeError when the
/// gradient or state shapes disagree with the parameters.
void adam_step(MlpParams& params, const MlpGrads& grads, AdamState& state);

}  // namespace ipns
