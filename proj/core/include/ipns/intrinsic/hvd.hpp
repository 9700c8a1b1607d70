#pragma once

#include <cstdint>

#include "ipns/intrinsic/density.hpp"

namespace ipns::intrinsic {

/// Cached high-visitation-density point of the state buffer.
struct HvdEstimate {
  Vector point;
  std::size_t index = 0;  // buffer index of `point`
  std::int64_t computed_at_step = 0;
  bool valid = false;
};

struct HvdParams {
  int candidates = 5;  // J
  DensityParams density;
};

/// Draws min(J, n) distinct candidates uniformly (kept in buffer order),
/// scores each with density(), returns the best. Ties go to the earliest
/// candidate. Always computes; the result is stamped with step n.
HvdEstimate estimate_hvd_now(const EncodedStateBuffer& buffer, const HvdParams& params,
                             RngStream& rng);

/// Recomputes the HVD at n = M, 2M, 3M, ... and otherwise returns the cached
/// estimate. Invalid until n reaches M.
class HvdTracker {
 public:
  HvdTracker(int period, HvdParams params);

  /// Call once per appended point.
  const HvdEstimate& update(const EncodedStateBuffer& buffer, RngStream& rng);

  const HvdEstimate& current() const { return estimate_; }
  int period() const { return period_; }
  /// Number of density recomputations so far.
  std::int64_t recomputations() const { return recomputations_; }

 private:
  int period_;
  HvdParams params_;
  HvdEstimate estimate_;
  std::int64_t recomputations_ = 0;
};

}  // namespace ipns::intrinsic
