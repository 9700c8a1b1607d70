#include "ipns/intrinsic/hvd.hpp"

#include <algorithm>
#include <numeric>

#include "ipns/numerics/errors.hpp"

namespace ipns::intrinsic {

HvdEstimate estimate_hvd_now(const EncodedStateBuffer& buffer, const HvdParams& params,
                             RngStream& rng) {
  if (buffer.empty()) throw DomainError("estimate_hvd: empty buffer");
  if (params.candidates < 1) throw DomainError("estimate_hvd: need at least one candidate");
  const std::size_t n = buffer.size();
  const std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(params.candidates), n);

  std::vector<std::size_t> candidates;
  candidates.reserve(j);
  if (j == n) {
    candidates.resize(n);
    std::iota(candidates.begin(), candidates.end(), std::size_t{0});
  } else {
    // selection sampling: distinct, uniformly chosen, in ascending order
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::sample(all.begin(), all.end(), std::back_inserter(candidates), j, rng.engine());
  }

  HvdEstimate best;
  double best_density = -1.0;
  for (std::size_t c : candidates) {
    const Vector z = buffer.point(c);
    const double d = density(z, buffer, params.density, rng);
    if (d > best_density) {
      best_density = d;
      best.point = z;
      best.index = c;
    }
  }
  best.valid = true;
  best.computed_at_step = static_cast<std::int64_t>(n);
  return best;
}

HvdTracker::HvdTracker(int period, HvdParams params) : period_(period), params_(params) {
  if (period < 1) throw ConfigError("HvdTracker: period must be >= 1");
}

const HvdEstimate& HvdTracker::update(const EncodedStateBuffer& buffer, RngStream& rng) {
  const auto n = static_cast<std::int64_t>(buffer.size());
  if (n >= period_ && n % period_ == 0 && n != estimate_.computed_at_step) {
    estimate_ = estimate_hvd_now(buffer, params_, rng);
    ++recomputations_;
  }
  return estimate_;
}

}  // namespace ipns::intrinsic
