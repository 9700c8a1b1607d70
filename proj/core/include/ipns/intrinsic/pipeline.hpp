#pragma once

#include <cstdint>
#include <memory>

#include "ipns/intrinsic/ipns_config.hpp"
#include "ipns/intrinsic/scoring.hpp"

namespace ipns::intrinsic {

struct PipelineOptions {
  bool use_encoder = true;
  ScoreTerms terms;
};

struct PipelineStats {
  std::int64_t steps = 0;
  std::int64_t assigned = 0;    // transitions that carry a bonus
  std::int64_t unassigned = 0;  // sentinel: not ready, or withheld by epsilon
  std::int64_t first_assigned_step = 0;  // 0 until the first bonus
};

/// Per-step bonus generator: encode the state, append it to the buffer,
/// refresh the HVD on its cadence, score and normalize, then apply the
/// epsilon gate. Owns its buffer and random streams; the autoencoder is
/// shared read-only.
class IpnsPipeline {
 public:
  IpnsPipeline(const IpnsConfig& config, PipelineOptions options,
               std::shared_ptr<const Autoencoder> autoencoder, int state_dim, std::uint64_t seed);

  /// Intrinsic value to store with the transition leaving `state`
  /// (0 = unassigned).
  double process(const Vector& state, const agents::ValueNetwork& value);

  const EncodedStateBuffer& buffer() const { return buffer_; }
  const HvdTracker& hvd() const { return tracker_; }
  const PipelineStats& stats() const { return stats_; }
  const IpnsConfig& config() const { return config_; }
  const RngStream& bonus_rng() const { return bonus_rng_; }
  const RngStream& hvd_rng() const { return hvd_rng_; }

 private:
  IpnsConfig config_;
  PipelineOptions options_;
  std::shared_ptr<const Autoencoder> autoencoder_;
  StateCoder coder_;
  EncodedStateBuffer buffer_;
  HvdTracker tracker_;
  IrgParams irg_;
  RngStream bonus_rng_;
  RngStream hvd_rng_;
  PipelineStats stats_;
};

}  // namespace ipns::intrinsic
