#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace ipns {

/// Named, seedable pseudo-random stream.
///
/// Every consumer of randomness (environment, exploration, replay sampling,
/// novelty perturbations, ...) owns its own stream, so switching one consumer
/// off never shifts the sequence another consumer sees. Two streams built
/// from the same (id, seed) pair produce identical draws.
class RngStream {
 public:
  RngStream() : RngStream("default", 0) {}
  RngStream(std::string id, std::uint64_t seed);

  const std::string& id() const { return id_; }
  std::uint64_t seed() const { return seed_; }
  /// Number of draws taken from this stream since construction.
  std::uint64_t draws() const { return draws_; }

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [low, high).
  double uniform(double low, double high);
  /// Standard normal.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  /// Direct access for std algorithms (std::shuffle, std::sample).
  /// Draws taken this way are not reflected in draws().
  std::mt19937_64& engine() { return engine_; }

  /// Full textual state (engine + cached normal + counter); round-trips exactly.
  std::string serialize() const;
  static RngStream deserialize(const std::string& text);

  friend bool operator==(const RngStream& a, const RngStream& b);

 private:
  std::string id_;
  std::uint64_t seed_ = 0;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Seed for a child stream derived from a run seed and a consumer name.
std::uint64_t derive_seed(std::uint64_t run_seed, std::string_view consumer);

}  // namespace ipns
