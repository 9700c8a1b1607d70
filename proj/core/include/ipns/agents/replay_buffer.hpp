#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ipns/agents/transition.hpp"
#include "ipns/numerics/rng.hpp"

namespace ipns::agents {

/// Column-major minibatch: column j of every matrix belongs to sample j.
struct Batch {
  Matrix states;
  Matrix actions;
  Vector rewards;
  Vector intrinsic;  // 0 where unassigned
  Matrix next_states;
  Vector done;  // 1.0 at terminal transitions

  Eigen::Index size() const { return rewards.size(); }
  static Batch from(std::span<const Transition> transitions);
};

/// Rewards the critics regress on: compose_reward applied per sample.
Vector composed_rewards(const Batch& batch, double beta);

/// Fixed-capacity FIFO store of transitions with flat storage.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, int state_dim, int action_dim);

  void push(const Transition& t);
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  int state_dim() const { return state_dim_; }
  int action_dim() const { return action_dim_; }

  /// i = 0 is the oldest stored transition.
  Transition at(std::size_t i) const;

  /// `batch_size` transitions drawn uniformly with replacement. Throws
  /// InsufficientDataError when size() < batch_size.
  Batch sample(std::size_t batch_size, RngStream& rng) const;
  /// The indices sample() would draw (logical, oldest = 0).
  std::vector<std::size_t> sample_indices(std::size_t batch_size, RngStream& rng) const;
  Batch gather(std::span<const std::size_t> indices) const;

  std::uint64_t checksum() const;

 private:
  std::size_t physical(std::size_t logical) const;

  std::size_t capacity_;
  int state_dim_;
  int action_dim_;
  std::size_t stride_;
  std::size_t size_ = 0;
  std::size_t head_ = 0;  // next physical slot to write
  std::vector<double> data_;
};

}  // namespace ipns::agents
