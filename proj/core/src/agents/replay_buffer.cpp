#include "ipns/agents/replay_buffer.hpp"

#include <string>

#include "ipns/numerics/errors.hpp"

namespace ipns::agents {

double compose_reward(double reward, double intrinsic, double beta, bool usable) {
  if (!usable || beta == 0.0) return reward;
  return (1.0 - beta) * reward + beta * intrinsic;
}

double compose_reward(const Transition& t, double beta) {
  return compose_reward(t.reward, t.intrinsic, beta, t.has_intrinsic());
}

Batch Batch::from(std::span<const Transition> transitions) {
  Batch b;
  const auto n = static_cast<Eigen::Index>(transitions.size());
  if (n == 0) return b;
  const auto m = transitions.front().state.size();
  const auto a = transitions.front().action.size();
  b.states.resize(m, n);
  b.actions.resize(a, n);
  b.next_states.resize(m, n);
  b.rewards.resize(n);
  b.intrinsic.resize(n);
  b.done.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Transition& t = transitions[static_cast<std::size_t>(j)];
    if (t.state.size() != m || t.next_state.size() != m || t.action.size() != a)
      throw ShapeError("Batch::from: inconsistent transition shapes");
    b.states.col(j) = t.state;
    b.actions.col(j) = t.action;
    b.next_states.col(j) = t.next_state;
    b.rewards(j) = t.reward;
    b.intrinsic(j) = t.intrinsic;
    b.done(j) = t.done ? 1.0 : 0.0;
  }
  return b;
}

Vector composed_rewards(const Batch& batch, double beta) {
  Vector r(batch.size());
  for (Eigen::Index j = 0; j < batch.size(); ++j)
    r(j) = compose_reward(batch.rewards(j), batch.intrinsic(j), beta, batch.intrinsic(j) > 0.0);
  return r;
}

// Layout per slot: state | action | next_state | reward | intrinsic | done
ReplayBuffer::ReplayBuffer(std::size_t capacity, int state_dim, int action_dim)
    : capacity_(capacity),
      state_dim_(state_dim),
      action_dim_(action_dim),
      stride_(static_cast<std::size_t>(2 * state_dim + action_dim + 3)) {
  if (capacity == 0) throw ConfigError("ReplayBuffer: capacity must be >= 1");
  if (state_dim < 1 || action_dim < 1) throw ShapeError("ReplayBuffer: dimensions must be >= 1");
}

std::size_t ReplayBuffer::physical(std::size_t logical) const {
  if (size_ < capacity_) return logical;
  return (head_ + logical) % capacity_;
}

void ReplayBuffer::push(const Transition& t) {
  if (t.state.size() != state_dim_ || t.next_state.size() != state_dim_ ||
      t.action.size() != action_dim_)
    throw ShapeError("ReplayBuffer::push: transition shape mismatch");
  if (data_.size() < capacity_ * stride_ && head_ * stride_ >= data_.size())
    data_.resize(data_.size() + stride_);
  double* slot = data_.data() + head_ * stride_;
  Eigen::Map<Vector>(slot, state_dim_) = t.state;
  slot += state_dim_;
  Eigen::Map<Vector>(slot, action_dim_) = t.action;
  slot += action_dim_;
  Eigen::Map<Vector>(slot, state_dim_) = t.next_state;
  slot += state_dim_;
  slot[0] = t.reward;
  slot[1] = t.intrinsic;
  slot[2] = t.done ? 1.0 : 0.0;
  head_ = (head_ + 1) % capacity_;
  if (size_ < capacity_) ++size_;
}

Transition ReplayBuffer::at(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("ReplayBuffer::at: index " + std::to_string(i));
  const double* slot = data_.data() + physical(i) * stride_;
  Transition t;
  t.state = Eigen::Map<const Vector>(slot, state_dim_);
  slot += state_dim_;
  t.action = Eigen::Map<const Vector>(slot, action_dim_);
  slot += action_dim_;
  t.next_state = Eigen::Map<const Vector>(slot, state_dim_);
  slot += state_dim_;
  t.reward = slot[0];
  t.intrinsic = slot[1];
  t.done = slot[2] != 0.0;
  return t;
}

std::vector<std::size_t> ReplayBuffer::sample_indices(std::size_t batch_size,
                                                      RngStream& rng) const {
  if (size_ < batch_size || batch_size == 0)
    throw InsufficientDataError("ReplayBuffer::sample: need " + std::to_string(batch_size) +
                                " transitions, have " + std::to_string(size_));
  std::vector<std::size_t> idx(batch_size);
  for (auto& i : idx) i = rng.index(size_);
  return idx;
}

Batch ReplayBuffer::gather(std::span<const std::size_t> indices) const {
  const auto n = static_cast<Eigen::Index>(indices.size());
  Batch b;
  b.states.resize(state_dim_, n);
  b.actions.resize(action_dim_, n);
  b.next_states.resize(state_dim_, n);
  b.rewards.resize(n);
  b.intrinsic.resize(n);
  b.done.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::size_t i = indices[static_cast<std::size_t>(j)];
    if (i >= size_) throw std::out_of_range("ReplayBuffer::gather: index out of range");
    const double* slot = data_.data() + physical(i) * stride_;
    b.states.col(j) = Eigen::Map<const Vector>(slot, state_dim_);
    slot += state_dim_;
    b.actions.col(j) = Eigen::Map<const Vector>(slot, action_dim_);
    slot += action_dim_;
    b.next_states.col(j) = Eigen::Map<const Vector>(slot, state_dim_);
    slot += state_dim_;
    b.rewards(j) = slot[0];
    b.intrinsic(j) = slot[1];
    b.done(j) = slot[2];
  }
  return b;
}

Batch ReplayBuffer::sample(std::size_t batch_size, RngStream& rng) const {
  const auto idx = sample_indices(batch_size, rng);
  return gather(idx);
}

std::uint64_t ReplayBuffer::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ size_ ^ (head_ << 32);
  const auto* bytes = reinterpret_cast<const unsigned char*>(data_.data());
  for (std::size_t i = 0; i < data_.size() * sizeof(double); ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ipns::agents
