#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ipns/agents/agent_config.hpp"
#include "ipns/agents/replay_buffer.hpp"
#include "ipns/agents/value_network.hpp"
#include "ipns/envs/environment.hpp"
#include "ipns/numerics/adam.hpp"

namespace ipns::agents {

enum class ActMode { stochastic, deterministic };

struct UpdateReport {
  double critic_loss = 0.0;
  double actor_loss = 0.0;
  bool actor_updated = false;
};

/// A named network inside an agent, with its optimizer (null for targets).
struct ParamRef {
  std::string name;
  MlpParams* params = nullptr;
  AdamState* optimizer = nullptr;
};

/// Off-policy actor-critic agent. Owns every network of one learner,
/// including the V-network used for plausible-novelty scoring.
///
/// `beta` in update() is the intrinsic-reward weight: critic targets use
/// compose_reward per sample. The agent itself never draws from a random
/// stream other than the one handed to it.
class Agent {
 public:
  Agent(AgentConfig config, const envs::EnvSpec& spec, RngStream& init_rng);
  virtual ~Agent() = default;

  Agent(const Agent&) = default;
  Agent& operator=(const Agent&) = delete;

  const AgentConfig& config() const { return config_; }
  Algorithm algorithm() const { return config_.algorithm; }
  int state_dim() const { return state_dim_; }
  int action_dim() const { return action_dim_; }

  /// Action inside the env bounds. Throws DomainError for non-finite states.
  virtual Vector act(const Vector& state, ActMode mode, RngStream& rng) const = 0;

  /// One gradient step on the critic(s) and, when due, the actor, followed
  /// by target soft updates. Throws InsufficientDataError on an empty batch.
  virtual UpdateReport update(const Batch& batch, double beta, RngStream& rng) = 0;

  /// Regression targets the critics would be trained toward on this batch.
  virtual Vector critic_targets(const Batch& batch, double beta, RngStream& rng) const = 0;

  virtual std::unique_ptr<Agent> clone() const = 0;

  /// Actor, critics, targets and their optimizers; the V-network is not listed.
  virtual std::vector<ParamRef> primary_parameters() = 0;
  std::vector<ParamRef> all_parameters();

  ValueNetwork& value_network() { return value_; }
  const ValueNetwork& value_network() const { return value_; }
  /// TD step on the V-network with the agent's gamma and tau.
  double update_value(const Batch& batch);

  std::int64_t update_count() const { return updates_; }
  void set_update_count(std::int64_t n) { updates_ = n; }

  /// Hash of every primary network's parameters (V-network excluded).
  std::uint64_t primary_checksum() const;
  /// Hash including the V-network and all optimizer moments.
  std::uint64_t full_checksum() const;

 protected:
  /// Maps (-1, 1) policy outputs onto the action box.
  Matrix to_env_actions(const Matrix& squashed) const;
  Vector half_range() const { return (action_high_ - action_low_) / 2.0; }
  Vector center() const { return (action_high_ + action_low_) / 2.0; }
  Matrix clip_actions(Matrix a) const;
  static void check_batch(const Batch& batch);
  static void check_state(const Vector& state, int dim);

  AgentConfig config_;
  int state_dim_;
  int action_dim_;
  Vector action_low_;
  Vector action_high_;
  ValueNetwork value_;
  std::int64_t updates_ = 0;
};

/// Builds the agent named by config.algorithm, drawing initial weights from
/// `init_rng`.
std::unique_ptr<Agent> make_agent(const AgentConfig& config, const envs::EnvSpec& spec,
                                  RngStream& init_rng);

/// Soft actor-critic with a constant entropy coefficient. The intrinsic weight
/// also scales the entropy bonus: alpha' = (1 - beta) alpha.
class SacAgent final : public Agent {
 public:
  SacAgent(const AgentConfig& config, const envs::EnvSpec& spec, RngStream& init_rng);

  Vector act(const Vector& state, ActMode mode, RngStream& rng) const override;
  UpdateReport update(const Batch& batch, double beta, RngStream& rng) override;
  Vector critic_targets(const Batch& batch, double beta, RngStream& rng) const override;
  std::unique_ptr<Agent> clone() const override { return std::make_unique<SacAgent>(*this); }
  std::vector<ParamRef> primary_parameters() override;

  /// mean(alpha log pi(a~|s) - min(Q1, Q2)(s, a~)) for a fixed
  /// reparameterization noise [action_dim x batch]. Fills `grads` with the
  /// gradient with respect to the policy parameters when non-null.
  double actor_objective(const Matrix& states, const Matrix& noise, double alpha,
                         MlpGrads* grads) const;

  /// Policy log-std outputs are clamped to this range.
  static constexpr double kLogStdMin = -20.0;
  static constexpr double kLogStdMax = 2.0;

  MlpParams policy, q1, q2, q1_target, q2_target;
  AdamState policy_opt, q1_opt, q2_opt;
};

class DdpgAgent final : public Agent {
 public:
  DdpgAgent(const AgentConfig& config, const envs::EnvSpec& spec, RngStream& init_rng);

  Vector act(const Vector& state, ActMode mode, RngStream& rng) const override;
  UpdateReport update(const Batch& batch, double beta, RngStream& rng) override;
  Vector critic_targets(const Batch& batch, double beta, RngStream& rng) const override;
  std::unique_ptr<Agent> clone() const override { return std::make_unique<DdpgAgent>(*this); }
  std::vector<ParamRef> primary_parameters() override;

  MlpParams actor, critic, actor_target, critic_target;
  AdamState actor_opt, critic_opt;
};

/// TD3: clipped double-Q targets, target policy smoothing, delayed actor
/// and target updates.
class Td3Agent final : public Agent {
 public:
  Td3Agent(const AgentConfig& config, const envs::EnvSpec& spec, RngStream& init_rng);

  Vector act(const Vector& state, ActMode mode, RngStream& rng) const override;
  /// Uses update_count() + 1 as the update index.
  UpdateReport update(const Batch& batch, double beta, RngStream& rng) override;
  /// Actor and targets move only when `index` is a multiple of the policy
  /// delay; indices start at 1.
  UpdateReport update(const Batch& batch, double beta, std::int64_t index, RngStream& rng);
  Vector critic_targets(const Batch& batch, double beta, RngStream& rng) const override;
  std::unique_ptr<Agent> clone() const override { return std::make_unique<Td3Agent>(*this); }
  std::vector<ParamRef> primary_parameters() override;

  /// Target smoothing noise, clip(N(0, std), -clip, clip), scaled by the
  /// action half-range. Shape [action_dim x count].
  Matrix smoothing_noise(Eigen::Index count, RngStream& rng) const;

  MlpParams actor, q1, q2, actor_target, q1_target, q2_target;
  AdamState actor_opt, q1_opt, q2_opt;
};

}  // namespace ipns::agents
