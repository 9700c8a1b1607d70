#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ipns/agents/agent.hpp"
#include "ipns/agents/replay_buffer.hpp"
#include "ipns/agents/transition.hpp"
#include "ipns/envs/environment.hpp"
#include "ipns/harness/run_config.hpp"
#include "ipns/intrinsic/autoencoder.hpp"
#include "ipns/intrinsic/pipeline.hpp"

namespace ipns::harness {

/// Evaluation returns of one seed, one entry per training unit.
struct RunRecord {
  std::uint64_t seed = 0;
  int unit_steps = 0;
  std::vector<double> returns;  // R_u, mean over the evaluation episodes
  double wall_seconds = 0.0;
  std::string config_snapshot;
  std::map<std::string, std::uint64_t> rng_seeds;

  std::size_t units() const { return returns.size(); }
  std::int64_t step_of(std::size_t unit_index) const {
    return static_cast<std::int64_t>(unit_index + 1) * unit_steps;
  }
  bool same_curve(const RunRecord& other) const {
    return seed == other.seed && unit_steps == other.unit_steps && returns == other.returns;
  }
};

struct TrainStats {
  std::int64_t env_steps = 0;
  std::int64_t episodes = 0;
  std::int64_t updates = 0;
  std::int64_t value_updates = 0;
  std::int64_t evaluations = 0;
  std::int64_t encode_rollout_steps = 0;  // autoencoder data, outside the budget
};

using Policy = std::function<Vector(const Vector&)>;

/// Mean undiscounted return of `episodes` full episodes. The env is reset
/// from `rng`, which is the only stream drawn from.
double evaluate(const Policy& policy, envs::Environment& env, int episodes, RngStream& rng);
/// Deterministic actions of `agent`; the agent is not modified.
double evaluate(const agents::Agent& agent, envs::Environment& env, int episodes, RngStream& rng);

/// Autoencoder fitted on `config.ipns.n_encode` random-policy states of the
/// configured env. The rollout uses its own env instance and stream.
std::shared_ptr<const intrinsic::Autoencoder> pretrain_autoencoder(
    const RunConfig& config, std::uint64_t seed, intrinsic::AutoencoderReport* report = nullptr);

/// Loads config.autoencoder_path when set, otherwise pretrains with
/// config.autoencoder_seed. Returns null when the run needs no encoder.
std::shared_ptr<const intrinsic::Autoencoder> autoencoder_for(const RunConfig& config);

/// One seed of the collect / update loop.
class Trainer {
 public:
  /// Validates `config` before anything else. When the bonus needs an
  /// encoder and `autoencoder` is null, one is obtained via autoencoder_for.
  Trainer(const RunConfig& config, std::uint64_t seed,
          std::shared_ptr<const intrinsic::Autoencoder> autoencoder = nullptr);

  /// Runs the remaining steps and returns the record.
  RunRecord run();
  /// Advances one environment step, with the update and, at unit boundaries,
  /// the evaluation that follow it.
  void step();
  bool finished() const { return step_ >= config_.total_steps; }

  std::int64_t steps_done() const { return step_; }
  const RunConfig& config() const { return config_; }
  const RunRecord& record() const { return record_; }
  const TrainStats& stats() const { return stats_; }
  agents::Agent& agent() { return *agent_; }
  const agents::Agent& agent() const { return *agent_; }
  const agents::ReplayBuffer& replay() const { return replay_; }
  /// Null when the bonus is off.
  const intrinsic::IpnsPipeline* pipeline() const { return pipeline_ ? &*pipeline_ : nullptr; }
  const envs::Environment& env() const { return *env_; }
  /// Streams that drive training (not evaluation).
  std::vector<RngStream> training_rngs() const;
  const RngStream& eval_rng() const { return eval_rng_; }

  /// Called with every stored transition and its 1-based step index.
  std::function<void(const agents::Transition&, std::int64_t)> on_transition;

 private:
  void evaluate_unit();

  RunConfig config_;
  std::uint64_t seed_;
  std::unique_ptr<envs::Environment> env_;
  std::unique_ptr<envs::Environment> eval_env_;
  RngStream init_rng_, env_rng_, explore_rng_, policy_rng_, replay_rng_, update_rng_, eval_rng_;
  std::unique_ptr<agents::Agent> agent_;
  agents::ReplayBuffer replay_;
  std::optional<intrinsic::IpnsPipeline> pipeline_;
  Vector state_;
  std::int64_t step_ = 0;
  RunRecord record_;
  TrainStats stats_;
  std::chrono::steady_clock::duration elapsed_{};
};

/// Trainer(config, seed, autoencoder).run().
RunRecord train_run(const RunConfig& config, std::uint64_t seed,
                    std::shared_ptr<const intrinsic::Autoencoder> autoencoder = nullptr);

/// Uniform-random policy evaluated on the same schedule as train_run.
RunRecord random_policy_run(const RunConfig& config, std::uint64_t seed);

}  // namespace ipns::harness
