#include "ipns/harness/trainer.hpp"

#include "ipns/numerics/errors.hpp"

namespace ipns::harness {
namespace {

const RunConfig& validated(const RunConfig& config) {
  config.validate();
  return config;
}

RngStream stream(const char* name, std::uint64_t seed) { return RngStream(name, derive_seed(seed, name)); }

constexpr const char* kStreamNames[] = {"init", "env", "explore", "policy", "replay", "update", "eval",
                                        "ipns", "hvd"};

}  // namespace

double evaluate(const Policy& policy, envs::Environment& env, int episodes, RngStream& rng) {
  if (episodes < 1) throw ConfigError("evaluate: episodes must be >= 1");
  double total = 0.0;
  for (int e = 0; e < episodes; ++e) {
    Vector s = env.reset(rng);
    for (;;) {
      envs::StepResult r = env.step(policy(s), rng);
      total += r.reward;
      if (r.done || r.truncated) break;
      s = std::move(r.state);
    }
  }
  return total / episodes;
}

double evaluate(const agents::Agent& agent, envs::Environment& env, int episodes, RngStream& rng) {
  RngStream unused("eval-policy", 0);
  return evaluate([&](const Vector& s) { return agent.act(s, agents::ActMode::deterministic, unused); },
                  env, episodes, rng);
}

std::shared_ptr<const intrinsic::Autoencoder> pretrain_autoencoder(
    const RunConfig& config, std::uint64_t seed, intrinsic::AutoencoderReport* report) {
  auto env = envs::make_env(config.env);
  RngStream rollout_rng("ae-rollout", derive_seed(seed, "ae-rollout"));
  RngStream train_rng("ae", derive_seed(seed, "ae"));
  const auto states = envs::env_random_rollout(*env, config.ipns.n_encode, rollout_rng);
  intrinsic::AutoencoderTraining settings;
  settings.epochs = config.ipns.ae_epochs;
  settings.batch_size = config.ipns.ae_batch_size;
  settings.learning_rate = config.ipns.ae_learning_rate;
  return std::make_shared<const intrinsic::Autoencoder>(
      intrinsic::train_autoencoder(states, config.ipns.latent_dim, settings, train_rng, report));
}

std::shared_ptr<const intrinsic::Autoencoder> autoencoder_for(const RunConfig& config) {
  if (!config.bonus_active() || !config.pipeline_options().use_encoder) return nullptr;
  if (!config.autoencoder_path.empty())
    return std::make_shared<const intrinsic::Autoencoder>(intrinsic::load_autoencoder(config.autoencoder_path));
  return pretrain_autoencoder(config, config.autoencoder_seed);
}

Trainer::Trainer(const RunConfig& config, std::uint64_t seed,
                 std::shared_ptr<const intrinsic::Autoencoder> autoencoder)
    : config_(validated(config)),
      seed_(seed),
      env_(envs::make_env(config.env)),
      eval_env_(envs::make_env(config.env)),
      init_rng_(stream("init", seed)),
      env_rng_(stream("env", seed)),
      explore_rng_(stream("explore", seed)),
      policy_rng_(stream("policy", seed)),
      replay_rng_(stream("replay", seed)),
      update_rng_(stream("update", seed)),
      eval_rng_(stream("eval", seed)),
      agent_(agents::make_agent(config.agent, env_->spec(), init_rng_)),
      replay_(config.agent.replay_capacity, env_->spec().state_dim, env_->spec().action_dim) {
  const envs::EnvSpec& spec = env_->spec();
  if (config_.bonus_active()) {
    const auto options = config_.pipeline_options();
    if (options.use_encoder && !autoencoder) {
      autoencoder = autoencoder_for(config_);
      if (config_.autoencoder_path.empty()) stats_.encode_rollout_steps = config_.ipns.n_encode;
    }
    pipeline_.emplace(config_.ipns, options, std::move(autoencoder), spec.state_dim, seed);
  }
  record_.seed = seed;
  record_.unit_steps = config_.unit_steps;
  record_.config_snapshot = config_snapshot(config_);
  for (const char* name : kStreamNames) record_.rng_seeds[name] = derive_seed(seed, name);
  record_.returns.reserve(static_cast<std::size_t>(config_.units()));
  state_ = env_->reset(env_rng_);
}

void Trainer::step() {
  if (finished()) throw std::logic_error("Trainer::step: run already finished");
  const auto t0 = std::chrono::steady_clock::now();
  const envs::EnvSpec& spec = env_->spec();
  ++step_;

  Vector action = step_ <= config_.agent.start_timesteps
                      ? envs::random_action(spec, explore_rng_)
                      : agent_->act(state_, agents::ActMode::stochastic, policy_rng_);
  action = action.cwiseMax(spec.action_low).cwiseMin(spec.action_high);
  envs::StepResult result = env_->step(action, env_rng_);
  ++stats_.env_steps;

  agents::Transition t;
  t.intrinsic = pipeline_ ? pipeline_->process(state_, agent_->value_network()) : 0.0;
  t.state = state_;
  t.action = std::move(action);
  t.reward = result.reward;
  t.next_state = result.state;
  t.done = result.done;
  replay_.push(t);
  if (on_transition) on_transition(t, step_);

  const auto batch_size = static_cast<std::size_t>(config_.agent.batch_size);
  if (step_ >= config_.agent.start_timesteps && replay_.size() >= batch_size) {
    const agents::Batch batch = replay_.sample(batch_size, replay_rng_);
    agent_->update(batch, config_.effective_beta(), update_rng_);
    ++stats_.updates;
    if (pipeline_) {
      agent_->update_value(batch);
      ++stats_.value_updates;
    }
  }

  if (result.done || result.truncated) {
    ++stats_.episodes;
    state_ = env_->reset(env_rng_);
  } else {
    state_ = std::move(result.state);
  }

  if (step_ % config_.unit_steps == 0) evaluate_unit();
  elapsed_ += std::chrono::steady_clock::now() - t0;
}

void Trainer::evaluate_unit() {
  record_.returns.push_back(evaluate(*agent_, *eval_env_, config_.eval_episodes, eval_rng_));
  ++stats_.evaluations;
}

RunRecord Trainer::run() {
  while (!finished()) step();
  record_.wall_seconds = std::chrono::duration<double>(elapsed_).count();
  return record_;
}

std::vector<RngStream> Trainer::training_rngs() const {
  std::vector<RngStream> out{init_rng_, env_rng_, explore_rng_, policy_rng_, replay_rng_, update_rng_};
  if (pipeline_) {
    out.push_back(pipeline_->bonus_rng());
    out.push_back(pipeline_->hvd_rng());
  }
  return out;
}

RunRecord train_run(const RunConfig& config, std::uint64_t seed,
                    std::shared_ptr<const intrinsic::Autoencoder> autoencoder) {
  return Trainer(config, seed, std::move(autoencoder)).run();
}

RunRecord random_policy_run(const RunConfig& config, std::uint64_t seed) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  auto env = envs::make_env(config.env);
  RngStream eval_rng = stream("eval", seed);
  RngStream action_rng = stream("explore", seed);
  const envs::EnvSpec spec = env->spec();
  RunRecord record;
  record.seed = seed;
  record.unit_steps = config.unit_steps;
  record.config_snapshot = config_snapshot(config);
  record.rng_seeds["eval"] = eval_rng.seed();
  record.rng_seeds["explore"] = action_rng.seed();
  const Policy policy = [&](const Vector&) { return envs::random_action(spec, action_rng); };
  for (std::int64_t u = 0; u < config.units(); ++u)
    record.returns.push_back(evaluate(policy, *env, config.eval_episodes, eval_rng));
  record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return record;
}

}  // namespace ipns::harness
