#include "ipns/agents/agent.hpp"

#include "ipns/numerics/errors.hpp"

namespace ipns::agents {

Agent::Agent(AgentConfig config, const envs::EnvSpec& spec, RngStream& init_rng)
    : config_(std::move(config)),
      state_dim_(spec.state_dim),
      action_dim_(spec.action_dim),
      action_low_(spec.action_low),
      action_high_(spec.action_high) {
  config_.validate();
  spec.validate();
  AdamConfig adam;
  adam.learning_rate = config_.learning_rate;
  value_ = ValueNetwork(state_dim_, config_.resolved_value_hidden(), adam, init_rng);
}

std::vector<ParamRef> Agent::all_parameters() {
  auto refs = primary_parameters();
  refs.push_back({"value", &value_.online, &value_.adam});
  refs.push_back({"value_target", &value_.target, nullptr});
  return refs;
}

double Agent::update_value(const Batch& batch) {
  return value_.update(batch, config_.gamma, config_.tau);
}

std::uint64_t Agent::primary_checksum() const {
  std::uint64_t h = 0;
  for (const auto& r : const_cast<Agent*>(this)->primary_parameters())
    h = h * 0x9e3779b97f4a7c15ULL ^ checksum(*r.params);
  return h;
}

std::uint64_t Agent::full_checksum() const {
  std::uint64_t h = static_cast<std::uint64_t>(updates_);
  for (const auto& r : const_cast<Agent*>(this)->all_parameters()) {
    h = h * 0x9e3779b97f4a7c15ULL ^ checksum(*r.params);
    if (r.optimizer) {
      h = h * 0x9e3779b97f4a7c15ULL ^ checksum(r.optimizer->first_moment);
      h = h * 0x9e3779b97f4a7c15ULL ^ checksum(r.optimizer->second_moment);
      h ^= static_cast<std::uint64_t>(r.optimizer->step);
    }
  }
  return h;
}

Matrix Agent::to_env_actions(const Matrix& squashed) const {
  return (squashed.array().colwise() * half_range().array()).colwise() + center().array();
}

Matrix Agent::clip_actions(Matrix a) const {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    a.col(j) = a.col(j).cwiseMax(action_low_).cwiseMin(action_high_);
  return a;
}

void Agent::check_batch(const Batch& batch) {
  if (batch.size() < 1) throw InsufficientDataError("agent update: empty batch");
}

void Agent::check_state(const Vector& state, int dim) {
  if (state.size() != dim) throw ShapeError("agent: state dimension mismatch");
  if (!state.allFinite()) throw DomainError("agent: non-finite state");
}

std::unique_ptr<Agent> make_agent(const AgentConfig& config, const envs::EnvSpec& spec,
                                  RngStream& init_rng) {
  switch (config.algorithm) {
    case Algorithm::sac: return std::make_unique<SacAgent>(config, spec, init_rng);
    case Algorithm::ddpg: return std::make_unique<DdpgAgent>(config, spec, init_rng);
    case Algorithm::td3: return std::make_unique<Td3Agent>(config, spec, init_rng);
  }
  throw ConfigError("make_agent: unknown algorithm");
}

}  // namespace ipns::agents
