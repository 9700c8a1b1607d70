#include "ipns/agents/agent_config.hpp"

#include "ipns/numerics/errors.hpp"

namespace ipns::agents {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::sac: return "sac";
    case Algorithm::ddpg: return "ddpg";
    case Algorithm::td3: return "td3";
  }
  return "sac";
}

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "sac") return Algorithm::sac;
  if (name == "ddpg") return Algorithm::ddpg;
  if (name == "td3") return Algorithm::td3;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected sac, ddpg or td3)");
}

std::vector<int> AgentConfig::resolved_hidden() const {
  if (!hidden.empty()) return hidden;
  if (algorithm == Algorithm::ddpg) return {400, 300};
  return {256, 256};
}

std::vector<int> AgentConfig::resolved_value_hidden() const {
  if (!value_hidden.empty()) return value_hidden;
  return {256, 256};
}

void AgentConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in (0, 1]");
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (!(alpha >= 0.0)) throw ConfigError("alpha must be >= 0");
  if (!(action_noise >= 0.0)) throw ConfigError("action noise must be >= 0");
  if (!(policy_noise >= 0.0) || !(noise_clip >= 0.0))
    throw ConfigError("policy noise and noise clip must be >= 0");
  if (policy_delay < 1) throw ConfigError("policy delay must be >= 1");
  if (start_timesteps < 0) throw ConfigError("start timesteps must be >= 0");
  if (replay_capacity < static_cast<std::size_t>(batch_size))
    throw ConfigError("replay capacity must be at least the batch size");
  for (int h : resolved_hidden())
    if (h < 1) throw ConfigError("hidden widths must be positive");
  for (int h : resolved_value_hidden())
    if (h < 1) throw ConfigError("value hidden widths must be positive");
}

}  // namespace ipns::agents
