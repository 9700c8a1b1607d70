#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ipns::agents {

enum class Algorithm { sac, ddpg, td3 };

std::string_view to_string(Algorithm a);
/// Throws ConfigError for anything but sac, ddpg, td3.
Algorithm algorithm_from_string(std::string_view name);

struct AgentConfig {
  Algorithm algorithm = Algorithm::sac;
  double gamma = 0.99;
  double tau = 1e-2;
  int batch_size = 100;
  double learning_rate = 3e-4;
  double alpha = 0.2;          // SAC entropy coefficient, constant
  double action_noise = 0.1;   // DDPG exploration noise, fraction of half-range
  double policy_noise = 0.2;   // TD3 target smoothing std
  double noise_clip = 0.5;     // TD3 smoothing clip
  int policy_delay = 2;        // TD3
  int start_timesteps = 1000;  // uniform-random actions before this many steps
  std::size_t replay_capacity = 1'000'000;
  /// Hidden widths of actor and critics. Empty selects the algorithm default
  /// (256,256 for SAC and TD3; 400,300 for DDPG).
  std::vector<int> hidden;
  /// Hidden widths of the V-network. Empty selects 256,256.
  std::vector<int> value_hidden;

  std::vector<int> resolved_hidden() const;
  std::vector<int> resolved_value_hidden() const;

  /// Throws ConfigError unless gamma in (0,1), tau in (0,1], batch >= 1, ...
  void validate() const;
};

}  // namespace ipns::agents
