#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ipns/agents/agent_config.hpp"
#include "ipns/intrinsic/ipns_config.hpp"
#include "ipns/intrinsic/pipeline.hpp"

namespace ipns::harness {

/// Which parts of the bonus are active. `full` is the complete method;
/// the others drop the encoder and/or one factor of the score.
enum class AblationMode { full, sns_only, pns_only, sns_pns, se_sns, none };

std::string_view to_string(AblationMode m);
AblationMode ablation_from_string(std::string_view name);

struct RunConfig {
  std::string env = "planar_reacher";
  agents::AgentConfig agent;
  intrinsic::IpnsConfig ipns;
  bool ipns_enabled = false;
  AblationMode ablation = AblationMode::full;

  std::int64_t total_steps = 200'000;
  int unit_steps = 2'000;
  int eval_episodes = 5;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::int64_t final_window_steps = 50'000;  // R_f averages the units covering these steps
  int smoothing_window = 11;
  int threads = 0;  // 0: one per hardware thread

  std::filesystem::path output_dir;
  std::filesystem::path autoencoder_path;  // empty: train one before the run
  std::uint64_t autoencoder_seed = 0;

  /// Throws ConfigError on any invalid field, including nested configs.
  void validate() const;

  std::int64_t units() const { return total_steps / unit_steps; }
  int final_units() const;
  /// IPNS is on and the ablation mode keeps at least one component.
  bool bonus_active() const { return ipns_enabled && ablation != AblationMode::none; }
  intrinsic::PipelineOptions pipeline_options() const;
  /// beta handed to the agent's update: the configured beta with an active
  /// bonus, 0 otherwise.
  double effective_beta() const { return bonus_active() ? ipns.beta : 0.0; }
};

/// Sets one `key = value` setting. Keys follow the hyperparameter names
/// (discount_factor, soft_update_factor, hvd_update_frequency, ...); short
/// aliases (gamma, tau, M, K, J, I, wp, c) are accepted. Throws ConfigError.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` text, one per line, '#' starts a comment.
void load_config_file(const std::filesystem::path& path, RunConfig& config);
void parse_config_text(std::string_view text, RunConfig& config);

/// Every setting with its resolved value, in canonical key order.
std::vector<std::pair<std::string, std::string>> config_settings(const RunConfig& config);
std::string config_snapshot(const RunConfig& config);

std::vector<std::uint64_t> parse_seed_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

}  // namespace ipns::harness
