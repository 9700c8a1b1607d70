#include "ipns/harness/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <fstream>
#include <functional>
#include <sstream>

#include "ipns/envs/environment.hpp"
#include "ipns/numerics/errors.hpp"

namespace ipns::harness {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string bad_value(std::string_view key, std::string_view value) {
  return "invalid value '" + std::string(value) + "' for '" + std::string(key) + "'";
}

template <class Int>
Int parse_integer(std::string_view key, std::string_view value) {
  value = trim(value);
  Int out{};
  if (value.empty()) throw ConfigError(bad_value(key, value));
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec == std::errc{} && ptr == value.data() + value.size()) return out;
  // accept integral reals such as 1e6
  const std::string text(value);
  char* end = nullptr;
  const double real = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || real != std::floor(real) ||
      real < static_cast<double>(std::numeric_limits<Int>::min()) ||
      real > static_cast<double>(std::numeric_limits<Int>::max()))
    throw ConfigError(bad_value(key, value));
  return static_cast<Int>(real);
}

double parse_real(std::string_view key, std::string_view value) {
  value = trim(value);
  const std::string text(value);
  char* end = nullptr;
  const double out = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) throw ConfigError(bad_value(key, value));
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  value = trim(value);
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  throw ConfigError(bad_value(key, value));
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Field {
  const char* name;
  std::vector<const char*> aliases;
  Setter set;
  Getter get;
};

template <class Int, class Member>
Field int_field(const char* name, std::vector<const char*> aliases, Member member) {
  return {name, std::move(aliases),
          [member](RunConfig& c, std::string_view k, std::string_view v) {
            std::invoke(member, c) = parse_integer<Int>(k, v);
          },
          [member](const RunConfig& c) {
            return std::to_string(std::invoke(member, const_cast<RunConfig&>(c)));
          }};
}

template <class Member>
Field real_field(const char* name, std::vector<const char*> aliases, Member member) {
  return {name, std::move(aliases),
          [member](RunConfig& c, std::string_view k, std::string_view v) {
            std::invoke(member, c) = parse_real(k, v);
          },
          [member](const RunConfig& c) {
            return format_real(std::invoke(member, const_cast<RunConfig&>(c)));
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"env", {"environment"},
                 [](RunConfig& c, std::string_view, std::string_view v) { c.env = trim(v); },
                 [](const RunConfig& c) { return c.env; }});
    f.push_back({"algo", {"algorithm"},
                 [](RunConfig& c, std::string_view, std::string_view v) {
                   c.agent.algorithm = agents::algorithm_from_string(trim(v));
                 },
                 [](const RunConfig& c) { return std::string(agents::to_string(c.agent.algorithm)); }});
    f.push_back({"ipns", {},
                 [](RunConfig& c, std::string_view k, std::string_view v) { c.ipns_enabled = parse_bool(k, v); },
                 [](const RunConfig& c) { return std::string(c.ipns_enabled ? "true" : "false"); }});
    f.push_back({"ablation", {},
                 [](RunConfig& c, std::string_view, std::string_view v) {
                   c.ablation = ablation_from_string(trim(v));
                 },
                 [](const RunConfig& c) { return std::string(to_string(c.ablation)); }});
    f.push_back(int_field<std::int64_t>("steps", {"total_steps", "N"}, [](RunConfig& c) -> auto& { return c.total_steps; }));
    f.push_back(int_field<int>("unit", {"unit_steps", "training_unit"}, [](RunConfig& c) -> auto& { return c.unit_steps; }));
    f.push_back(int_field<int>("eval_episodes", {}, [](RunConfig& c) -> auto& { return c.eval_episodes; }));
    f.push_back({"seeds", {},
                 [](RunConfig& c, std::string_view, std::string_view v) { c.seeds = parse_seed_list(v); },
                 [](const RunConfig& c) { return join(c.seeds); }});
    f.push_back(int_field<std::int64_t>("final_window_steps", {}, [](RunConfig& c) -> auto& { return c.final_window_steps; }));
    f.push_back(int_field<int>("smoothing_window", {}, [](RunConfig& c) -> auto& { return c.smoothing_window; }));
    f.push_back(int_field<int>("threads", {}, [](RunConfig& c) -> auto& { return c.threads; }));
    f.push_back({"autoencoder", {"ae_model"},
                 [](RunConfig& c, std::string_view, std::string_view v) { c.autoencoder_path = std::string(trim(v)); },
                 [](const RunConfig& c) { return c.autoencoder_path.string(); }});
    f.push_back(int_field<std::uint64_t>("autoencoder_seed", {"ae_seed"}, [](RunConfig& c) -> auto& { return c.autoencoder_seed; }));

    f.push_back(real_field("learning_rate", {"lr"}, [](RunConfig& c) -> auto& { return c.agent.learning_rate; }));
    f.push_back({"hidden", {"hidden_sizes"},
                 [](RunConfig& c, std::string_view, std::string_view v) { c.agent.hidden = parse_int_list(v); },
                 [](const RunConfig& c) { return join(c.agent.resolved_hidden()); }});
    f.push_back({"value_hidden", {},
                 [](RunConfig& c, std::string_view, std::string_view v) { c.agent.value_hidden = parse_int_list(v); },
                 [](const RunConfig& c) { return join(c.agent.resolved_value_hidden()); }});
    f.push_back(int_field<std::size_t>("replay_buffer_size", {"buffer_size", "replay_capacity"},
                                       [](RunConfig& c) -> auto& { return c.agent.replay_capacity; }));
    f.push_back(real_field("soft_update_factor", {"tau"}, [](RunConfig& c) -> auto& { return c.agent.tau; }));
    f.push_back(int_field<int>("batch_size", {"B"}, [](RunConfig& c) -> auto& { return c.agent.batch_size; }));
    f.push_back(real_field("discount_factor", {"gamma"}, [](RunConfig& c) -> auto& { return c.agent.gamma; }));
    f.push_back(real_field("alpha", {"entropy_coefficient"}, [](RunConfig& c) -> auto& { return c.agent.alpha; }));
    f.push_back(real_field("exploration_noise", {"action_noise"}, [](RunConfig& c) -> auto& { return c.agent.action_noise; }));
    f.push_back(real_field("policy_noise", {}, [](RunConfig& c) -> auto& { return c.agent.policy_noise; }));
    f.push_back(real_field("noise_clip", {}, [](RunConfig& c) -> auto& { return c.agent.noise_clip; }));
    f.push_back(int_field<int>("policy_delay", {"policy_update_frequency"}, [](RunConfig& c) -> auto& { return c.agent.policy_delay; }));
    f.push_back(int_field<int>("start_timesteps", {"start_steps"}, [](RunConfig& c) -> auto& { return c.agent.start_timesteps; }));

    f.push_back(int_field<int>("hvd_update_frequency", {"M", "ipns_m"}, [](RunConfig& c) -> auto& { return c.ipns.hvd_period; }));
    f.push_back(int_field<int>("irg_samples", {"K", "ipns_k"}, [](RunConfig& c) -> auto& { return c.ipns.irg_samples; }));
    f.push_back(int_field<int>("hvd_candidates", {"J", "ipns_j"}, [](RunConfig& c) -> auto& { return c.ipns.hvd_candidates; }));
    f.push_back(int_field<int>("hvd_minibatches", {"I", "ipns_i"}, [](RunConfig& c) -> auto& { return c.ipns.hvd_minibatches; }));
    f.push_back(real_field("minibatch_factor", {"wp", "ipns_wp"}, [](RunConfig& c) -> auto& { return c.ipns.minibatch_factor; }));
    f.push_back(real_field("weight_multiplier", {"c", "ipns_c"}, [](RunConfig& c) -> auto& { return c.ipns.weight_multiplier; }));
    f.push_back(real_field("beta", {}, [](RunConfig& c) -> auto& { return c.ipns.beta; }));
    f.push_back(real_field("epsilon", {}, [](RunConfig& c) -> auto& { return c.ipns.epsilon; }));
    f.push_back(int_field<int>("latent_dim", {"m_prime"}, [](RunConfig& c) -> auto& { return c.ipns.latent_dim; }));
    f.push_back(real_field("perturbation_scale", {}, [](RunConfig& c) -> auto& { return c.ipns.perturbation_scale; }));
    f.push_back(int_field<int>("n_encode", {"ae_steps"}, [](RunConfig& c) -> auto& { return c.ipns.n_encode; }));
    f.push_back(int_field<int>("ae_epochs", {}, [](RunConfig& c) -> auto& { return c.ipns.ae_epochs; }));
    f.push_back(int_field<int>("ae_batch_size", {}, [](RunConfig& c) -> auto& { return c.ipns.ae_batch_size; }));
    f.push_back(real_field("ae_learning_rate", {}, [](RunConfig& c) -> auto& { return c.ipns.ae_learning_rate; }));
    return f;
  }();
  return table;
}

}  // namespace

std::string_view to_string(AblationMode m) {
  switch (m) {
    case AblationMode::full: return "full";
    case AblationMode::sns_only: return "sns_only";
    case AblationMode::pns_only: return "pns_only";
    case AblationMode::sns_pns: return "sns_pns";
    case AblationMode::se_sns: return "se_sns";
    case AblationMode::none: return "none";
  }
  return "full";
}

AblationMode ablation_from_string(std::string_view name) {
  for (auto m : {AblationMode::full, AblationMode::sns_only, AblationMode::pns_only,
                 AblationMode::sns_pns, AblationMode::se_sns, AblationMode::none})
    if (name == to_string(m)) return m;
  throw ConfigError("unknown ablation mode '" + std::string(name) + "'");
}

int RunConfig::final_units() const {
  const std::int64_t u = units();
  const std::int64_t by_steps = std::max<std::int64_t>(1, final_window_steps / unit_steps);
  return static_cast<int>(std::min(u, by_steps));
}

intrinsic::PipelineOptions RunConfig::pipeline_options() const {
  intrinsic::PipelineOptions o;
  switch (ablation) {
    case AblationMode::full: o.use_encoder = true; o.terms = {true, true}; break;
    case AblationMode::sns_only: o.use_encoder = false; o.terms = {true, false}; break;
    case AblationMode::pns_only: o.use_encoder = false; o.terms = {false, true}; break;
    case AblationMode::sns_pns: o.use_encoder = false; o.terms = {true, true}; break;
    case AblationMode::se_sns: o.use_encoder = true; o.terms = {true, false}; break;
    case AblationMode::none: o.use_encoder = false; o.terms = {false, false}; break;
  }
  return o;
}

void RunConfig::validate() const {
  (void)envs::make_env(env);
  agent.validate();
  ipns.validate();
  if (unit_steps < 1) throw ConfigError("training-unit size must be >= 1");
  if (total_steps < unit_steps) throw ConfigError("total steps must cover at least one training unit");
  if (total_steps % unit_steps != 0)
    throw ConfigError("training-unit size must divide the total step count");
  if (eval_episodes < 1) throw ConfigError("eval episodes must be >= 1");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (final_window_steps < 1) throw ConfigError("final window must be >= 1 step");
  if (smoothing_window < 1 || smoothing_window % 2 == 0)
    throw ConfigError("smoothing window must be odd and >= 1");
  if (threads < 0) throw ConfigError("threads must be >= 0");
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  for (const Field& f : fields()) {
    bool match = key == f.name;
    for (const char* a : f.aliases) match = match || key == a;
    if (match) {
      f.set(config, key, value);
      return;
    }
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void parse_config_text(std::string_view text, RunConfig& config) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    try {
      apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void load_config_file(const std::filesystem::path& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    parse_config_text(ss.str(), config);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<std::pair<std::string, std::string>> config_settings(const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Field& f : fields()) out.emplace_back(f.name, f.get(config));
  return out;
}

std::string config_snapshot(const RunConfig& config) {
  std::string out;
  for (const auto& [k, v] : config_settings(config)) out += k + " = " + v + "\n";
  return out;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  for (int v : parse_int_list(text)) {
    if (v < 0) throw ConfigError("seeds must be non-negative");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  if (out.empty()) throw ConfigError("seed list is empty");
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  text = trim(text);
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_integer<int>("list", text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

}  // namespace ipns::harness
