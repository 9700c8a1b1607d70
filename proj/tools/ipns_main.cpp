// ipns: train, compare and summarize runs with the plausible-novelty bonus.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ipns/harness/comparison.hpp"
#include "ipns/harness/output.hpp"
#include "ipns/harness/run_config.hpp"
#include "ipns/harness/trainer.hpp"
#include "ipns/numerics/errors.hpp"

namespace {

namespace fs = std::filesystem;
using ipns::harness::RunConfig;

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

/// Flags that map onto config keys. Values given on the command line are
/// applied after the config file.
struct Overrides {
  std::vector<std::pair<std::string, std::unique_ptr<std::string>>> slots;
  bool ipns = false;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    slots.emplace_back(key, std::make_unique<std::string>());
    app->add_option(flag, *slots.back().second, help);
  }

  void apply(RunConfig& config) const {
    for (const auto& [key, slot] : slots)
      if (!slot->empty()) ipns::harness::apply_setting(config, key, *slot);
    if (ipns) config.ipns_enabled = true;
  }
};

void add_run_flags(CLI::App* app, Overrides& o) {
  o.add(app, "--env", "env", "environment name");
  o.add(app, "--algo", "algo", "sac, ddpg or td3");
  o.add(app, "--ablation", "ablation", "full, sns_only, pns_only, sns_pns, se_sns or none");
  o.add(app, "--steps", "steps", "total environment steps N");
  o.add(app, "--unit", "unit", "training-unit size");
  o.add(app, "--seeds", "seeds", "comma-separated seed list");
  o.add(app, "--eval-episodes", "eval_episodes", "episodes per evaluation");
  o.add(app, "--hidden", "hidden", "actor/critic hidden widths, e.g. 256,256");
  o.add(app, "--value-hidden", "value_hidden", "V-network hidden widths");
  o.add(app, "--threads", "threads", "worker threads (0 = all cores)");
  o.add(app, "--autoencoder", "autoencoder", "pretrained autoencoder file");
  o.add(app, "--ipns-m", "hvd_update_frequency", "HVD update frequency M");
  o.add(app, "--ipns-k", "irg_samples", "IRG samples K");
  o.add(app, "--ipns-j", "hvd_candidates", "HVD candidates J");
  o.add(app, "--ipns-i", "hvd_minibatches", "HVD minibatches I");
  o.add(app, "--ipns-wp", "minibatch_factor", "minibatch factor (percent)");
  o.add(app, "--ipns-c", "weight_multiplier", "weight multiplier c");
  o.add(app, "--beta", "beta", "intrinsic weight beta");
  o.add(app, "--epsilon", "epsilon", "bonus withholding probability");
  o.add(app, "--latent-dim", "latent_dim", "latent dimension m'");
}

RunConfig resolve(const std::string& config_path, const Overrides& o) {
  RunConfig config;
  if (!config_path.empty()) ipns::harness::load_config_file(config_path, config);
  o.apply(config);
  config.validate();
  return config;
}

void print_summary(const ipns::harness::VariantResult& v) {
  std::printf("%s: %zu seeds x %zu units, R_f = %.3f (std %.3f over last %d units)\n", v.label.c_str(),
              v.records.size(), v.summary.units(), v.summary.final_mean, v.summary.final_std,
              v.summary.final_units);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plausible-novelty intrinsic reward for off-policy actor-critic agents"};
  app.require_subcommand(1);

  std::string config_path, out_dir, in_dir;

  Overrides train_o;
  auto* train = app.add_subcommand("train", "train one variant over a seed set");
  train->add_option("--config", config_path, "config file (key = value)");
  train->add_option("--out", out_dir, "output directory")->required();
  train->add_flag("--ipns", train_o.ipns, "enable the intrinsic bonus");
  add_run_flags(train, train_o);

  Overrides compare_o;
  auto* compare = app.add_subcommand("compare", "baseline against the bonus variant on the same seeds");
  compare->add_option("--config", config_path, "config file (key = value)");
  compare->add_option("--out", out_dir, "output directory")->required();
  add_run_flags(compare, compare_o);

  std::string ae_env = "planar_reacher", ae_out;
  int ae_steps = 10000, ae_latent = 5, ae_epochs = 200;
  std::uint64_t ae_seed = 0;
  auto* pretrain = app.add_subcommand("pretrain-ae", "fit the state autoencoder on random-policy states");
  pretrain->add_option("--env", ae_env, "environment name");
  pretrain->add_option("--steps", ae_steps, "random-policy steps (N_encode)");
  pretrain->add_option("--latent-dim", ae_latent, "latent dimension m'");
  pretrain->add_option("--epochs", ae_epochs, "training epochs");
  pretrain->add_option("--seed", ae_seed, "seed");
  pretrain->add_option("--out", ae_out, "model file")->required();

  auto* report = app.add_subcommand("report", "re-aggregate curves and print the R_f table");
  report->add_option("--in", in_dir, "directory written by train or compare")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*train) {
      const RunConfig config = resolve(config_path, train_o);
      ipns::harness::VariantResult v;
      v.config = config;
      v.label = ipns::harness::variant_label(config);
      v.records = ipns::harness::run_seeds(config, config.seeds, nullptr, config.threads);
      v.summary = ipns::harness::aggregate(v.records, config.final_units());
      ipns::harness::write_variant(out_dir, v);
      print_summary(v);
    } else if (*compare) {
      const RunConfig config = resolve(config_path, compare_o);
      const auto r = ipns::harness::run_comparison(config, config.seeds);
      ipns::harness::write_comparison(out_dir, r);
      const ipns::harness::VariantResult both[] = {r.baseline, r.variant};
      std::cout << ipns::harness::format_final_table(both);
      std::printf("pooled sigma %.3f, variant ahead on %d of %zu seeds\n", r.pooled_sigma, r.variant_wins,
                  config.seeds.size());
    } else if (*pretrain) {
      RunConfig config;
      config.env = ae_env;
      config.ipns.n_encode = ae_steps;
      config.ipns.latent_dim = ae_latent;
      config.ipns.ae_epochs = ae_epochs;
      config.validate();
      ipns::intrinsic::AutoencoderReport rep;
      const auto ae = ipns::harness::pretrain_autoencoder(config, ae_seed, &rep);
      ipns::intrinsic::save_autoencoder(fs::path(ae_out), *ae);
      std::printf("reconstruction mse %.6g (%s 0.01)\n", rep.final_mse, rep.reached_target ? "<=" : ">");
    } else if (*report) {
      const auto variants = ipns::harness::report_directory(in_dir);
      std::cout << ipns::harness::format_final_table(variants);
    }
  } catch (const ipns::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
