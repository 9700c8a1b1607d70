#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ipns/harness/curves.hpp"
#include "ipns/harness/trainer.hpp"

namespace ipns::harness {

/// "sac", "sac+ipns", "td3+ipns[sns_only]", ...
std::string variant_label(const RunConfig& config);

/// One train_run per seed, spread over `threads` workers (0: hardware
/// concurrency). Records come back in seed order. The first worker
/// exception is rethrown after all workers stop.
std::vector<RunRecord> run_seeds(const RunConfig& config, std::span<const std::uint64_t> seeds,
                                 std::shared_ptr<const intrinsic::Autoencoder> autoencoder = nullptr,
                                 int threads = 0);

struct VariantResult {
  std::string label;
  RunConfig config;
  std::vector<RunRecord> records;
  Aggregate summary;
};

struct ComparisonReport {
  VariantResult baseline;
  VariantResult variant;
  double pooled_sigma = 0.0;  // pooled std of per-seed final-window returns
  int variant_wins = 0;       // seeds where the variant's final window beats the baseline's
};

/// Baseline (bonus off) against the configured bonus variant over the same
/// seeds. Both variants share one pretrained autoencoder and one worker pool.
ComparisonReport run_comparison(const RunConfig& base, std::span<const std::uint64_t> seeds);

/// Table rows "label  R_f  +- std" for the given variants.
std::string format_final_table(std::span<const VariantResult> variants);

}  // namespace ipns::harness
