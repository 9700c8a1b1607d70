#include "ipns/harness/comparison.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace ipns::harness {
namespace {

struct Job {
  const RunConfig* config;
  std::shared_ptr<const intrinsic::Autoencoder> autoencoder;
  std::uint64_t seed;
  RunRecord* out;
};

void run_jobs(std::vector<Job>& jobs, int threads) {
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(jobs.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        *jobs[i].out = train_run(*jobs[i].config, jobs[i].seed, jobs[i].autoencoder);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = jobs.size();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::string variant_label(const RunConfig& config) {
  std::string label(agents::to_string(config.agent.algorithm));
  if (config.bonus_active()) {
    label += "+ipns";
    if (config.ablation != AblationMode::full) label += "[" + std::string(to_string(config.ablation)) + "]";
  }
  return label;
}

std::vector<RunRecord> run_seeds(const RunConfig& config, std::span<const std::uint64_t> seeds,
                                 std::shared_ptr<const intrinsic::Autoencoder> autoencoder, int threads) {
  config.validate();
  if (!autoencoder) autoencoder = autoencoder_for(config);
  std::vector<RunRecord> records(seeds.size());
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < seeds.size(); ++i) jobs.push_back({&config, autoencoder, seeds[i], &records[i]});
  run_jobs(jobs, threads);
  return records;
}

ComparisonReport run_comparison(const RunConfig& base, std::span<const std::uint64_t> seeds) {
  ComparisonReport report;
  report.baseline.config = base;
  report.baseline.config.ipns_enabled = false;
  report.variant.config = base;
  report.variant.config.ipns_enabled = true;
  report.baseline.config.validate();
  report.variant.config.validate();
  report.baseline.label = variant_label(report.baseline.config);
  report.variant.label = variant_label(report.variant.config);

  const auto autoencoder = autoencoder_for(report.variant.config);
  report.baseline.records.resize(seeds.size());
  report.variant.records.resize(seeds.size());
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    jobs.push_back({&report.baseline.config, nullptr, seeds[i], &report.baseline.records[i]});
    jobs.push_back({&report.variant.config, autoencoder, seeds[i], &report.variant.records[i]});
  }
  run_jobs(jobs, base.threads);

  const int final_units = base.final_units();
  report.baseline.summary = aggregate(report.baseline.records, final_units);
  report.variant.summary = aggregate(report.variant.records, final_units);
  report.pooled_sigma = pooled_std(report.baseline.summary.seed_finals, report.variant.summary.seed_finals);
  for (std::size_t i = 0; i < seeds.size(); ++i)
    if (report.variant.summary.seed_finals[i] > report.baseline.summary.seed_finals[i]) ++report.variant_wins;
  return report;
}

std::string format_final_table(std::span<const VariantResult> variants) {
  std::string out = "variant                      R_f            std\n";
  char line[160];
  for (const VariantResult& v : variants) {
    std::snprintf(line, sizeof line, "%-24s %14.3f %14.3f\n", v.label.c_str(), v.summary.final_mean,
                  v.summary.final_std);
    out += line;
  }
  return out;
}

}  // namespace ipns::harness
