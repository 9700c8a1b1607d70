#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ipns/harness/comparison.hpp"

namespace ipns::harness {

/// Header `unit,step,seed,episodic_return`, one row per (seed, unit).
void write_curves_csv(const std::filesystem::path& path, std::span<const RunRecord> records);
/// Inverse of write_curves_csv; records come back in order of first
/// appearance. Throws FormatError on malformed input.
std::vector<RunRecord> read_curves_csv(const std::filesystem::path& path);

/// Header `unit,step,mean,std,smoothed_mean`.
void write_aggregate_csv(const std::filesystem::path& path, const Aggregate& agg, int window);

/// Resolved config as `key = value` lines (loadable with load_config_file),
/// preceded by '#' lines with the label and per-seed stream seeds.
void write_manifest(const std::filesystem::path& path, const RunConfig& config, const std::string& label,
                    std::span<const RunRecord> records);

/// curves.csv, aggregate.csv and manifest.txt under `dir`.
void write_variant(const std::filesystem::path& dir, const VariantResult& result);
/// One subdirectory per variant plus final.csv (`variant,final_mean,final_std,final_units`).
void write_comparison(const std::filesystem::path& dir, const ComparisonReport& report);

/// Re-aggregates every directory under `dir` (including `dir` itself) that
/// holds curves.csv and manifest.txt, rewrites their aggregate.csv and the
/// top-level final.csv, and returns the variants found.
std::vector<VariantResult> report_directory(const std::filesystem::path& dir);

}  // namespace ipns::harness
