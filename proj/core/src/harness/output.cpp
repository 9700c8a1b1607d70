#include "ipns/harness/output.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "ipns/numerics/errors.hpp"

namespace ipns::harness {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  return out;
}

std::string read_label(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("# label: ", 0) == 0) return line.substr(9);
  return manifest.parent_path().filename().string();
}

}  // namespace

void write_curves_csv(const std::filesystem::path& path, std::span<const RunRecord> records) {
  auto out = open_out(path);
  out << "unit,step,seed,episodic_return\n";
  for (const RunRecord& r : records)
    for (std::size_t u = 0; u < r.units(); ++u)
      out << u + 1 << ',' << r.step_of(u) << ',' << r.seed << ',' << r.returns[u] << '\n';
}

std::vector<RunRecord> read_curves_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "unit,step,seed,episodic_return")
    throw FormatError(path.string() + ": unexpected header");
  std::vector<RunRecord> records;
  std::map<std::uint64_t, std::size_t> index;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    long long unit = 0, step = 0;
    unsigned long long seed = 0;
    double value = 0.0;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(row >> unit >> c1 >> step >> c2 >> seed >> c3 >> value) || c1 != ',' || c2 != ',' || c3 != ',')
      throw FormatError(path.string() + ": malformed row " + std::to_string(line_no));
    auto [it, inserted] = index.try_emplace(seed, records.size());
    if (inserted) {
      records.emplace_back();
      records.back().seed = seed;
      records.back().unit_steps = static_cast<int>(step / std::max(1LL, unit));
    }
    RunRecord& r = records[it->second];
    if (unit != static_cast<long long>(r.units()) + 1)
      throw FormatError(path.string() + ": units out of order at row " + std::to_string(line_no));
    r.returns.push_back(value);
  }
  return records;
}

void write_aggregate_csv(const std::filesystem::path& path, const Aggregate& agg, int window) {
  auto out = open_out(path);
  const auto smoothed = smooth(agg.mean, window);
  out << "unit,step,mean,std,smoothed_mean\n";
  for (std::size_t u = 0; u < agg.units(); ++u)
    out << u + 1 << ',' << static_cast<long long>(u + 1) * agg.unit_steps << ',' << agg.mean[u] << ','
        << agg.std[u] << ',' << smoothed[u] << '\n';
}

void write_manifest(const std::filesystem::path& path, const RunConfig& config, const std::string& label,
                    std::span<const RunRecord> records) {
  auto out = open_out(path);
  out << "# ipns run manifest\n";
  out << "# label: " << label << '\n';
  for (const RunRecord& r : records) {
    out << "# seed " << r.seed << " wall_seconds " << r.wall_seconds << " streams";
    for (const auto& [name, value] : r.rng_seeds) out << ' ' << name << '=' << value;
    out << '\n';
  }
  for (const auto& [key, value] : config_settings(config)) out << key << " = " << value << '\n';
}

void write_variant(const std::filesystem::path& dir, const VariantResult& result) {
  write_curves_csv(dir / "curves.csv", result.records);
  write_aggregate_csv(dir / "aggregate.csv", result.summary, result.config.smoothing_window);
  write_manifest(dir / "manifest.txt", result.config, result.label, result.records);
}

namespace {

void write_final_csv(const std::filesystem::path& path, std::span<const VariantResult> variants) {
  auto out = open_out(path);
  out << "variant,final_mean,final_std,final_units\n";
  for (const VariantResult& v : variants)
    out << v.label << ',' << v.summary.final_mean << ',' << v.summary.final_std << ',' << v.summary.final_units
        << '\n';
}

}  // namespace

void write_comparison(const std::filesystem::path& dir, const ComparisonReport& report) {
  write_variant(dir / report.baseline.label, report.baseline);
  write_variant(dir / report.variant.label, report.variant);
  const VariantResult both[] = {report.baseline, report.variant};
  write_final_csv(dir / "final.csv", both);
}

std::vector<VariantResult> report_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ConfigError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> found;
  if (std::filesystem::exists(dir / "curves.csv")) found.push_back(dir);
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir))
    if (entry.is_directory() && std::filesystem::exists(entry.path() / "curves.csv")) found.push_back(entry.path());
  std::sort(found.begin(), found.end());
  if (found.empty()) throw ConfigError("no curves.csv under " + dir.string());

  std::vector<VariantResult> variants;
  for (const auto& d : found) {
    VariantResult v;
    if (std::filesystem::exists(d / "manifest.txt")) {
      load_config_file(d / "manifest.txt", v.config);
      v.label = read_label(d / "manifest.txt");
    } else {
      v.label = d.filename().string();
    }
    v.records = read_curves_csv(d / "curves.csv");
    if (v.records.empty()) throw FormatError((d / "curves.csv").string() + ": no rows");
    const int units = static_cast<int>(v.records.front().units());
    const int unit_steps = v.records.front().unit_steps;
    const int final_units = static_cast<int>(
        std::clamp<std::int64_t>(v.config.final_window_steps / std::max(1, unit_steps), 1, units));
    v.summary = aggregate(v.records, final_units);
    write_aggregate_csv(d / "aggregate.csv", v.summary, v.config.smoothing_window);
    variants.push_back(std::move(v));
  }
  write_final_csv(dir / "final.csv", variants);
  return variants;
}

}  // namespace ipns::harness
