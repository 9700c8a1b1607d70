#include "ipns/harness/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ipns/numerics/errors.hpp"

namespace ipns::harness {

std::vector<double> smooth(std::span<const double> curve, int window) {
  if (window < 1 || window % 2 == 0) throw ConfigError("smooth: window must be odd and >= 1");
  const auto n = static_cast<std::ptrdiff_t>(curve.size());
  const std::ptrdiff_t half = window / 2;
  std::vector<double> out(curve.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t k = std::min({half, i, n - 1 - i});
    double sum = 0.0;
    for (std::ptrdiff_t j = i - k; j <= i + k; ++j) sum += curve[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = sum / static_cast<double>(2 * k + 1);
  }
  return out;
}

double final_window_mean(std::span<const double> curve, int final_units) {
  if (final_units < 1 || static_cast<std::size_t>(final_units) > curve.size())
    throw ConfigError("final window must cover between 1 and U units");
  const auto tail = curve.last(static_cast<std::size_t>(final_units));
  return std::accumulate(tail.begin(), tail.end(), 0.0) / final_units;
}

double population_std(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / n);
}

double pooled_std(std::span<const double> a, std::span<const double> b) {
  const double sa = population_std(a);
  const double sb = population_std(b);
  return std::sqrt((sa * sa + sb * sb) / 2.0);
}

Aggregate aggregate(std::span<const RunRecord> records, int final_units) {
  if (records.empty()) throw ConfigError("aggregate: no records");
  const std::size_t units = records.front().units();
  for (const RunRecord& r : records) {
    if (r.units() != units) throw ConfigError("aggregate: records have different unit counts");
    if (r.unit_steps != records.front().unit_steps)
      throw ConfigError("aggregate: records have different unit sizes");
  }
  if (units == 0) throw ConfigError("aggregate: records are empty");

  Aggregate agg;
  agg.unit_steps = records.front().unit_steps;
  agg.final_units = final_units;
  agg.mean.resize(units);
  agg.std.resize(units);
  std::vector<double> column(records.size());
  for (std::size_t u = 0; u < units; ++u) {
    for (std::size_t s = 0; s < records.size(); ++s) column[s] = records[s].returns[u];
    std::sort(column.begin(), column.end());
    agg.mean[u] = std::accumulate(column.begin(), column.end(), 0.0) / static_cast<double>(column.size());
    agg.std[u] = population_std(column);
  }
  agg.final_mean = final_window_mean(agg.mean, final_units);
  agg.final_std = final_window_mean(agg.std, final_units);
  for (const RunRecord& r : records) agg.seed_finals.push_back(final_window_mean(r.returns, final_units));
  return agg;
}

}  // namespace ipns::harness
