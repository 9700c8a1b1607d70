#pragma once

#include <span>
#include <vector>

#include "ipns/harness/trainer.hpp"

namespace ipns::harness {

/// Centered moving average. Near the ends the window shrinks symmetrically,
/// so point i averages the 2k+1 values around it with k = min(w/2, i, n-1-i).
/// Throws ConfigError unless window is odd and >= 1.
std::vector<double> smooth(std::span<const double> curve, int window = 11);

/// Per-unit statistics across seeds.
struct Aggregate {
  std::vector<double> mean;  // R-bar_u
  std::vector<double> std;   // population standard deviation sigma_u
  int unit_steps = 0;
  int final_units = 0;
  double final_mean = 0.0;          // R_f: mean of R-bar_u over the last final_units units
  double final_std = 0.0;           // mean of sigma_u over the same units
  std::vector<double> seed_finals;  // each seed's own final-window mean, in record order

  std::size_t units() const { return mean.size(); }
};

/// Throws ConfigError on an empty list, mismatched unit counts or unit
/// sizes, or final_units outside [1, U].
Aggregate aggregate(std::span<const RunRecord> records, int final_units);

/// Mean of the last `final_units` entries.
double final_window_mean(std::span<const double> curve, int final_units);

/// sqrt((sa^2 + sb^2) / 2) over per-seed final-window values (population std).
double pooled_std(std::span<const double> a, std::span<const double> b);

double population_std(std::span<const double> values);

}  // namespace ipns::harness
