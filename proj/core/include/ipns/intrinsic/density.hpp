#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ipns/intrinsic/state_buffer.hpp"
#include "ipns/numerics/rng.hpp"

namespace ipns::intrinsic {

/// Minibatch density of z in P:
///   exp(-(1/L) sum_l w_l |z - z_l|),  w_l = exp(-c |z - z_l|).
/// Lies in (0, 1]; equals 1 exactly when every z_l equals z.
/// Throws DomainError for an empty minibatch or c <= 0.
double den_p(const Vector& z, std::span<const Vector> minibatch, double c);
/// Same, with the minibatch given as buffer indices.
double den_p(const Vector& z, const EncodedStateBuffer& buffer,
             std::span<const std::size_t> indices, double c);

/// max(1, round(factor / 100 * n)).
std::size_t minibatch_size(std::size_t n, double factor);

struct DensityParams {
  int minibatches = 100;          // I
  double minibatch_factor = 1.0;  // percent of n per minibatch
  double c = 1.0;
  /// Forces L; L >= n means every minibatch is the whole buffer.
  std::optional<std::size_t> minibatch_size_override;

  std::size_t resolve_minibatch_size(std::size_t n) const;
};

/// Mean of den_p over I minibatches drawn uniformly with replacement from the
/// buffer. When L reaches n the minibatch is the whole buffer and no draw is
/// made. Throws DomainError on an empty buffer.
double density(const Vector& z, const EncodedStateBuffer& buffer, const DensityParams& params,
               RngStream& rng);

/// Exhaustive density over every buffer point (the I = 1, L = n case).
double abs_density(const Vector& z, const EncodedStateBuffer& buffer, double c);

/// abs_density of every buffer point, O(n^2).
std::vector<double> abs_densities(const EncodedStateBuffer& buffer, double c);

/// Index of the point with the highest absolute density; ties go to the
/// lowest index.
std::size_t abs_hvd_index(const EncodedStateBuffer& buffer, double c);
Vector abs_hvd(const EncodedStateBuffer& buffer, double c);

}  // namespace ipns::intrinsic
