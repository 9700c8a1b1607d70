#include "ipns/intrinsic/density.hpp"

#include <cmath>

#include "ipns/numerics/errors.hpp"

namespace ipns::intrinsic {
namespace {

inline double weighted_distance(const double* a, const double* b, int dim, double c) {
  double sq = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = a[k] - b[k];
    sq += d * d;
  }
  const double d = std::sqrt(sq);
  return d * std::exp(-c * d);
}

void check_c(double c) {
  if (!(c > 0.0)) throw DomainError("density: weight multiplier c must be positive");
}

}  // namespace

double den_p(const Vector& z, std::span<const Vector> minibatch, double c) {
  if (minibatch.empty()) throw DomainError("den_p: empty minibatch");
  check_c(c);
  double sum = 0.0;
  for (const Vector& p : minibatch) {
    if (p.size() != z.size()) throw ShapeError("den_p: dimension mismatch");
    sum += weighted_distance(z.data(), p.data(), static_cast<int>(z.size()), c);
  }
  return std::exp(-sum / static_cast<double>(minibatch.size()));
}

double den_p(const Vector& z, const EncodedStateBuffer& buffer,
             std::span<const std::size_t> indices, double c) {
  if (indices.empty()) throw DomainError("den_p: empty minibatch");
  if (z.size() != buffer.dim()) throw ShapeError("den_p: dimension mismatch");
  check_c(c);
  double sum = 0.0;
  const int dim = buffer.dim();
  for (std::size_t i : indices)
    sum += weighted_distance(z.data(), buffer.data() + i * static_cast<std::size_t>(dim), dim, c);
  return std::exp(-sum / static_cast<double>(indices.size()));
}

std::size_t minibatch_size(std::size_t n, double factor) {
  const double l = std::round(factor / 100.0 * static_cast<double>(n));
  return l < 1.0 ? 1 : static_cast<std::size_t>(l);
}

std::size_t DensityParams::resolve_minibatch_size(std::size_t n) const {
  if (minibatch_size_override) return std::max<std::size_t>(1, *minibatch_size_override);
  return minibatch_size(n, minibatch_factor);
}

double density(const Vector& z, const EncodedStateBuffer& buffer, const DensityParams& params,
               RngStream& rng) {
  if (buffer.empty()) throw DomainError("density: empty buffer");
  if (params.minibatches < 1) throw DomainError("density: need at least one minibatch");
  const std::size_t n = buffer.size();
  const std::size_t l = params.resolve_minibatch_size(n);
  if (l >= n) {
    // every minibatch is the full buffer
    return abs_density(z, buffer, params.c);
  }
  std::vector<std::size_t> idx(l);
  double total = 0.0;
  for (int i = 0; i < params.minibatches; ++i) {
    for (auto& k : idx) k = rng.index(n);
    total += den_p(z, buffer, idx, params.c);
  }
  return total / static_cast<double>(params.minibatches);
}

double abs_density(const Vector& z, const EncodedStateBuffer& buffer, double c) {
  if (buffer.empty()) throw DomainError("abs_density: empty buffer");
  if (z.size() != buffer.dim()) throw ShapeError("abs_density: dimension mismatch");
  check_c(c);
  const int dim = buffer.dim();
  double sum = 0.0;
  for (std::size_t i = 0; i < buffer.size(); ++i)
    sum += weighted_distance(z.data(), buffer.data() + i * static_cast<std::size_t>(dim), dim, c);
  return std::exp(-sum / static_cast<double>(buffer.size()));
}

std::vector<double> abs_densities(const EncodedStateBuffer& buffer, double c) {
  if (buffer.empty()) throw DomainError("abs_densities: empty buffer");
  std::vector<double> out(buffer.size());
  for (std::size_t i = 0; i < buffer.size(); ++i) out[i] = abs_density(buffer.point(i), buffer, c);
  return out;
}

std::size_t abs_hvd_index(const EncodedStateBuffer& buffer, double c) {
  const auto d = abs_densities(buffer, c);
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.size(); ++i)
    if (d[i] > d[best]) best = i;
  return best;
}

Vector abs_hvd(const EncodedStateBuffer& buffer, double c) {
  return buffer.point(abs_hvd_index(buffer, c));
}

}  // namespace ipns::intrinsic
