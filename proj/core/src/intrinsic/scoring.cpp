#include "ipns/intrinsic/scoring.hpp"

#include <cmath>
#include <limits>

#include "ipns/numerics/errors.hpp"

namespace ipns::intrinsic {

double novelty(const Vector& z, const HvdEstimate& hvd) {
  if (!hvd.valid) throw NotReadyError("novelty: no valid HVD estimate yet");
  if (z.size() != hvd.point.size()) throw ShapeError("novelty: dimension mismatch");
  return (z - hvd.point).norm();
}

double pn_score(const Vector& state, const Vector& code, const HvdEstimate& hvd,
                const agents::ValueNetwork& value, ScoreTerms terms) {
  const double eta = terms.novelty ? novelty(code, hvd) : 1.0;
  const double v = terms.value ? value.value(state) : 1.0;
  return eta * v;
}

double irg_normalize(double gap) {
  const double a = std::abs(gap);
  const double e = std::exp(-a);
  // 2 / (e^a + e^-a) rewritten to avoid overflow
  const double zeta = 2.0 * e / (1.0 + e * e);
  return std::max(zeta, std::numeric_limits<double>::min());
}

IntrinsicSample intrinsic_reward(const Vector& state, const Vector& code, const HvdEstimate& hvd,
                                 const agents::ValueNetwork& value, const StateCoder& coder,
                                 const IrgParams& params, RngStream& rng) {
  if (params.samples < 1) throw DomainError("intrinsic_reward: K must be >= 1");
  if (params.terms.needs_hvd() && !hvd.valid)
    throw NotReadyError("intrinsic_reward: no valid HVD estimate yet");

  IntrinsicSample out;
  out.score = pn_score(state, code, hvd, value, params.terms);

  const auto dim = code.size();
  Matrix perturbed(dim, params.samples);
  for (int k = 0; k < params.samples; ++k)
    for (Eigen::Index i = 0; i < dim; ++i)
      perturbed(i, k) = code(i) + params.perturbation_scale * rng.normal();

  Vector eta = Vector::Ones(params.samples);
  if (params.terms.novelty)
    eta = (perturbed.colwise() - hvd.point).colwise().norm().transpose();
  Vector v = Vector::Ones(params.samples);
  if (params.terms.value) v = value.values(coder.decode_batch(perturbed));

  out.max_score = (eta.array() * v.array()).maxCoeff();
  out.zeta = irg_normalize(out.max_score - out.score);
  return out;
}

double augment(double zeta, double epsilon, bool usable, RngStream& rng) {
  if (!usable) return 0.0;
  if (epsilon > 0.0 && rng.uniform() < epsilon) return 0.0;
  return zeta;
}

}  // namespace ipns::intrinsic
