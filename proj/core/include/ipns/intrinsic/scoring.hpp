#pragma once

#include "ipns/agents/value_network.hpp"
#include "ipns/intrinsic/autoencoder.hpp"
#include "ipns/intrinsic/hvd.hpp"

namespace ipns::intrinsic {

/// Which factors enter the plausible-novelty score. The full score is
/// novelty x value; ablations drop one factor (it is then fixed to 1).
struct ScoreTerms {
  bool novelty = true;
  bool value = true;

  bool needs_hvd() const { return novelty; }
};

/// Maps states to the space novelty is measured in: autoencoder codes, or the
/// raw state itself when no encoder is attached.
class StateCoder {
 public:
  StateCoder() = default;
  explicit StateCoder(const Autoencoder* ae) : ae_(ae) {}

  bool identity() const { return ae_ == nullptr; }
  Vector encode(const Vector& s) const { return ae_ ? ae_->encode(s) : s; }
  Matrix decode_batch(const Matrix& z) const { return ae_ ? ae_->decode_batch(z) : z; }

 private:
  const Autoencoder* ae_ = nullptr;
};

/// Euclidean distance from z to the HVD point. Throws NotReadyError when the
/// estimate is not valid yet.
double novelty(const Vector& z, const HvdEstimate& hvd);

/// novelty(z) * V(s), with the factors selected by `terms`.
double pn_score(const Vector& state, const Vector& code, const HvdEstimate& hvd,
                const agents::ValueNetwork& value, ScoreTerms terms = {});

/// 2 / (e^x + e^-x), floored at the smallest normal double so the result stays
/// strictly positive for any finite gap.
double irg_normalize(double gap);

struct IntrinsicSample {
  double zeta = 0.0;
  double score = 0.0;      // PN score of the state itself
  double max_score = 0.0;  // best PN score among the perturbed codes
};

struct IrgParams {
  int samples = 25;               // K
  double perturbation_scale = 0.1;
  ScoreTerms terms;
};

/// K perturbed codes z + N(0, sigma^2 I) are decoded into stand-in states and
/// scored; zeta = irg_normalize(max perturbed score - own score).
IntrinsicSample intrinsic_reward(const Vector& state, const Vector& code, const HvdEstimate& hvd,
                                 const agents::ValueNetwork& value, const StateCoder& coder,
                                 const IrgParams& params, RngStream& rng);

/// The intrinsic value to store with a transition: zeta with probability
/// 1 - epsilon when `usable`, otherwise 0 (unassigned). Draws from `rng`
/// only when usable.
double augment(double zeta, double epsilon, bool usable, RngStream& rng);

}  // namespace ipns::intrinsic
