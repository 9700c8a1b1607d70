#include "ipns/intrinsic/pipeline.hpp"

#include "ipns/numerics/errors.hpp"

namespace ipns::intrinsic {
namespace {

HvdParams hvd_params(const IpnsConfig& c) {
  HvdParams p;
  p.candidates = c.hvd_candidates;
  p.density.minibatches = c.hvd_minibatches;
  p.density.minibatch_factor = c.minibatch_factor;
  p.density.c = c.weight_multiplier;
  return p;
}

}  // namespace

IpnsPipeline::IpnsPipeline(const IpnsConfig& config, PipelineOptions options,
                           std::shared_ptr<const Autoencoder> autoencoder, int state_dim,
                           std::uint64_t seed)
    : config_(config),
      options_(options),
      autoencoder_(options.use_encoder ? std::move(autoencoder) : nullptr),
      coder_(autoencoder_.get()),
      buffer_(options.use_encoder ? config.latent_dim : state_dim, options.use_encoder),
      tracker_(config.hvd_period, hvd_params(config)),
      bonus_rng_("ipns", derive_seed(seed, "ipns")),
      hvd_rng_("hvd", derive_seed(seed, "hvd")) {
  config_.validate();
  if (options_.use_encoder) {
    if (!autoencoder_) throw ConfigError("IpnsPipeline: encoder enabled but no autoencoder given");
    if (autoencoder_->state_dim() != state_dim || autoencoder_->latent_dim() != config.latent_dim)
      throw ConfigError("IpnsPipeline: autoencoder shape does not match environment / latent dim");
  }
  irg_.samples = config_.irg_samples;
  irg_.perturbation_scale = config_.perturbation_scale;
  irg_.terms = options_.terms;
}

double IpnsPipeline::process(const Vector& state, const agents::ValueNetwork& value) {
  ++stats_.steps;
  const Vector z = coder_.encode(state);
  buffer_.push(z);
  const HvdEstimate& hvd = tracker_.update(buffer_, hvd_rng_);

  const bool usable = !options_.terms.needs_hvd() || hvd.valid;
  double zeta = 0.0;
  if (usable) zeta = intrinsic_reward(state, z, hvd, value, coder_, irg_, bonus_rng_).zeta;
  const double stored = augment(zeta, config_.epsilon, usable, bonus_rng_);
  if (stored > 0.0) {
    ++stats_.assigned;
    if (stats_.first_assigned_step == 0) stats_.first_assigned_step = stats_.steps;
  } else {
    ++stats_.unassigned;
  }
  return stored;
}

}  // namespace ipns::intrinsic
