#include "ipns/intrinsic/ipns_config.hpp"

#include "ipns/numerics/errors.hpp"

namespace ipns::intrinsic {

void IpnsConfig::validate() const {
  if (!(beta >= 0.0 && beta < 1.0)) throw ConfigError("beta must lie in [0, 1)");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in [0, 1)");
  if (!(minibatch_factor > 0.0 && minibatch_factor < 100.0))
    throw ConfigError("minibatch factor must lie in (0, 100)");
  if (!(weight_multiplier > 0.0)) throw ConfigError("weight multiplier c must be positive");
  if (hvd_period < 1) throw ConfigError("HVD update frequency M must be >= 1");
  if (irg_samples < 1) throw ConfigError("IRG sample count K must be >= 1");
  if (hvd_candidates < 1) throw ConfigError("HVD candidate count J must be >= 1");
  if (hvd_minibatches < 1) throw ConfigError("HVD minibatch count I must be >= 1");
  if (latent_dim < 1) throw ConfigError("latent dimension must be >= 1");
  if (!(perturbation_scale >= 0.0)) throw ConfigError("perturbation scale must be >= 0");
  if (n_encode < 1) throw ConfigError("N_encode must be >= 1");
  if (ae_epochs < 1 || ae_batch_size < 1 || !(ae_learning_rate > 0.0))
    throw ConfigError("autoencoder training settings must be positive");
}

}  // namespace ipns::intrinsic
