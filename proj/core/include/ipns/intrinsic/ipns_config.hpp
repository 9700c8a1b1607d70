#pragma once

namespace ipns::intrinsic {

/// Hyperparameters of the plausible-novelty bonus. Defaults are the reacher
/// settings (J = 5, c = 1, m' = 5).
struct IpnsConfig {
  int hvd_period = 500;             // M: recompute cadence and cut-in threshold
  int irg_samples = 25;             // K: perturbed codes per state
  int hvd_candidates = 5;           // J
  int hvd_minibatches = 100;        // I
  double minibatch_factor = 1.0;    // percent of the buffer per minibatch
  double weight_multiplier = 1.0;   // c
  double beta = 0.0;                // intrinsic weight
  double epsilon = 0.0;             // probability of withholding the bonus
  int latent_dim = 5;               // m'
  double perturbation_scale = 0.1;  // std of code perturbations
  int n_encode = 10000;             // random-policy states for autoencoder training
  int ae_epochs = 200;
  int ae_batch_size = 64;
  double ae_learning_rate = 1e-3;

  /// Throws ConfigError when a field leaves its valid range.
  void validate() const;
};

}  // namespace ipns::intrinsic
