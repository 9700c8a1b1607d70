#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "ipns/numerics/mlp.hpp"
#include "ipns/numerics/rng.hpp"

namespace ipns::intrinsic {

/// State encoder: s -> standardize -> D64 ELU -> D16 ELU -> D(m') sigmoid -> z,
/// and its mirror decoder z -> D16 ELU -> D64 ELU -> D(m) -> de-standardize.
///
/// Codes live in (0,1)^m'. decode() accepts any real code, including
/// perturbed ones outside the unit box.
class Autoencoder {
 public:
  Autoencoder() = default;
  /// Untrained network with identity standardization. Throws ConfigError
  /// unless 1 <= latent_dim < state_dim.
  static Autoencoder create(int state_dim, int latent_dim, RngStream& rng);

  int state_dim() const { return static_cast<int>(mean.size()); }
  int latent_dim() const { return static_cast<int>(encoder.output_dim()); }

  Vector encode(const Vector& state) const;
  Vector decode(const Vector& code) const;
  /// Column-wise versions.
  Matrix encode_batch(const Matrix& states) const;
  Matrix decode_batch(const Matrix& codes) const;

  /// Mean over samples and dimensions of (decode(encode(s)) - s)^2.
  double reconstruction_mse(std::span<const Vector> states) const;

  MlpParams encoder;
  MlpParams decoder;
  Vector mean;   // per-dimension input standardization
  Vector scale;  // std, 1 where the data is constant
};

struct AutoencoderTraining {
  int epochs = 200;
  int batch_size = 64;
  double learning_rate = 1e-3;
  double target_mse = 0.01;
};

struct AutoencoderReport {
  double final_mse = 0.0;
  bool reached_target = false;
};

/// Fits standardization statistics on `states`, then minimizes the
/// standardized reconstruction MSE with Adam over shuffled minibatches.
/// Missing the target is reported, not thrown.
Autoencoder train_autoencoder(std::span<const Vector> states, int latent_dim,
                              const AutoencoderTraining& settings, RngStream& rng,
                              AutoencoderReport* report = nullptr);

inline constexpr int kAutoencoderVersion = 1;

void save_autoencoder(std::ostream& os, const Autoencoder& ae);
void save_autoencoder(const std::filesystem::path& path, const Autoencoder& ae);
Autoencoder load_autoencoder(std::istream& is);
Autoencoder load_autoencoder(const std::filesystem::path& path);

}  // namespace ipns::intrinsic
