#include "ipns/intrinsic/autoencoder.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "ipns/numerics/adam.hpp"
#include "ipns/numerics/errors.hpp"
#include "ipns/numerics/serialize.hpp"

namespace ipns::intrinsic {

Autoencoder Autoencoder::create(int state_dim, int latent_dim, RngStream& rng) {
  if (latent_dim < 1 || latent_dim >= state_dim)
    throw ConfigError("autoencoder: latent dimension " + std::to_string(latent_dim) +
                      " must satisfy 1 <= m' < m = " + std::to_string(state_dim));
  Autoencoder ae;
  ae.encoder = make_mlp({state_dim, 64, 16, latent_dim}, Activation::elu, Activation::sigmoid, rng);
  ae.decoder = make_mlp({latent_dim, 16, 64, state_dim}, Activation::elu, Activation::linear, rng);
  ae.mean = Vector::Zero(state_dim);
  ae.scale = Vector::Ones(state_dim);
  return ae;
}

Vector Autoencoder::encode(const Vector& state) const {
  if (state.size() != state_dim()) throw ShapeError("encode: state dimension mismatch");
  return mlp_forward(encoder, ((state - mean).array() / scale.array()).matrix());
}

Vector Autoencoder::decode(const Vector& code) const {
  if (code.size() != latent_dim()) throw ShapeError("decode: code dimension mismatch");
  return (mlp_forward(decoder, code).array() * scale.array() + mean.array()).matrix();
}

Matrix Autoencoder::encode_batch(const Matrix& states) const {
  if (states.rows() != state_dim()) throw ShapeError("encode: state dimension mismatch");
  const Matrix x = (states.colwise() - mean).array().colwise() / scale.array();
  return forward_batch(encoder, x);
}

Matrix Autoencoder::decode_batch(const Matrix& codes) const {
  if (codes.rows() != latent_dim()) throw ShapeError("decode: code dimension mismatch");
  const Matrix y = forward_batch(decoder, codes);
  return (y.array().colwise() * scale.array()).colwise() + mean.array();
}

double Autoencoder::reconstruction_mse(std::span<const Vector> states) const {
  if (states.empty()) return 0.0;
  Matrix x(state_dim(), static_cast<Eigen::Index>(states.size()));
  for (std::size_t j = 0; j < states.size(); ++j) x.col(static_cast<Eigen::Index>(j)) = states[j];
  const Matrix r = decode_batch(encode_batch(x));
  return (r - x).squaredNorm() / static_cast<double>(x.size());
}

Autoencoder train_autoencoder(std::span<const Vector> states, int latent_dim,
                              const AutoencoderTraining& settings, RngStream& rng,
                              AutoencoderReport* report) {
  if (states.empty()) throw DomainError("train_autoencoder: no training states");
  const auto m = states.front().size();
  const auto n = static_cast<Eigen::Index>(states.size());
  Matrix data(m, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (states[static_cast<std::size_t>(j)].size() != m)
      throw ShapeError("train_autoencoder: inconsistent state dimensions");
    data.col(j) = states[static_cast<std::size_t>(j)];
  }
  if (!data.allFinite()) throw DomainError("train_autoencoder: non-finite state");

  Autoencoder ae = Autoencoder::create(static_cast<int>(m), latent_dim, rng);
  ae.mean = data.rowwise().mean();
  const Matrix centered = data.colwise() - ae.mean;
  ae.scale = (centered.rowwise().squaredNorm() / static_cast<double>(n)).cwiseSqrt();
  for (Eigen::Index i = 0; i < m; ++i)
    if (ae.scale(i) < 1e-8) ae.scale(i) = 1.0;
  const Matrix x = centered.array().colwise() / ae.scale.array();

  AdamConfig adam;
  adam.learning_rate = settings.learning_rate;
  AdamState enc_opt = AdamState::for_params(ae.encoder, adam);
  AdamState dec_opt = AdamState::for_params(ae.decoder, adam);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const Eigen::Index batch = std::min<Eigen::Index>(settings.batch_size, n);
  ForwardCache enc_cache, dec_cache;
  MlpGrads enc_grads, dec_grads;
  Matrix xb;
  for (int epoch = 0; epoch < settings.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng.engine());
    for (Eigen::Index start = 0; start < n; start += batch) {
      const Eigen::Index len = std::min(batch, n - start);
      xb.resize(m, len);
      for (Eigen::Index j = 0; j < len; ++j) xb.col(j) = x.col(order[static_cast<std::size_t>(start + j)]);
      const Matrix z = forward_batch(ae.encoder, xb, &enc_cache);
      const Matrix y = forward_batch(ae.decoder, z, &dec_cache);
      const Matrix upstream = (2.0 / static_cast<double>(xb.size())) * (y - xb);
      Matrix dz;
      backward_batch(ae.decoder, dec_cache, upstream, dec_grads, &dz);
      backward_batch(ae.encoder, enc_cache, dz, enc_grads);
      adam_step(ae.decoder, dec_grads, dec_opt);
      adam_step(ae.encoder, enc_grads, enc_opt);
    }
  }

  if (report) {
    report->final_mse = ae.reconstruction_mse(states);
    report->reached_target = report->final_mse <= settings.target_mse;
  }
  return ae;
}

void save_autoencoder(std::ostream& os, const Autoencoder& ae) {
  os << "ipns-autoencoder " << kAutoencoderVersion << '\n';
  io::write_vector(os, "mean", ae.mean);
  io::write_vector(os, "scale", ae.scale);
  io::write_mlp(os, "encoder", ae.encoder);
  io::write_mlp(os, "decoder", ae.decoder);
  os << "end\n";
}

void save_autoencoder(const std::filesystem::path& path, const Autoencoder& ae) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open '" + path.string() + "' for writing");
  save_autoencoder(os, ae);
}

Autoencoder load_autoencoder(std::istream& is) {
  io::expect_token(is, "ipns-autoencoder");
  const long long version = io::read_int(is);
  if (version != kAutoencoderVersion)
    throw FormatError("unsupported autoencoder version " + std::to_string(version));
  Autoencoder ae;
  ae.mean = io::read_vector(is, "mean");
  ae.scale = io::read_vector(is, "scale");
  ae.encoder = io::read_mlp(is, "encoder");
  ae.decoder = io::read_mlp(is, "decoder");
  io::expect_token(is, "end");
  if (ae.encoder.input_dim() != ae.mean.size() || ae.scale.size() != ae.mean.size() ||
      ae.decoder.output_dim() != ae.mean.size() ||
      ae.decoder.input_dim() != ae.encoder.output_dim())
    throw FormatError("autoencoder file has inconsistent shapes");
  return ae;
}

Autoencoder load_autoencoder(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open '" + path.string() + "'");
  return load_autoencoder(is);
}

}  // namespace ipns::intrinsic
