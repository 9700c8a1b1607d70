#include "ipns/numerics/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "ipns/numerics/errors.hpp"

namespace ipns {
namespace {

void activate(Activation a, Matrix& z) {
  switch (a) {
    case Activation::relu:
      z = z.cwiseMax(0.0);
      break;
    case Activation::elu:
      z = z.unaryExpr([](double v) { return v > 0.0 ? v : std::expm1(v); });
      break;
    case Activation::tanh:
      z = z.array().tanh().matrix();
      break;
    case Activation::sigmoid:
      z = z.unaryExpr([](double v) {
        // split on sign so exp never overflows; the clamp keeps saturated
        // outputs strictly inside (0, 1)
        constexpr double lo = std::numeric_limits<double>::min();
        constexpr double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
        if (v >= 0.0) return std::min(hi, 1.0 / (1.0 + std::exp(-v)));
        const double e = std::exp(v);
        return std::max(lo, e / (1.0 + e));
      });
      break;
    case Activation::linear:
      break;
  }
}

// d(act)/dz expressed through the activated output.
void scale_by_derivative(Activation a, const Matrix& out, Matrix& grad) {
  switch (a) {
    case Activation::relu:
      grad = (out.array() > 0.0).select(grad, 0.0);
      break;
    case Activation::elu:
      grad = (out.array() > 0.0).select(grad, grad.array() * (out.array() + 1.0));
      break;
    case Activation::tanh:
      grad.array() *= 1.0 - out.array().square();
      break;
    case Activation::sigmoid:
      grad.array() *= out.array() * (1.0 - out.array());
      break;
    case Activation::linear:
      break;
  }
}

void check_input(const MlpParams& params, Eigen::Index rows) {
  if (params.layers.empty()) throw ShapeError("mlp: network has no layers");
  if (rows != params.input_dim())
    throw ShapeError("mlp: input dim " + std::to_string(rows) + " != network input dim " +
                     std::to_string(params.input_dim()));
}

}  // namespace

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::relu: return "relu";
    case Activation::elu: return "elu";
    case Activation::tanh: return "tanh";
    case Activation::sigmoid: return "sigmoid";
    case Activation::linear: return "linear";
  }
  return "linear";
}

Activation activation_from_string(std::string_view name) {
  for (Activation a : {Activation::relu, Activation::elu, Activation::tanh, Activation::sigmoid,
                       Activation::linear})
    if (to_string(a) == name) return a;
  throw FormatError("unknown activation '" + std::string(name) + "'");
}

Eigen::Index MlpParams::input_dim() const { return layers.empty() ? 0 : layers.front().in_dim(); }
Eigen::Index MlpParams::output_dim() const { return layers.empty() ? 0 : layers.back().out_dim(); }

std::size_t MlpParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

void MlpParams::validate() const {
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& l = layers[k];
    if (l.bias.size() != l.out_dim())
      throw ShapeError("mlp: layer " + std::to_string(k) + " bias size mismatch");
    if (k > 0 && layers[k - 1].out_dim() != l.in_dim())
      throw ShapeError("mlp: layer " + std::to_string(k) + " does not chain with previous layer");
    if (!l.weight.allFinite() || !l.bias.allFinite())
      throw DomainError("mlp: layer " + std::to_string(k) + " has non-finite parameters");
  }
}

bool MlpParams::same_shape(const MlpParams& other) const {
  if (layers.size() != other.layers.size()) return false;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    if (layers[k].weight.rows() != other.layers[k].weight.rows() ||
        layers[k].weight.cols() != other.layers[k].weight.cols() ||
        layers[k].bias.size() != other.layers[k].bias.size())
      return false;
  }
  return true;
}

void MlpParams::set_zero() {
  for (auto& l : layers) {
    l.weight.setZero();
    l.bias.setZero();
  }
}

bool operator==(const MlpParams& a, const MlpParams& b) {
  if (!a.same_shape(b)) return false;
  for (std::size_t k = 0; k < a.layers.size(); ++k) {
    if (a.layers[k].activation != b.layers[k].activation) return false;
    if (a.layers[k].weight != b.layers[k].weight || a.layers[k].bias != b.layers[k].bias)
      return false;
  }
  return true;
}

MlpParams make_mlp(std::span<const int> sizes, Activation hidden, Activation output,
                   RngStream& rng) {
  if (sizes.size() < 2) throw ShapeError("make_mlp: need at least input and output sizes");
  MlpParams p;
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
    const int in = sizes[k];
    const int out = sizes[k + 1];
    if (in < 1 || out < 1) throw ShapeError("make_mlp: layer sizes must be positive");
    Layer l;
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    l.weight.resize(out, in);
    // column-major fill order keeps the draw sequence independent of Eigen internals
    for (int j = 0; j < in; ++j)
      for (int i = 0; i < out; ++i) l.weight(i, j) = rng.uniform(-limit, limit);
    l.bias = Vector::Zero(out);
    l.activation = (k + 2 == sizes.size()) ? output : hidden;
    p.layers.push_back(std::move(l));
  }
  return p;
}

MlpParams make_mlp(std::initializer_list<int> sizes, Activation hidden, Activation output,
                   RngStream& rng) {
  return make_mlp(std::span<const int>(sizes.begin(), sizes.size()), hidden, output, rng);
}

MlpParams zeros_like(const MlpParams& params) {
  MlpParams z = params;
  z.set_zero();
  return z;
}

Vector mlp_forward(const MlpParams& params, const Vector& input) {
  check_input(params, input.size());
  if (!input.allFinite()) throw DomainError("mlp_forward: non-finite input");
  Matrix x = input;
  for (const auto& l : params.layers) {
    Matrix z = l.weight * x;
    z.colwise() += l.bias;
    activate(l.activation, z);
    x = std::move(z);
  }
  return x.col(0);
}

Matrix forward_batch(const MlpParams& params, const Matrix& input, ForwardCache* cache) {
  check_input(params, input.rows());
  if (!input.allFinite()) throw DomainError("forward_batch: non-finite input");
  if (cache) {
    cache->inputs.resize(params.layers.size());
    cache->outputs.resize(params.layers.size());
  }
  Matrix x = input;
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    const auto& l = params.layers[k];
    Matrix z(l.out_dim(), x.cols());
    z.noalias() = l.weight * x;
    z.colwise() += l.bias;
    activate(l.activation, z);
    if (cache) cache->inputs[k] = std::move(x);
    x = std::move(z);
    if (cache) cache->outputs[k] = x;
  }
  return x;
}

void backward_batch(const MlpParams& params, const ForwardCache& cache, const Matrix& upstream,
                    MlpGrads& grads, Matrix* input_grad) {
  const std::size_t n = params.layers.size();
  if (cache.outputs.size() != n || cache.inputs.size() != n)
    throw ShapeError("backward_batch: cache does not match network");
  if (upstream.rows() != params.output_dim() || upstream.cols() != cache.outputs.back().cols())
    throw ShapeError("backward_batch: upstream gradient shape mismatch");
  if (!grads.same_shape(params)) grads = zeros_like(params);

  Matrix delta = upstream;
  for (std::size_t k = n; k-- > 0;) {
    const auto& l = params.layers[k];
    scale_by_derivative(l.activation, cache.outputs[k], delta);
    grads.layers[k].weight.noalias() = delta * cache.inputs[k].transpose();
    grads.layers[k].bias = delta.rowwise().sum();
    grads.layers[k].activation = l.activation;
    if (k > 0 || input_grad) {
      Matrix next(l.in_dim(), delta.cols());
      next.noalias() = l.weight.transpose() * delta;
      delta = std::move(next);
    }
  }
  if (input_grad) *input_grad = std::move(delta);
}

MlpGrads mlp_backward(const MlpParams& params, const Vector& input, const Vector& upstream) {
  check_input(params, input.size());
  if (upstream.size() != params.output_dim())
    throw ShapeError("mlp_backward: upstream gradient has wrong length");
  ForwardCache cache;
  forward_batch(params, input, &cache);
  MlpGrads g = zeros_like(params);
  backward_batch(params, cache, upstream, g);
  return g;
}

double grad_check(const MlpParams& params, const Vector& input, const LossFn& loss, double h) {
  const Vector out = mlp_forward(params, input);
  const MlpGrads analytic = mlp_backward(params, input, loss.gradient(out));

  MlpParams probe = params;
  double worst = 0.0;
  auto check_entry = [&](double& slot, double analytic_value) {
    const double saved = slot;
    slot = saved + h;
    const double up = loss.value(mlp_forward(probe, input));
    slot = saved - h;
    const double down = loss.value(mlp_forward(probe, input));
    slot = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double denom = std::max({std::abs(analytic_value), std::abs(numeric), 1e-8});
    worst = std::max(worst, std::abs(analytic_value - numeric) / denom);
  };
  for (std::size_t k = 0; k < probe.layers.size(); ++k) {
    auto& l = probe.layers[k];
    for (Eigen::Index j = 0; j < l.weight.cols(); ++j)
      for (Eigen::Index i = 0; i < l.weight.rows(); ++i)
        check_entry(l.weight(i, j), analytic.layers[k].weight(i, j));
    for (Eigen::Index i = 0; i < l.bias.size(); ++i)
      check_entry(l.bias(i), analytic.layers[k].bias(i));
  }
  return worst;
}

void soft_update(MlpParams& target, const MlpParams& online, double tau) {
  if (!target.same_shape(online)) throw ShapeError("soft_update: shape mismatch");
  for (std::size_t k = 0; k < target.layers.size(); ++k) {
    target.layers[k].weight = (1.0 - tau) * target.layers[k].weight + tau * online.layers[k].weight;
    target.layers[k].bias = (1.0 - tau) * target.layers[k].bias + tau * online.layers[k].bias;
  }
}

std::uint64_t checksum(const MlpParams& params) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const double* data, Eigen::Index n) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < static_cast<std::size_t>(n) * sizeof(double); ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& l : params.layers) {
    feed(l.weight.data(), l.weight.size());
    feed(l.bias.data(), l.bias.size());
  }
  return h;
}

}  // namespace ipns
