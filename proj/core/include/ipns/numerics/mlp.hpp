#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ipns/numerics/rng.hpp"

namespace ipns {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class Activation { relu, elu, tanh, sigmoid, linear };

std::string_view to_string(Activation a);
Activation activation_from_string(std::string_view name);

/// One dense layer: y = act(W x + b), W is [out x in].
struct Layer {
  Matrix weight;
  Vector bias;
  Activation activation = Activation::linear;

  Eigen::Index in_dim() const { return weight.cols(); }
  Eigen::Index out_dim() const { return weight.rows(); }
};

/// Parameters of a feed-forward network. The same type doubles as the
/// container for gradients and Adam moments, which share its shape.
struct MlpParams {
  std::vector<Layer> layers;

  Eigen::Index input_dim() const;
  Eigen::Index output_dim() const;
  std::size_t parameter_count() const;

  /// Throws ShapeError if consecutive layers do not chain, DomainError if a
  /// parameter is non-finite.
  void validate() const;

  bool same_shape(const MlpParams& other) const;
  void set_zero();

  friend bool operator==(const MlpParams& a, const MlpParams& b);
};

using MlpGrads = MlpParams;

/// Builds a network with Xavier-uniform weights and zero biases.
/// `sizes` lists every width including input and output, so {10, 64, 64, 2}
/// gives three layers.
MlpParams make_mlp(std::span<const int> sizes, Activation hidden, Activation output,
                   RngStream& rng);
MlpParams make_mlp(std::initializer_list<int> sizes, Activation hidden, Activation output,
                   RngStream& rng);

MlpParams zeros_like(const MlpParams& params);

Vector mlp_forward(const MlpParams& params, const Vector& input);

/// Activations kept by a batched forward pass for the backward pass.
/// inputs[k] is the input of layer k (columns are samples), outputs[k] its
/// activated output.
struct ForwardCache {
  std::vector<Matrix> inputs;
  std::vector<Matrix> outputs;
};

/// Batched forward. Columns of `input` are samples.
Matrix forward_batch(const MlpParams& params, const Matrix& input, ForwardCache* cache = nullptr);

/// Batched backward from the gradient of a loss with respect to the network
/// output. Overwrites `grads` (which must have the shape of `params`). When
/// `input_grad` is non-null it receives dLoss/dInput.
void backward_batch(const MlpParams& params, const ForwardCache& cache, const Matrix& upstream,
                    MlpGrads& grads, Matrix* input_grad = nullptr);

/// Single-sample gradient of <upstream, f(input)> with respect to parameters.
MlpGrads mlp_backward(const MlpParams& params, const Vector& input, const Vector& upstream);

/// Scalar loss of the network output, with its gradient.
struct LossFn {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

/// Max over parameters of |analytic - numeric| / max(|analytic|, |numeric|, 1e-8),
/// with numeric gradients from central differences of step h.
double grad_check(const MlpParams& params, const Vector& input, const LossFn& loss,
                  double h = 1e-5);

/// target <- (1 - tau) * target + tau * online, parameter by parameter.
void soft_update(MlpParams& target, const MlpParams& online, double tau);

/// Order-sensitive FNV hash over the raw bytes of every parameter.
std::uint64_t checksum(const MlpParams& params);

}  // namespace ipns
