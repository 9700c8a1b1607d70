#pragma once

#include <vector>

#include "ipns/numerics/adam.hpp"
#include "ipns/numerics/mlp.hpp"

namespace ipns::agents::detail {

inline Matrix stack(const Matrix& top, const Matrix& bottom) {
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

inline std::vector<int> layer_sizes(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> s{in};
  s.insert(s.end(), hidden.begin(), hidden.end());
  s.push_back(out);
  return s;
}

/// One Adam step on mean((Q - y)^2). Returns the loss before the step.
inline double regress(MlpParams& q, AdamState& opt, const Matrix& input, const Vector& y) {
  ForwardCache cache;
  const Matrix out = forward_batch(q, input, &cache);
  const Eigen::RowVectorXd residual = out.row(0) - y.transpose();
  const double n = static_cast<double>(y.size());
  const Matrix upstream = (2.0 / n) * residual;
  MlpGrads grads;
  backward_batch(q, cache, upstream, grads);
  adam_step(q, grads, opt);
  return residual.squaredNorm() / n;
}

/// Gradient of sum_j w_j Q(s_j, a_j) with respect to the actions.
inline Matrix action_gradient(const MlpParams& q, const ForwardCache& cache,
                              const Eigen::RowVectorXd& weights, int state_dim, int action_dim) {
  MlpGrads unused;
  Matrix input_grad;
  backward_batch(q, cache, Matrix(weights), unused, &input_grad);
  return input_grad.middleRows(state_dim, action_dim);
}

}  // namespace ipns::agents::detail
