#include "ipns/numerics/adam.hpp"

#include <cmath>

#include "ipns/numerics/errors.hpp"

namespace ipns {

AdamState AdamState::for_params(const MlpParams& params, const AdamConfig& config) {
  AdamState s;
  s.first_moment = zeros_like(params);
  s.second_moment = zeros_like(params);
  s.learning_rate = config.learning_rate;
  s.beta1 = config.beta1;
  s.beta2 = config.beta2;
  s.epsilon = config.epsilon;
  return s;
}

void adam_step(MlpParams& params, const MlpGrads& grads, AdamState& state) {
  if (!params.same_shape(grads)) throw ShapeError("adam_step: gradient shape mismatch");
  if (!params.same_shape(state.first_moment) || !params.same_shape(state.second_moment))
    throw ShapeError("adam_step: optimizer state shape mismatch");
  if (state.step < 0) throw DomainError("adam_step: negative step counter");

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  const double b1 = state.beta1;
  const double b2 = state.beta2;
  const double lr = state.learning_rate;
  const double eps = state.epsilon;

  auto update = [&](auto& p, const auto& g, auto& m, auto& v) {
    m = b1 * m + (1.0 - b1) * g;
    v = (b2 * v.array() + (1.0 - b2) * g.array().square()).matrix();
    p.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
  };
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    auto& l = params.layers[k];
    update(l.weight, grads.layers[k].weight, state.first_moment.layers[k].weight,
           state.second_moment.layers[k].weight);
    update(l.bias, grads.layers[k].bias, state.first_moment.layers[k].bias,
           state.second_moment.layers[k].bias);
  }
}

}  // namespace ipns
