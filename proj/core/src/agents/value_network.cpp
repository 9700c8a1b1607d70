#include "ipns/agents/value_network.hpp"

#include "ipns/numerics/errors.hpp"

namespace ipns::agents {

ValueNetwork::ValueNetwork(int state_dim, const std::vector<int>& hidden, const AdamConfig& cfg,
                           RngStream& rng) {
  std::vector<int> sizes{state_dim};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(1);
  online = make_mlp(sizes, Activation::relu, Activation::linear, rng);
  target = online;
  adam = AdamState::for_params(online, cfg);
}

double ValueNetwork::value(const Vector& state) const { return mlp_forward(online, state)(0); }

Vector ValueNetwork::values(const Matrix& states) const {
  return forward_batch(online, states).row(0).transpose();
}

Vector ValueNetwork::td_errors(const Batch& batch, double gamma) const {
  if (batch.size() < 1) throw InsufficientDataError("ValueNetwork: empty batch");
  const Vector v_next = forward_batch(target, batch.next_states).row(0).transpose();
  const Vector v = values(batch.states);
  return (batch.rewards.array() + gamma * (1.0 - batch.done.array()) * v_next.array() - v.array())
      .matrix();
}

double ValueNetwork::update(const Batch& batch, double gamma, double tau) {
  if (batch.size() < 1) throw InsufficientDataError("ValueNetwork: empty batch");
  const auto n = static_cast<double>(batch.size());
  const Vector v_next = forward_batch(target, batch.next_states).row(0).transpose();
  ForwardCache cache;
  const Vector v = forward_batch(online, batch.states, &cache).row(0).transpose();
  const Vector delta =
      batch.rewards.array() + gamma * (1.0 - batch.done.array()) * v_next.array() - v.array();

  // d/dV mean(delta^2) = -2 delta / n (semi-gradient: target held fixed)
  Matrix upstream = (-2.0 / n) * delta.transpose();
  MlpGrads grads;
  backward_batch(online, cache, upstream, grads);
  adam_step(online, grads, adam);
  soft_update(target, online, tau);
  return delta.squaredNorm() / n;
}

}  // namespace ipns::agents
