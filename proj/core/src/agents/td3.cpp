#include <algorithm>

#include "ipns/agents/agent.hpp"
#include "network_ops.hpp"

namespace ipns::agents {

Td3Agent::Td3Agent(const AgentConfig& config, const envs::EnvSpec& spec, RngStream& init_rng)
    : Agent(config, spec, init_rng) {
  const auto hidden = config_.resolved_hidden();
  actor = make_mlp(detail::layer_sizes(state_dim_, hidden, action_dim_), Activation::relu,
                   Activation::tanh, init_rng);
  const auto critic_sizes = detail::layer_sizes(state_dim_ + action_dim_, hidden, 1);
  q1 = make_mlp(critic_sizes, Activation::relu, Activation::linear, init_rng);
  q2 = make_mlp(critic_sizes, Activation::relu, Activation::linear, init_rng);
  actor_target = actor;
  q1_target = q1;
  q2_target = q2;
  AdamConfig adam;
  adam.learning_rate = config_.learning_rate;
  actor_opt = AdamState::for_params(actor, adam);
  q1_opt = AdamState::for_params(q1, adam);
  q2_opt = AdamState::for_params(q2, adam);
}

std::vector<ParamRef> Td3Agent::primary_parameters() {
  return {{"actor", &actor, &actor_opt},         {"q1", &q1, &q1_opt},
          {"q2", &q2, &q2_opt},                  {"actor_target", &actor_target, nullptr},
          {"q1_target", &q1_target, nullptr},    {"q2_target", &q2_target, nullptr}};
}

Vector Td3Agent::act(const Vector& state, ActMode mode, RngStream& rng) const {
  check_state(state, state_dim_);
  Vector a = to_env_actions(mlp_forward(actor, state));
  if (mode == ActMode::deterministic) return a;
  const Vector half = half_range();
  for (int i = 0; i < action_dim_; ++i) a(i) += rng.normal(0.0, config_.action_noise * half(i));
  return clip_actions(a);
}

Matrix Td3Agent::smoothing_noise(Eigen::Index count, RngStream& rng) const {
  const Vector half = half_range();
  Matrix noise(action_dim_, count);
  for (Eigen::Index j = 0; j < count; ++j)
    for (int i = 0; i < action_dim_; ++i) {
      const double clip = config_.noise_clip * half(i);
      noise(i, j) = std::clamp(rng.normal(0.0, config_.policy_noise * half(i)), -clip, clip);
    }
  return noise;
}

Vector Td3Agent::critic_targets(const Batch& batch, double beta, RngStream& rng) const {
  check_batch(batch);
  const Matrix next_actions = clip_actions(
      to_env_actions(forward_batch(actor_target, batch.next_states)) + smoothing_noise(batch.size(), rng));
  const Matrix input = detail::stack(batch.next_states, next_actions);
  const Eigen::RowVectorXd t1 = forward_batch(q1_target, input).row(0);
  const Eigen::RowVectorXd t2 = forward_batch(q2_target, input).row(0);
  return (composed_rewards(batch, beta).array() +
          config_.gamma * (1.0 - batch.done.array()) * t1.array().min(t2.array()).transpose())
      .matrix();
}

UpdateReport Td3Agent::update(const Batch& batch, double beta, RngStream& rng) {
  return update(batch, beta, updates_ + 1, rng);
}

UpdateReport Td3Agent::update(const Batch& batch, double beta, std::int64_t index,
                              RngStream& rng) {
  check_batch(batch);
  UpdateReport report;
  const double n = static_cast<double>(batch.size());
  const Vector y = critic_targets(batch, beta, rng);
  const Matrix sa = detail::stack(batch.states, batch.actions);
  report.critic_loss = 0.5 * (detail::regress(q1, q1_opt, sa, y) + detail::regress(q2, q2_opt, sa, y));

  if (index % config_.policy_delay == 0) {
    ForwardCache acache, ccache;
    const Matrix squashed = forward_batch(actor, batch.states, &acache);
    const Eigen::RowVectorXd q =
        forward_batch(q1, detail::stack(batch.states, to_env_actions(squashed)), &ccache).row(0);
    report.actor_loss = -q.mean();
    const Matrix d_action = detail::action_gradient(
        q1, ccache, Eigen::RowVectorXd::Constant(batch.size(), -1.0 / n), state_dim_, action_dim_);
    MlpGrads grads;
    backward_batch(actor, acache, d_action.array().colwise() * half_range().array(), grads);
    adam_step(actor, grads, actor_opt);
    report.actor_updated = true;

    soft_update(q1_target, q1, config_.tau);
    soft_update(q2_target, q2, config_.tau);
    soft_update(actor_target, actor, config_.tau);
  }
  updates_ = index;
  return report;
}

}  // namespace ipns::agents
