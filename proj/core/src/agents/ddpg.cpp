#include "ipns/agents/agent.hpp"
#include "network_ops.hpp"

namespace ipns::agents {

DdpgAgent::DdpgAgent(const AgentConfig& config, const envs::EnvSpec& spec, RngStream& init_rng)
    : Agent(config, spec, init_rng) {
  const auto hidden = config_.resolved_hidden();
  actor = make_mlp(detail::layer_sizes(state_dim_, hidden, action_dim_), Activation::relu,
                   Activation::tanh, init_rng);
  critic = make_mlp(detail::layer_sizes(state_dim_ + action_dim_, hidden, 1), Activation::relu,
                    Activation::linear, init_rng);
  actor_target = actor;
  critic_target = critic;
  AdamConfig adam;
  adam.learning_rate = config_.learning_rate;
  actor_opt = AdamState::for_params(actor, adam);
  critic_opt = AdamState::for_params(critic, adam);
}

std::vector<ParamRef> DdpgAgent::primary_parameters() {
  return {{"actor", &actor, &actor_opt},
          {"critic", &critic, &critic_opt},
          {"actor_target", &actor_target, nullptr},
          {"critic_target", &critic_target, nullptr}};
}

Vector DdpgAgent::act(const Vector& state, ActMode mode, RngStream& rng) const {
  check_state(state, state_dim_);
  Vector a = to_env_actions(mlp_forward(actor, state));
  if (mode == ActMode::deterministic) return a;
  const Vector half = half_range();
  for (int i = 0; i < action_dim_; ++i) a(i) += rng.normal(0.0, config_.action_noise * half(i));
  return clip_actions(a);
}

Vector DdpgAgent::critic_targets(const Batch& batch, double beta, RngStream& /*rng*/) const {
  check_batch(batch);
  const Matrix next_actions = to_env_actions(forward_batch(actor_target, batch.next_states));
  const Eigen::RowVectorXd q_next =
      forward_batch(critic_target, detail::stack(batch.next_states, next_actions)).row(0);
  return (composed_rewards(batch, beta).array() +
          config_.gamma * (1.0 - batch.done.array()) * q_next.transpose().array())
      .matrix();
}

UpdateReport DdpgAgent::update(const Batch& batch, double beta, RngStream& rng) {
  check_batch(batch);
  UpdateReport report;
  const double n = static_cast<double>(batch.size());
  const Vector y = critic_targets(batch, beta, rng);
  report.critic_loss =
      detail::regress(critic, critic_opt, detail::stack(batch.states, batch.actions), y);

  // actor ascends Q(s, mu(s))
  ForwardCache acache, ccache;
  const Matrix squashed = forward_batch(actor, batch.states, &acache);
  const Eigen::RowVectorXd q =
      forward_batch(critic, detail::stack(batch.states, to_env_actions(squashed)), &ccache).row(0);
  report.actor_loss = -q.mean();
  const Matrix d_action = detail::action_gradient(
      critic, ccache, Eigen::RowVectorXd::Constant(batch.size(), -1.0 / n), state_dim_, action_dim_);
  MlpGrads grads;
  backward_batch(actor, acache, d_action.array().colwise() * half_range().array(), grads);
  adam_step(actor, grads, actor_opt);
  report.actor_updated = true;

  soft_update(critic_target, critic, config_.tau);
  soft_update(actor_target, actor, config_.tau);
  ++updates_;
  return report;
}

}  // namespace ipns::agents
