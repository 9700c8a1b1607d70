#include <cmath>
#include <numbers>

#include "ipns/agents/agent.hpp"
#include "network_ops.hpp"

namespace ipns::agents {
namespace {

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// log(1 - tanh(u)^2) without cancellation for large |u|
double log_one_minus_tanh_sq(double u) {
  return 2.0 * (std::numbers::ln2 - u - softplus(-2.0 * u));
}

struct PolicySample {
  Matrix mean;
  Matrix log_std;
  Matrix in_range;  // 1 where the raw log-std was not clamped
  Matrix noise;
  Matrix pre_tanh;
  Matrix squashed;
  Eigen::RowVectorXd log_prob;
};

Matrix draw_noise(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
  Matrix xi(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) xi(i, j) = rng.normal();
  return xi;
}

PolicySample squash(const Matrix& out, int adim, Matrix noise, const Vector& half_range) {
  PolicySample p;
  p.mean = out.topRows(adim);
  const Matrix raw = out.bottomRows(adim);
  p.log_std = raw.cwiseMax(SacAgent::kLogStdMin).cwiseMin(SacAgent::kLogStdMax);
  p.in_range = (raw.array() >= SacAgent::kLogStdMin && raw.array() <= SacAgent::kLogStdMax)
                   .cast<double>()
                   .matrix();
  p.noise = std::move(noise);
  p.pre_tanh = p.mean.array() + p.log_std.array().exp() * p.noise.array();
  p.squashed = p.pre_tanh.array().tanh();
  const double log_norm = 0.5 * std::log(2.0 * std::numbers::pi);
  const double log_scale = half_range.array().log().sum();
  p.log_prob.resize(out.cols());
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    double lp = -log_scale;
    for (int i = 0; i < adim; ++i) {
      const double xi = p.noise(i, j);
      lp += -0.5 * xi * xi - p.log_std(i, j) - log_norm - log_one_minus_tanh_sq(p.pre_tanh(i, j));
    }
    p.log_prob(j) = lp;
  }
  return p;
}

}  // namespace

SacAgent::SacAgent(const AgentConfig& config, const envs::EnvSpec& spec, RngStream& init_rng)
    : Agent(config, spec, init_rng) {
  const auto hidden = config_.resolved_hidden();
  policy = make_mlp(detail::layer_sizes(state_dim_, hidden, 2 * action_dim_), Activation::relu,
                    Activation::linear, init_rng);
  const auto critic_sizes = detail::layer_sizes(state_dim_ + action_dim_, hidden, 1);
  q1 = make_mlp(critic_sizes, Activation::relu, Activation::linear, init_rng);
  q2 = make_mlp(critic_sizes, Activation::relu, Activation::linear, init_rng);
  q1_target = q1;
  q2_target = q2;
  AdamConfig adam;
  adam.learning_rate = config_.learning_rate;
  policy_opt = AdamState::for_params(policy, adam);
  q1_opt = AdamState::for_params(q1, adam);
  q2_opt = AdamState::for_params(q2, adam);
}

std::vector<ParamRef> SacAgent::primary_parameters() {
  return {{"policy", &policy, &policy_opt},
          {"q1", &q1, &q1_opt},
          {"q2", &q2, &q2_opt},
          {"q1_target", &q1_target, nullptr},
          {"q2_target", &q2_target, nullptr}};
}

Vector SacAgent::act(const Vector& state, ActMode mode, RngStream& rng) const {
  check_state(state, state_dim_);
  const Vector out = mlp_forward(policy, state);
  if (mode == ActMode::deterministic)
    return to_env_actions(out.head(action_dim_).array().tanh().matrix());
  const PolicySample p = squash(out, action_dim_, draw_noise(action_dim_, 1, rng), half_range());
  return to_env_actions(p.squashed).col(0);
}

Vector SacAgent::critic_targets(const Batch& batch, double beta, RngStream& rng) const {
  check_batch(batch);
  const double alpha = beta == 0.0 ? config_.alpha : (1.0 - beta) * config_.alpha;
  const Matrix out = forward_batch(policy, batch.next_states);
  const PolicySample next =
      squash(out, action_dim_, draw_noise(action_dim_, batch.size(), rng), half_range());
  const Matrix next_input = detail::stack(batch.next_states, to_env_actions(next.squashed));
  const Eigen::RowVectorXd t1 = forward_batch(q1_target, next_input).row(0);
  const Eigen::RowVectorXd t2 = forward_batch(q2_target, next_input).row(0);
  const Eigen::ArrayXd soft_value = t1.array().min(t2.array()).transpose() -
                                    alpha * next.log_prob.array().transpose();
  return (composed_rewards(batch, beta).array() +
          config_.gamma * (1.0 - batch.done.array()) * soft_value)
      .matrix();
}

double SacAgent::actor_objective(const Matrix& states, const Matrix& noise, double alpha,
                                 MlpGrads* grads) const {
  const auto b = states.cols();
  const double n = static_cast<double>(b);
  ForwardCache pcache;
  const Matrix out = forward_batch(policy, states, &pcache);
  const PolicySample p = squash(out, action_dim_, noise, half_range());
  const Matrix input = detail::stack(states, to_env_actions(p.squashed));
  ForwardCache c1, c2;
  const Eigen::RowVectorXd v1 = forward_batch(q1, input, &c1).row(0);
  const Eigen::RowVectorXd v2 = forward_batch(q2, input, &c2).row(0);
  Eigen::RowVectorXd w1(b), w2(b);
  double loss = 0.0;
  for (Eigen::Index j = 0; j < b; ++j) {
    const bool first = v1(j) <= v2(j);
    w1(j) = first ? -1.0 / n : 0.0;
    w2(j) = first ? 0.0 : -1.0 / n;
    loss += alpha * p.log_prob(j) - (first ? v1(j) : v2(j));
  }
  if (!grads) return loss / n;

  const Matrix d_action = detail::action_gradient(q1, c1, w1, state_dim_, action_dim_) +
                          detail::action_gradient(q2, c2, w2, state_dim_, action_dim_);
  const Eigen::ArrayXXd t = p.squashed.array();
  // d log pi / du = 2 tanh(u) through the squashing correction
  const Eigen::ArrayXXd d_pre =
      (d_action.array().colwise() * half_range().array()) * (1.0 - t.square()) +
      (2.0 * alpha / n) * t;
  Matrix upstream(2 * action_dim_, b);
  upstream.topRows(action_dim_) = d_pre.matrix();
  upstream.bottomRows(action_dim_) =
      ((d_pre * p.log_std.array().exp() * p.noise.array() - alpha / n) * p.in_range.array())
          .matrix();
  backward_batch(policy, pcache, upstream, *grads);
  return loss / n;
}

UpdateReport SacAgent::update(const Batch& batch, double beta, RngStream& rng) {
  check_batch(batch);
  UpdateReport report;
  const double alpha = beta == 0.0 ? config_.alpha : (1.0 - beta) * config_.alpha;

  const Vector y = critic_targets(batch, beta, rng);
  const Matrix sa = detail::stack(batch.states, batch.actions);
  report.critic_loss = 0.5 * (detail::regress(q1, q1_opt, sa, y) + detail::regress(q2, q2_opt, sa, y));

  MlpGrads grads;
  report.actor_loss =
      actor_objective(batch.states, draw_noise(action_dim_, batch.size(), rng), alpha, &grads);
  adam_step(policy, grads, policy_opt);
  report.actor_updated = true;

  soft_update(q1_target, q1, config_.tau);
  soft_update(q2_target, q2, config_.tau);
  ++updates_;
  return report;
}

}  // namespace ipns::agents
