#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ipns/agents/agent.hpp"
#include "ipns/agents/checkpoint.hpp"
#include "ipns/agents/replay_buffer.hpp"
#include "ipns/agents/transition.hpp"
#include "ipns/envs/environment.hpp"
#include "ipns/numerics/errors.hpp"
#include "oracles.hpp"

using namespace ipns;
using namespace ipns::agents;

namespace {

Transition make_transition(double tag, int sdim = 2, int adim = 1) {
  Transition t;
  t.state = Vector::Constant(sdim, tag);
  t.action = Vector::Constant(adim, tag / 10.0);
  t.reward = tag;
  t.next_state = Vector::Constant(sdim, tag + 1);
  return t;
}

AgentConfig small_config(Algorithm algo) {
  AgentConfig c;
  c.algorithm = algo;
  c.hidden = {16, 16};
  c.value_hidden = {16, 16};
  c.batch_size = 8;
  c.replay_capacity = 1000;
  return c;
}

const envs::EnvSpec& reacher_spec() {
  static const envs::EnvSpec spec = envs::make_env("planar_reacher")->spec();
  return spec;
}

Batch random_batch(int n, RngStream& rng, double done_prob = 0.2, bool with_intrinsic = false) {
  std::vector<Transition> ts;
  const auto& spec = reacher_spec();
  for (int i = 0; i < n; ++i) {
    Transition t;
    t.state = Vector(spec.state_dim);
    t.next_state = Vector(spec.state_dim);
    for (auto& v : t.state) v = rng.normal();
    for (auto& v : t.next_state) v = rng.normal();
    t.action = envs::random_action(spec, rng);
    t.reward = rng.normal();
    t.intrinsic = with_intrinsic ? rng.uniform(0.01, 1.0) : 0.0;
    t.done = rng.uniform() < done_prob;
    ts.push_back(t);
  }
  return Batch::from(ts);
}

std::unique_ptr<Agent> build(Algorithm algo, std::uint64_t seed = 1) {
  RngStream rng("init", seed);
  return make_agent(small_config(algo), reacher_spec(), rng);
}

void expect_soft_updated(const MlpParams& old_target, const MlpParams& online, const MlpParams& target,
                         double tau) {
  for (std::size_t k = 0; k < target.layers.size(); ++k) {
    const Matrix w = (1.0 - tau) * old_target.layers[k].weight + tau * online.layers[k].weight;
    const Vector b = (1.0 - tau) * old_target.layers[k].bias + tau * online.layers[k].bias;
    EXPECT_EQ((target.layers[k].weight - w).norm(), 0.0);
    EXPECT_EQ((target.layers[k].bias - b).norm(), 0.0);
  }
}

void make_constant(MlpParams& net, double value) {
  net.layers.back().weight.setZero();
  net.layers.back().bias.setConstant(value);
}

}  // namespace

class AllAgents : public ::testing::TestWithParam<Algorithm> {};

// Replay buffer

TEST(Replay, PushAndRingOrder) {
  ReplayBuffer rb(2, 2, 1);
  rb.push(make_transition(1));
  EXPECT_EQ(rb.size(), 1u);
  rb.push(make_transition(2));
  rb.push(make_transition(3));
  ASSERT_EQ(rb.size(), 2u);
  EXPECT_EQ(rb.at(0).reward, 2.0);
  EXPECT_EQ(rb.at(1).reward, 3.0);
  EXPECT_EQ(rb.at(1).next_state, Vector::Constant(2, 4.0));
}

TEST(Replay, MillionPushesAtCapacity) {
  ReplayBuffer rb(1'000'000, 1, 1);
  Transition t = make_transition(0.5, 1, 1);
  for (int i = 0; i < 1'000'000; ++i) rb.push(t);
  EXPECT_EQ(rb.size(), 1'000'000u);
  rb.push(t);
  EXPECT_EQ(rb.size(), 1'000'000u);
}

TEST(Replay, SingleTransitionSample) {
  ReplayBuffer rb(10, 2, 1);
  rb.push(make_transition(7));
  RngStream rng("s", 1);
  const Batch b = rb.sample(1, rng);
  EXPECT_EQ(b.rewards[0], 7.0);
  EXPECT_EQ(b.states.col(0), Vector::Constant(2, 7.0));
}

TEST(Replay, InsufficientData) {
  ReplayBuffer rb(10, 2, 1);
  rb.push(make_transition(1));
  RngStream rng("s", 1);
  EXPECT_THROW(rb.sample(2, rng), InsufficientDataError);
}

TEST(Replay, ChiSquaredUniformity) {
  ReplayBuffer rb(100, 1, 1);
  for (int i = 0; i < 100; ++i) rb.push(make_transition(i, 1, 1));
  RngStream rng("chi", 12345);
  std::vector<double> counts(100, 0.0);
  for (int draw = 0; draw < 1000; ++draw)
    for (std::size_t idx : rb.sample_indices(100, rng)) counts[idx] += 1.0;
  const double expected = 1e5 / 100.0;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // upper 0.001 quantile of chi-squared with 99 degrees of freedom
  EXPECT_LT(chi2, 148.23);
}

TEST(Replay, SamplingIsDeterministic) {
  ReplayBuffer rb(50, 2, 1);
  for (int i = 0; i < 50; ++i) rb.push(make_transition(i));
  RngStream a("r", 3), b("r", 3);
  EXPECT_EQ(rb.sample_indices(20, a), rb.sample_indices(20, b));
}

// Reward composition

TEST(ComposeReward, Cases) {
  EXPECT_EQ(compose_reward(3.25, 0.7, 0.0, true), 3.25);
  EXPECT_NEAR(compose_reward(10.0, 1.0, 0.1, true), 9.1, 9.1 * 1e-12);
  EXPECT_NEAR(compose_reward(10.0, 1.0, 0.1, true), oracle::eq7(10.0, 1.0, 0.1), 1e-12);
  EXPECT_EQ(compose_reward(3.25, 0.7, 0.1, false), 3.25);
  Transition t = make_transition(2.0);
  EXPECT_EQ(compose_reward(t, 0.5), 2.0);  // intrinsic unassigned
}

// Agent behaviour shared by all three algorithms

TEST_P(AllAgents, DeterministicActIsRepeatable) {
  auto agent = build(GetParam());
  RngStream rng("act", 1);
  Vector s = Vector::LinSpaced(10, -1, 1);
  EXPECT_EQ(agent->act(s, ActMode::deterministic, rng), agent->act(s, ActMode::deterministic, rng));
  s[0] = NAN;
  EXPECT_THROW(agent->act(s, ActMode::stochastic, rng), DomainError);
}

TEST_P(AllAgents, TerminalBatchTargetEqualsComposedReward) {
  auto agent = build(GetParam());
  RngStream rng("b", 2);
  Batch batch = random_batch(16, rng, 1.0, true);
  const Vector y = agent->critic_targets(batch, 0.3, rng);
  for (Eigen::Index j = 0; j < batch.size(); ++j)
    EXPECT_EQ(y[j], oracle::eq7(batch.rewards[j], batch.intrinsic[j], 0.3));
}

TEST_P(AllAgents, BetaZeroIgnoresIntrinsic) {
  auto a = build(GetParam(), 5);
  auto b = a->clone();
  RngStream data("b", 3);
  Batch plain = random_batch(32, data);
  Batch tagged = plain;
  for (auto& v : tagged.intrinsic) v = 0.5;
  RngStream ra("u", 9), rb("u", 9);
  for (int i = 0; i < 4; ++i) {
    a->update(plain, 0.0, ra);
    b->update(tagged, 0.0, rb);
  }
  EXPECT_EQ(a->primary_checksum(), b->primary_checksum());

  auto c = build(GetParam(), 5);
  RngStream rc("u", 9);
  for (int i = 0; i < 4; ++i) c->update(tagged, 0.5, rc);
  EXPECT_NE(a->primary_checksum(), c->primary_checksum());
}

TEST_P(AllAgents, EmptyBatchThrows) {
  auto agent = build(GetParam());
  RngStream rng("e", 1);
  Batch empty = Batch::from({});
  EXPECT_THROW(agent->update(empty, 0.0, rng), InsufficientDataError);
}

TEST_P(AllAgents, CheckpointRoundTripIsBitExact) {
  auto agent = build(GetParam(), 3);
  RngStream data("d", 4), upd("u", 5);
  for (int i = 0; i < 6; ++i) {
    const Batch b = random_batch(8, data);
    agent->update(b, 0.0, upd);
    agent->update_value(b);
  }
  std::stringstream ss;
  save_checkpoint(ss, *agent, {data, upd});
  auto fresh = build(GetParam(), 99);
  ASSERT_NE(fresh->full_checksum(), agent->full_checksum());
  const auto rngs = load_checkpoint(ss, *fresh);
  EXPECT_EQ(fresh->full_checksum(), agent->full_checksum());
  EXPECT_EQ(fresh->update_count(), agent->update_count());
  ASSERT_EQ(rngs.size(), 2u);
  EXPECT_EQ(rngs[0], data);
  EXPECT_EQ(rngs[1], upd);
}

TEST_P(AllAgents, CriticTargetsFinite) {
  auto agent = build(GetParam());
  RngStream rng("f", 6);
  const Batch b = random_batch(32, rng, 0.3, true);
  EXPECT_TRUE(agent->critic_targets(b, 0.2, rng).allFinite());
}

INSTANTIATE_TEST_SUITE_P(Agents, AllAgents, ::testing::Values(Algorithm::sac, Algorithm::ddpg, Algorithm::td3),
                         [](const auto& info) { return std::string(to_string(info.param)); });

// SAC

TEST(Sac, SoftUpdateAfterOneStep) {
  auto base = build(Algorithm::sac);
  auto& sac = dynamic_cast<SacAgent&>(*base);
  const MlpParams t1 = sac.q1_target, t2 = sac.q2_target;
  RngStream rng("s", 1);
  sac.update(random_batch(8, rng), 0.0, rng);
  expect_soft_updated(t1, sac.q1, sac.q1_target, 0.01);
  expect_soft_updated(t2, sac.q2, sac.q2_target, 0.01);
}

TEST(Sac, EntropyCoefficientScaledByOneMinusBeta) {
  // Constant critics: y = r_comp + gamma * (min q - alpha' log pi), with log pi
  // identical across calls that share the noise stream state.
  auto base = build(Algorithm::sac, 1);
  auto& sac = dynamic_cast<SacAgent&>(*base);
  make_constant(sac.q1_target, 1.0);
  make_constant(sac.q2_target, 2.0);
  RngStream data("d", 2);
  const Batch b = random_batch(4, data, 0.0, true);
  const double beta = 0.25;
  RngStream r0("n", 3), r1("n", 3);
  const Vector y = sac.critic_targets(b, beta, r0);
  const Vector y_plain = sac.critic_targets(b, 0.0, r1);
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    const double entropy_plain = y_plain[j] - b.rewards[j] - 0.99 * 1.0;
    const double entropy_ipns = y[j] - oracle::eq7(b.rewards[j], b.intrinsic[j], beta) - 0.99 * 1.0;
    EXPECT_NEAR(entropy_ipns, (1.0 - beta) * entropy_plain, 1e-12 * std::max(1.0, std::abs(entropy_plain)));
  }
}

TEST(Sac, StochasticActionsWithinBoundsAndUnbiased) {
  auto base = build(Algorithm::sac, 7);
  auto& sac = dynamic_cast<SacAgent&>(*base);
  const Vector s = Vector::LinSpaced(10, -0.5, 0.5);
  const Vector out = mlp_forward(sac.policy, s);
  RngStream rng("mc", 8);
  const int n = 10000;
  Matrix draws(2, n);
  for (int i = 0; i < n; ++i) draws.col(i) = sac.act(s, ActMode::stochastic, rng);
  EXPECT_LE(draws.maxCoeff(), 1.0);
  EXPECT_GE(draws.minCoeff(), -1.0);
  for (int d = 0; d < 2; ++d) {
    const double mu = out[d];
    const double sigma = std::exp(std::clamp(out[2 + d], SacAgent::kLogStdMin, SacAgent::kLogStdMax));
    // E[tanh(mu + sigma e)] by trapezoidal quadrature against the normal density
    double expect = 0.0;
    const int grid = 20001;
    const double h = 16.0 / (grid - 1);
    for (int k = 0; k < grid; ++k) {
      const double e = -8.0 + k * h;
      const double w = (k == 0 || k == grid - 1) ? 0.5 : 1.0;
      expect += w * std::tanh(mu + sigma * e) * std::exp(-0.5 * e * e);
    }
    expect *= h / std::sqrt(2.0 * std::numbers::pi);
    const double mean = draws.row(d).mean();
    const double sd = std::sqrt((draws.row(d).array() - mean).square().sum() / (n - 1));
    EXPECT_LT(std::abs(mean - expect), 3.0 * sd / std::sqrt(n));
  }
}

TEST(Sac, ActorGradientMatchesFiniteDifferences) {
  auto base = build(Algorithm::sac, 11);
  auto& sac = dynamic_cast<SacAgent&>(*base);
  RngStream rng("fd", 12);
  Matrix states(10, 6), noise(2, 6);
  for (auto& v : states.reshaped()) v = rng.normal();
  for (auto& v : noise.reshaped()) v = rng.normal();
  MlpGrads g;
  sac.actor_objective(states, noise, 0.2, &g);
  const double h = 1e-6;
  double worst = 0.0;
  for (std::size_t k = 0; k < sac.policy.layers.size(); ++k) {
    auto& w = sac.policy.layers[k].weight;
    for (Eigen::Index i = 0; i < w.size(); i += 7) {
      const double keep = w.data()[i];
      w.data()[i] = keep + h;
      const double up = sac.actor_objective(states, noise, 0.2, nullptr);
      w.data()[i] = keep - h;
      const double down = sac.actor_objective(states, noise, 0.2, nullptr);
      w.data()[i] = keep;
      const double numeric = (up - down) / (2 * h);
      const double analytic = g.layers[k].weight.data()[i];
      worst = std::max(worst, std::abs(analytic - numeric) /
                                  std::max({std::abs(analytic), std::abs(numeric), 1e-6}));
    }
  }
  EXPECT_LT(worst, 1e-4);
}

// DDPG

TEST(Ddpg, ExplorationNoiseIsAddedThenClipped) {
  auto base = build(Algorithm::ddpg, 2);
  auto& ddpg = dynamic_cast<DdpgAgent&>(*base);
  const Vector s = Vector::LinSpaced(10, -0.2, 0.2);
  RngStream rng("noise", 4);
  const Vector mu = ddpg.act(s, ActMode::deterministic, rng);
  RngStream replay = rng;
  const int n = 10000;
  double ss = 0.0;
  int unclipped = 0;
  for (int i = 0; i < n; ++i) {
    const Vector a = ddpg.act(s, ActMode::stochastic, rng);
    for (int d = 0; d < 2; ++d) {
      const double expect = std::clamp(mu[d] + replay.normal(0.0, 0.1), -1.0, 1.0);
      ASSERT_EQ(a[d], expect);
      if (std::abs(a[d]) < 1.0) {
        ss += (a[d] - mu[d]) * (a[d] - mu[d]);
        ++unclipped;
      }
    }
  }
  EXPECT_NEAR(std::sqrt(ss / unclipped), 0.1, 0.003);
}

TEST(Ddpg, SoftUpdateAfterOneStep) {
  auto base = build(Algorithm::ddpg);
  auto& ddpg = dynamic_cast<DdpgAgent&>(*base);
  const MlpParams ct = ddpg.critic_target, at = ddpg.actor_target;
  RngStream rng("s", 1);
  ddpg.update(random_batch(8, rng), 0.0, rng);
  expect_soft_updated(ct, ddpg.critic, ddpg.critic_target, 0.01);
  expect_soft_updated(at, ddpg.actor, ddpg.actor_target, 0.01);
}

// TD3

TEST(Td3, ActorMovesOnlyOnEvenIndices) {
  auto base = build(Algorithm::td3);
  auto& td3 = dynamic_cast<Td3Agent&>(*base);
  RngStream rng("td3", 1);
  int changes = 0;
  for (int call = 1; call <= 11; ++call) {
    const MlpParams before = td3.actor;
    const MlpParams target_before = td3.q1_target;
    const auto report = td3.update(random_batch(8, rng), 0.0, rng);
    const bool moved = !(before == td3.actor);
    EXPECT_EQ(moved, call % 2 == 0) << "call " << call;
    EXPECT_EQ(report.actor_updated, call % 2 == 0);
    EXPECT_EQ(!(target_before == td3.q1_target), call % 2 == 0);
    changes += moved;
  }
  EXPECT_EQ(changes, 11 / 2);
}

TEST(Td3, SmoothingNoiseIsClipped) {
  auto base = build(Algorithm::td3);
  auto& td3 = dynamic_cast<Td3Agent&>(*base);
  RngStream rng("clip", 2);
  const Matrix n = td3.smoothing_noise(50000, rng);  // 2 x 50000 = 10^5 draws
  EXPECT_LE(n.cwiseAbs().maxCoeff(), 0.5);
  EXPECT_EQ(n.cwiseAbs().maxCoeff(), 0.5);  // the clip is reached
  EXPECT_GT((n.array().abs() < 0.5).count(), 90000);
}

TEST(Td3, TargetTracksSmallerCritic) {
  auto base = build(Algorithm::td3);
  auto& td3 = dynamic_cast<Td3Agent&>(*base);
  make_constant(td3.q1_target, -3.0);
  make_constant(td3.q2_target, 4.0);
  RngStream rng("min", 3);
  const Batch b = random_batch(16, rng, 0.0);
  const Vector y = td3.critic_targets(b, 0.0, rng);
  for (Eigen::Index j = 0; j < b.size(); ++j) EXPECT_NEAR(y[j], b.rewards[j] + 0.99 * -3.0, 1e-12);
}

// V-network

TEST(ValueNet, TdErrorHandEvaluation) {
  RngStream rng("v", 1);
  ValueNetwork v(2, {8}, AdamConfig{}, rng);
  make_constant(v.online, 0.0);
  make_constant(v.target, 0.0);
  Transition t = make_transition(0.0);
  t.reward = 1.0;
  const Batch b = Batch::from(std::span<const Transition>(&t, 1));
  EXPECT_EQ(v.td_errors(b, 0.99)[0], 1.0);
  EXPECT_EQ(v.td_errors(b, 0.99)[0], oracle::td_error(1.0, 0.99, false, 0.0, 0.0));
}

TEST(ValueNet, FixedPointLeavesParametersUnchanged) {
  RngStream rng("v", 2);
  ValueNetwork v(2, {8}, AdamConfig{}, rng);
  make_constant(v.online, 0.0);
  v.target = v.online;
  Transition t = make_transition(0.0);
  t.reward = 0.0;
  const Batch b = Batch::from(std::span<const Transition>(&t, 1));
  const MlpParams before = v.online;
  EXPECT_EQ(v.update(b, 0.99, 0.01), 0.0);
  EXPECT_EQ(v.online, before);
}

TEST(ValueNet, ContractsToTerminalReward) {
  RngStream rng("v", 3);
  ValueNetwork v(2, {16, 16}, AdamConfig{}, rng);
  Transition t = make_transition(0.3);
  t.reward = 0.7;
  t.done = true;
  const Batch b = Batch::from(std::span<const Transition>(&t, 1));
  for (int i = 0; i < 20000; ++i) v.update(b, 0.99, 0.01);
  EXPECT_NEAR(v.value(t.state), 0.7, 1e-3);
}

TEST(ValueNet, UsesExtrinsicRewardOnly) {
  RngStream rng("v", 4);
  ValueNetwork v(10, {8}, AdamConfig{}, rng);
  RngStream data("d", 5);
  Batch a = random_batch(8, data);
  Batch b = a;
  for (auto& x : b.intrinsic) x = 0.9;
  EXPECT_EQ(v.td_errors(a, 0.99), v.td_errors(b, 0.99));
}
