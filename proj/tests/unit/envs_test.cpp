#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ipns/envs/environment.hpp"
#include "ipns/envs/pendulum.hpp"
#include "ipns/envs/planar_reacher.hpp"
#include "ipns/envs/point_mass.hpp"
#include "ipns/numerics/errors.hpp"
#include "oracles.hpp"

using namespace ipns;
using namespace ipns::envs;

TEST(Envs, CatalogDimensions) {
  EXPECT_EQ(make_env("planar_reacher")->spec().state_dim, 10);
  EXPECT_EQ(make_env("planar_reacher")->spec().max_steps, 50);
  EXPECT_EQ(make_env("pendulum_swingup")->spec().state_dim, 3);
  EXPECT_EQ(make_env("point_mass_2d")->spec().state_dim, 6);
  EXPECT_EQ(make_env("point_mass_2d_sparse")->spec().state_dim, 6);
  EXPECT_THROW(make_env("hopper"), ConfigError);
}

TEST(Reacher, OnTargetZeroActionGivesZeroReward) {
  PlanarReacher env;
  env.set_configuration(0.3, -0.2, 0.0, 0.0, 0.0, 0.0);
  const Eigen::Vector2d e = env.effector();
  env.set_configuration(0.3, -0.2, 0.0, 0.0, e.x(), e.y());
  RngStream rng("r", 1);
  EXPECT_EQ(env.step(Vector::Zero(2), rng).reward, 0.0);
}

TEST(Reacher, HandEvaluatedReward) {
  EXPECT_NEAR(PlanarReacher::reward({0.3, 0.4}, Vector{{0.1, 0.1}}), -0.27, 1e-15);
  PlanarReacher env;
  env.set_configuration(0.1, 0.2, 0.0, 0.0, 0.0, 0.0);
  const Eigen::Vector2d e = env.effector();
  env.set_configuration(0.1, 0.2, 0.0, 0.0, e.x() - 0.3, e.y() - 0.4);
  RngStream rng("r", 1);
  EXPECT_NEAR(env.step(Vector::Zero(2), rng).reward, -0.25, 1e-15);
}

TEST(Reacher, RewardConformanceOnRandomPairs) {
  PlanarReacher env;
  RngStream rng("conf", 17);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    env.set_configuration(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-5, 5), rng.uniform(-5, 5),
                          rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2));
    const Vector a{{rng.uniform(-1, 1), rng.uniform(-1, 1)}};
    const StepResult r = env.step(a, rng);
    const double expect = oracle::reacher_reward(r.state[8], r.state[9], a[0], a[1]);
    worst = std::max(worst, std::abs(r.reward - expect));
  }
  EXPECT_LT(worst, 1e-15);
}

TEST(Reacher, ObservationLayout) {
  PlanarReacher env;
  RngStream rng("obs", 2);
  const Vector s = env.reset(rng);
  ASSERT_EQ(s.size(), 10);
  EXPECT_NEAR(s[0] * s[0] + s[2] * s[2], 1.0, 1e-15);
  EXPECT_NEAR(s[1] * s[1] + s[3] * s[3], 1.0, 1e-15);
  EXPECT_EQ(s[6], 0.0);
  EXPECT_EQ(s[7], 0.0);
  const Eigen::Vector2d e = env.effector();
  EXPECT_NEAR(s[8], e.x() - s[4], 1e-15);
  const double reach = std::hypot(s[4], s[5]);
  EXPECT_GE(reach, 0.01 - 1e-12);
  EXPECT_LE(reach, 0.21 + 1e-12);
}

TEST(Reacher, ResetIsDeterministicPerSeed) {
  PlanarReacher a, b;
  RngStream ra("env", 3), rb("env", 3);
  EXPECT_EQ(a.reset(ra), b.reset(rb));
}

TEST(Env, TruncatesExactlyAtT) {
  for (const auto& name : env_names()) {
    auto env = make_env(name);
    RngStream rng("t", 4);
    env->reset(rng);
    const int T = env->spec().max_steps;
    for (int t = 1; t <= T; ++t) {
      const StepResult r = env->step(random_action(env->spec(), rng), rng);
      EXPECT_EQ(r.truncated, t == T) << name << " step " << t;
      EXPECT_FALSE(r.done);
    }
    EXPECT_THROW(env->step(random_action(env->spec(), rng), rng), std::logic_error);
  }
}

TEST(Env, ClipsAndRejectsActions) {
  auto env = make_env("planar_reacher");
  RngStream rng("c", 5);
  env->reset(rng);
  EXPECT_TRUE(env->step(Vector{{3.0, 0.0}}, rng).action_clipped);
  EXPECT_FALSE(env->step(Vector{{0.5, 0.0}}, rng).action_clipped);
  EXPECT_THROW(env->step(Vector{{NAN, 0.0}}, rng), DomainError);
  EXPECT_THROW(env->step(Vector::Zero(3), rng), ShapeError);
}

TEST(Env, StableOverLongRandomRuns) {
  for (const auto& name : env_names()) {
    auto env = make_env(name);
    RngStream rng("stable", 6);
    Vector s = env->reset(rng);
    bool finite = true;
    for (int i = 0; i < 100000; ++i) {
      const StepResult r = env->step(random_action(env->spec(), rng), rng);
      finite = finite && r.state.allFinite() && std::isfinite(r.reward);
      if (r.done || r.truncated) env->reset(rng);
    }
    EXPECT_TRUE(finite) << name;
  }
}

TEST(PointMass, ZeroNoiseResetIsAtOrigin) {
  PointMass2d::Config cfg;
  cfg.initial_noise = 0.0;
  cfg.fixed_goal = Eigen::Vector2d(0.5, -0.25);
  PointMass2d env(cfg);
  RngStream rng("pm", 1);
  const Vector s = env.reset(rng);
  EXPECT_EQ(s, (Vector{{0, 0, 0, 0, 0.5, -0.25}}));
}

TEST(PointMass, DenseRewardTwoStepIntegration) {
  PointMass2d::Config cfg;
  cfg.initial_noise = 0.0;
  cfg.fixed_goal = Eigen::Vector2d(0.5, 0.0);
  PointMass2d env(cfg);
  RngStream rng("pm", 1);
  env.reset(rng);
  // v1 = dt * gain = 0.1, p1 = dt * v1 = 0.005
  // v2 = 0.1 + dt * (2 - 0.1) = 0.195, p2 = 0.005 + 0.00975 = 0.01475
  const double r1 = env.step(Vector{{1.0, 0.0}}, rng).reward;
  const double r2 = env.step(Vector{{1.0, 0.0}}, rng).reward;
  EXPECT_NEAR(r1, -0.495, 1e-14);
  EXPECT_NEAR(r2, -0.48525, 1e-14);
  EXPECT_LT(std::abs(r2), std::abs(r1));
}

TEST(PointMass, SparseRewardInsideRadius) {
  PointMass2d::Config cfg;
  cfg.sparse = true;
  cfg.initial_noise = 0.0;
  cfg.fixed_goal = Eigen::Vector2d(0.0, 0.0);
  PointMass2d env(cfg);
  RngStream rng("pm", 1);
  env.reset(rng);
  EXPECT_EQ(env.step(Vector::Zero(2), rng).reward, 1.0);
}

TEST(Pendulum, ResetAnglesWithinBounds) {
  PendulumSwingup env;
  RngStream rng("pend", 8);
  double lo = 10, hi = -10;
  for (int i = 0; i < 1000; ++i) {
    env.reset(rng);
    lo = std::min(lo, env.angle());
    hi = std::max(hi, env.angle());
    EXPECT_LE(std::abs(env.speed()), env.config().initial_speed_bound);
  }
  EXPECT_GE(lo, -std::numbers::pi);
  EXPECT_LE(hi, std::numbers::pi);
  EXPECT_LT(lo, -2.5);  // the whole interval is covered
  EXPECT_GT(hi, 2.5);
}

TEST(Pendulum, UprightAtRestCostsOnlyTorque) {
  PendulumSwingup env;
  env.set_state(0.0, 0.0);
  RngStream rng("p", 1);
  const double r = env.step(Vector{{0.5}}, rng).reward;
  EXPECT_NEAR(r, -0.001 * 1.0 * 1.0, 1e-15);  // u = max_torque * 0.5 = 1
}

TEST(Rollout, ReturnsExactlyRequestedStates) {
  auto env = make_env("planar_reacher");
  RngStream rng("ro", 1);
  EXPECT_EQ(env_random_rollout(*env, 1, rng).size(), 1u);
  RngStream a("ro", 2), b("ro", 2);
  auto e2 = make_env("planar_reacher");
  const auto xs = env_random_rollout(*env, 10000, a);
  const auto ys = env_random_rollout(*e2, 10000, b);
  ASSERT_EQ(xs.size(), 10000u);
  for (const auto& s : xs) EXPECT_EQ(s.size(), 10);
  EXPECT_EQ(xs, ys);
}
