// Acceptance suite: one PASS/FAIL line per criterion.
//
//   ipns_acceptance [--only N] [--out DIR]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "ipns/agents/agent.hpp"
#include "ipns/envs/environment.hpp"
#include "ipns/envs/planar_reacher.hpp"
#include "ipns/harness/comparison.hpp"
#include "ipns/harness/curves.hpp"
#include "ipns/harness/output.hpp"
#include "ipns/harness/trainer.hpp"
#include "ipns/intrinsic/autoencoder.hpp"
#include "ipns/intrinsic/density.hpp"
#include "ipns/intrinsic/hvd.hpp"
#include "ipns/intrinsic/scoring.hpp"
#include "ipns/numerics/mlp.hpp"
#include "oracles.hpp"

using namespace ipns;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool rel_close(double got, double want, double tol = 1e-12) {
  return std::abs(got - want) <= tol * std::max(std::abs(want), 1e-300);
}

fs::path g_out = "acceptance_out";

// 1 -------------------------------------------------------------------------

Outcome gradient_correctness() {
  RngStream rng("acceptance-grad", 1);
  const Activation kinds[] = {Activation::elu, Activation::tanh, Activation::sigmoid, Activation::linear};
  const double h = 1e-5;
  double worst = 0.0;
  for (int probe = 0; probe < 100; ++probe) {
    std::vector<int> sizes{1 + static_cast<int>(rng.index(8))};
    const int depth = 1 + static_cast<int>(rng.index(3));
    for (int d = 0; d < depth; ++d) sizes.push_back(1 + static_cast<int>(rng.index(10)));
    MlpParams p = make_mlp(sizes, kinds[rng.index(4)], kinds[rng.index(4)], rng);
    Vector x(sizes.front()), target(sizes.back());
    for (auto& v : x) v = rng.normal();
    for (auto& v : target) v = rng.normal();
    auto loss = [&](const MlpParams& q) { return 0.5 * (mlp_forward(q, x) - target).squaredNorm(); };
    const MlpGrads g = mlp_backward(p, x, mlp_forward(p, x) - target);
    for (std::size_t k = 0; k < p.layers.size(); ++k) {
      auto check = [&](double& param, double analytic) {
        const double keep = param;
        param = keep + h;
        const double up = loss(p);
        param = keep - h;
        const double down = loss(p);
        param = keep;
        const double numeric = (up - down) / (2 * h);
        worst = std::max(worst, std::abs(analytic - numeric) /
                                    std::max({std::abs(analytic), std::abs(numeric), 1e-8}));
      };
      for (Eigen::Index i = 0; i < p.layers[k].weight.size(); ++i)
        check(p.layers[k].weight.data()[i], g.layers[k].weight.data()[i]);
      for (Eigen::Index i = 0; i < p.layers[k].bias.size(); ++i)
        check(p.layers[k].bias.data()[i], g.layers[k].bias.data()[i]);
    }
  }
  return {worst < 1e-4, fmt("max relative error %.3g over 100 probes (limit 1e-4)", worst)};
}

// 2 -------------------------------------------------------------------------

Outcome hvd_oracle_equivalence() {
  RngStream data("acceptance-hvd-oracle", 2);
  int exact = 0, oracle_agree = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = 1 + data.index(300);
    const int dim = 1 + static_cast<int>(data.index(5));
    intrinsic::EncodedStateBuffer buf(dim);
    std::vector<oracle::Vec> pts;
    for (std::size_t i = 0; i < n; ++i) {
      Vector z(dim);
      for (auto& v : z) v = data.uniform(0.01, 0.99);
      buf.push(z);
      pts.emplace_back(z.begin(), z.end());
    }
    const double c = trial % 2 ? 1.0 : 3.0;
    intrinsic::HvdParams params;
    params.candidates = static_cast<int>(n);
    params.density.minibatches = 1;
    params.density.minibatch_size_override = n;
    params.density.c = c;
    RngStream rng("hvd", static_cast<std::uint64_t>(trial));
    const auto est = intrinsic::estimate_hvd_now(buf, params, rng);
    const Vector abs = intrinsic::abs_hvd(buf, c);
    exact += est.point == abs && est.index == intrinsic::abs_hvd_index(buf, c);
    oracle_agree += est.index == oracle::abs_hvd_index(pts, c);
  }
  return {exact == 50 && oracle_agree == 50,
          fmt("%d/50 buffers match abs_hvd exactly, %d/50 match the loop oracle", exact, oracle_agree)};
}

// 3 -------------------------------------------------------------------------

intrinsic::EncodedStateBuffer two_gaussian_buffer(RngStream& rng, std::size_t n) {
  intrinsic::EncodedStateBuffer buf(2);
  const Vector centers[] = {Vector{{0.3, 0.35}}, Vector{{0.7, 0.65}}};
  const double sigmas[] = {0.08, 0.06};
  while (buf.size() < n) {
    const int k = rng.uniform() < 0.6 ? 0 : 1;
    Vector z{{rng.normal(centers[k][0], sigmas[k]), rng.normal(centers[k][1], sigmas[k])}};
    if (z.minCoeff() > 0.0 && z.maxCoeff() < 1.0) buf.push(z);
  }
  return buf;
}

bool in_top_decile(const std::vector<double>& dens, std::size_t index) {
  const double d = dens[index];
  const auto above = std::count_if(dens.begin(), dens.end(), [&](double x) { return x > d; });
  return static_cast<double>(above) < 0.1 * static_cast<double>(dens.size());
}

Outcome hvd_estimator_fidelity() {
  const double c = 3.0;
  struct Setting {
    int j, i;
    double wp;
    int hits = 0;
  };
  std::vector<Setting> grid;
  for (int j : {5, 10, 15})
    for (int i : {50, 100})
      for (double wp : {1.0, 2.0}) grid.push_back({j, i, wp});
  int headline = 0;
  for (std::uint64_t repeat = 1; repeat <= 10; ++repeat) {
    RngStream data("acceptance-fidelity-data", repeat);
    const auto buf = two_gaussian_buffer(data, 10000);
    const auto dens = intrinsic::abs_densities(buf, c);
    {
      intrinsic::HvdParams p;
      p.candidates = 10;
      p.density = {100, 1.0, c, std::nullopt};
      RngStream rng("acceptance-fidelity-hvd", repeat);
      headline += in_top_decile(dens, intrinsic::estimate_hvd_now(buf, p, rng).index);
    }
    for (auto& s : grid) {
      intrinsic::HvdParams p;
      p.candidates = s.j;
      p.density = {s.i, s.wp, c, std::nullopt};
      RngStream rng("acceptance-fidelity-grid", repeat * 1000 + static_cast<std::uint64_t>(s.j * 10 + s.i));
      s.hits += in_top_decile(dens, intrinsic::estimate_hvd_now(buf, p, rng).index);
    }
  }
  std::string detail = fmt("J=10 I=100 wp=1 c=3: %d/10 repeats in the top 10%% (need 9);", headline);
  detail += fmt(" ceiling P(any of J candidates in top 10%%) = %.3f;", 1.0 - std::pow(0.9, 10));
  detail += " grid J/I/wp:";
  for (const auto& s : grid) detail += fmt(" %d/%d/%g=%d", s.j, s.i, s.wp, s.hits);
  return {headline >= 9, detail};
}

// 4 -------------------------------------------------------------------------

Outcome formula_conformance() {
  std::vector<std::string> failed;
  auto expect = [&](const char* what, double got, double want) {
    if (!rel_close(got, want)) failed.push_back(fmt("%s got %.17g want %.17g", what, got, want));
  };
  const std::vector<Vector> p{Vector{{1.0, 0.0}}};
  expect("den_p", intrinsic::den_p(Vector{{0.0, 0.0}}, p, 1.0), std::exp(-std::exp(-1.0)));
  expect("zeta", intrinsic::irg_normalize(1.0), 2.0 / (std::numbers::e + 1.0 / std::numbers::e));
  expect("eq7", agents::compose_reward(10.0, 1.0, 0.1, true), 9.1);

  RngStream rng("acceptance-td", 4);
  agents::ValueNetwork v(2, {8, 8}, AdamConfig{}, rng);
  for (auto* net : {&v.online, &v.target}) {
    net->layers.back().weight.setZero();
    net->layers.back().bias.setZero();
  }
  agents::Transition t;
  t.state = Vector{{0.3, -0.2}};
  t.next_state = Vector{{0.1, 0.4}};
  t.action = Vector::Zero(1);
  t.reward = 1.0;
  expect("td", v.td_errors(agents::Batch::from(std::span<const agents::Transition>(&t, 1)), 0.99)[0], 1.0);

  expect("reacher", envs::PlanarReacher::reward({0.3, 0.4}, Vector{{0.1, 0.1}}), -0.27);
  envs::PlanarReacher env;
  env.set_configuration(0.4, -0.9, 0.0, 0.0, 0.0, 0.0);
  const Eigen::Vector2d e = env.effector();
  env.set_configuration(0.4, -0.9, 0.0, 0.0, e.x() + 0.3, e.y() - 0.4);
  expect("reacher step", env.step(Vector::Zero(2), rng).reward, -0.25);

  std::string detail = failed.empty() ? "den_p, zeta, composed reward, TD delta, reacher reward within 1e-12 relative" : "";
  for (const auto& f : failed) detail += f + "; ";
  return {failed.empty(), detail};
}

// 5 -------------------------------------------------------------------------

Outcome range_invariants() {
  constexpr int kDraws = 100000;
  RngStream rng("acceptance-ranges", 5);
  int bad_density = 0, bad_zeta = 0, bad_eta = 0, bad_code = 0;

  intrinsic::EncodedStateBuffer buf(3);
  for (int i = 0; i < 64; ++i) buf.push(Vector{{rng.uniform(0.01, 0.99), rng.uniform(0.01, 0.99), rng.uniform(0.01, 0.99)}});
  intrinsic::DensityParams dp{4, 10.0, 1.0, std::nullopt};
  for (int i = 0; i < kDraws; ++i) {
    Vector z(3);
    for (auto& x : z) x = rng.uniform(-5.0, 5.0);
    dp.c = rng.uniform(0.1, 5.0);
    const double d = intrinsic::density(z, buf, dp, rng);
    bad_density += !(d > 0.0 && d <= 1.0);
  }
  for (int i = 0; i < kDraws; ++i) {
    const double gap = rng.normal() * std::pow(10.0, rng.uniform(-6.0, 3.0));
    const double zeta = intrinsic::irg_normalize(gap);
    bad_zeta += !(zeta > 0.0 && zeta <= 1.0) || (zeta == 1.0 && std::abs(gap) > 2e-8);
  }
  const bool zeta_one = intrinsic::irg_normalize(0.0) == 1.0;
  for (int i = 0; i < kDraws; ++i) {
    intrinsic::HvdEstimate h;
    h.valid = true;
    h.point = Vector{{rng.uniform(), rng.uniform(), rng.uniform()}};
    Vector z(3);
    for (auto& x : z) x = rng.normal(0.0, 3.0);
    bad_eta += !(intrinsic::novelty(z, h) >= 0.0);
  }
  auto env = envs::make_env("planar_reacher");
  RngStream roll("acceptance-ranges-rollout", 5), ae_rng("acceptance-ranges-ae", 5);
  const auto states = envs::env_random_rollout(*env, 2000, roll);
  intrinsic::AutoencoderTraining settings;
  settings.epochs = 20;
  const auto ae = intrinsic::train_autoencoder(states, 5, settings, ae_rng);
  for (int i = 0; i < kDraws; ++i) {
    Vector s(10);
    const double scale = std::pow(10.0, rng.uniform(-2.0, 4.0));
    for (auto& x : s) x = rng.normal(0.0, scale);
    const Vector z = ae.encode(s);
    bad_code += !(z.minCoeff() > 0.0 && z.maxCoeff() < 1.0);
  }
  const bool pass = bad_density == 0 && bad_zeta == 0 && bad_eta == 0 && bad_code == 0 && zeta_one;
  return {pass, fmt("violations over 1e5 draws each: density %d, zeta %d, eta %d, encoder %d; zeta(0) == 1: %s",
                    bad_density, bad_zeta, bad_eta, bad_code, zeta_one ? "yes" : "no")};
}

// 6 -------------------------------------------------------------------------

harness::RunConfig equivalence_config(agents::Algorithm algo) {
  harness::RunConfig c;
  c.env = "planar_reacher";
  c.agent.algorithm = algo;
  c.agent.hidden = {64, 64};
  c.agent.value_hidden = {64, 64};
  c.total_steps = 20000;
  c.unit_steps = 2000;
  c.ipns.beta = 0.0;
  c.ipns.epsilon = 0.0;
  return c;
}

bool same_parameters(agents::Agent& a, agents::Agent& b) {
  auto pa = a.primary_parameters();
  auto pb = b.primary_parameters();
  if (pa.size() != pb.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (!(*pa[i].params == *pb[i].params)) return false;
    if (pa[i].optimizer && !(*pa[i].optimizer == *pb[i].optimizer)) return false;
  }
  return true;
}

Outcome beta_zero_equivalence() {
  std::string detail;
  bool pass = true;
  harness::RunConfig probe = equivalence_config(agents::Algorithm::sac);
  probe.ipns_enabled = true;
  const auto ae = harness::autoencoder_for(probe);
  for (auto algo : {agents::Algorithm::sac, agents::Algorithm::ddpg, agents::Algorithm::td3}) {
    harness::RunConfig plain = equivalence_config(algo);
    harness::RunConfig with = plain;
    with.ipns_enabled = true;
    harness::Trainer a(plain, 1), b(with, 1, ae);
    const auto ra = a.run();
    const auto rb = b.run();
    const bool params = same_parameters(a.agent(), b.agent());
    const bool curve = ra.same_curve(rb) && ra.units() == 10;
    const bool active = b.pipeline() && b.pipeline()->stats().assigned > 0;
    pass = pass && params && curve && active;
    detail += fmt("%s params %s, record %s, bonus assigned on %lld steps; ", std::string(to_string(algo)).c_str(),
                  params ? "identical" : "DIFFER", curve ? "identical" : "DIFFERS",
                  static_cast<long long>(active ? b.pipeline()->stats().assigned : 0));
  }
  return {pass, detail + "hidden 64,64, 20000 steps"};
}

// 7 -------------------------------------------------------------------------

Outcome autoencoder_loss_target() {
  harness::RunConfig c;
  c.env = "planar_reacher";
  c.ipns.latent_dim = 5;
  c.ipns.n_encode = 10000;
  intrinsic::AutoencoderReport report;
  harness::pretrain_autoencoder(c, 7, &report);
  return {report.final_mse <= 0.01, fmt("reconstruction MSE %.5f on 10000 random-policy states, m'=5 (limit 0.01)",
                                        report.final_mse)};
}

// 8 -------------------------------------------------------------------------

Outcome cadence_and_cut_in() {
  harness::RunConfig c;
  c.env = "planar_reacher";
  c.agent.hidden = {64, 64};
  c.agent.value_hidden = {64, 64};
  c.total_steps = 5000;
  c.unit_steps = 1000;
  c.ipns_enabled = true;
  c.ipns.hvd_period = 500;
  c.ipns.beta = 1e-4;
  harness::Trainer t(c, 8);
  std::vector<std::int64_t> recompute_steps;
  std::int64_t last = 0, pre_cut_in_assigned = 0, post_cut_in_unassigned = 0;
  t.on_transition = [&](const agents::Transition& tr, std::int64_t step) {
    const auto n = t.pipeline()->hvd().recomputations();
    if (n != last) {
      recompute_steps.push_back(step);
      last = n;
    }
    if (step < 500) pre_cut_in_assigned += tr.has_intrinsic();
    else post_cut_in_unassigned += !tr.has_intrinsic();
  };
  t.run();
  std::vector<std::int64_t> want;
  for (int k = 1; k <= 10; ++k) want.push_back(500 * k);
  const bool pass = t.pipeline()->hvd().recomputations() == 10 && recompute_steps == want && pre_cut_in_assigned == 0;
  return {pass, fmt("%lld recomputations, first at step %lld, %lld of 499 pre-cut-in transitions assigned, "
                    "%lld post-cut-in transitions unassigned",
                    static_cast<long long>(t.pipeline()->hvd().recomputations()),
                    static_cast<long long>(recompute_steps.empty() ? 0 : recompute_steps.front()),
                    static_cast<long long>(pre_cut_in_assigned), static_cast<long long>(post_cut_in_unassigned))};
}

// 9 -------------------------------------------------------------------------

double sign_test_p(int wins, int n) {
  double p = 0.0;
  for (int k = wins; k <= n; ++k) {
    double binom = 1.0;
    for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
    p += binom * std::pow(0.5, n);
  }
  return p;
}

Outcome learning_trend() {
  harness::RunConfig c;
  c.env = "planar_reacher";
  c.agent.algorithm = agents::Algorithm::sac;
  c.agent.hidden = {64, 64};
  c.agent.value_hidden = {64, 64};
  c.total_steps = 200000;
  c.unit_steps = 2000;
  c.seeds = {1, 2, 3, 4, 5};
  c.ipns.beta = 1e-4;
  c.ablation = harness::AblationMode::full;
  c.threads = 0;

  const auto report = harness::run_comparison(c, c.seeds);
  std::vector<harness::RunRecord> random;
  for (auto s : c.seeds) random.push_back(harness::random_policy_run(c, s));
  const auto random_summary = harness::aggregate(random, c.final_units());

  harness::write_comparison(g_out / "learning_trend", report);
  harness::VariantResult rnd{"random", c, random, random_summary};
  harness::write_variant(g_out / "learning_trend" / "random", rnd);

  const auto& base = report.baseline.summary;
  const auto& ipns = report.variant.summary;
  int wins = 0;
  for (std::size_t i = 0; i < c.seeds.size(); ++i) wins += base.seed_finals[i] > random_summary.seed_finals[i];
  const double p = sign_test_p(wins, static_cast<int>(c.seeds.size()));
  const bool learns = p < 0.1;
  const bool no_worse = ipns.final_mean >= base.final_mean - 0.5 * report.pooled_sigma;
  return {learns && no_worse,
          fmt("R_f random %.3f, sac %.3f, sac+ipns %.3f; (a) sac beats random on %d/5 seeds, sign-test p=%.4f; "
              "(b) ipns - sac = %+.3f vs -0.5 pooled sigma = %.3f; ipns ahead on %d/5 seeds",
              random_summary.final_mean, base.final_mean, ipns.final_mean, wins, p,
              ipns.final_mean - base.final_mean, -0.5 * report.pooled_sigma, report.variant_wins)};
}

// 10 ------------------------------------------------------------------------

Outcome evaluation_protocol() {
  std::vector<std::string> failed;
  harness::RunConfig c;
  c.env = "planar_reacher";
  c.agent.hidden = {32, 32};
  c.agent.value_hidden = {32, 32};
  c.total_steps = 6000;
  c.unit_steps = 2000;
  c.agent.start_timesteps = 1000;
  if (c.eval_episodes != 5) failed.push_back("default eval episodes is not 5");
  if (c.seeds.size() != 5) failed.push_back("default seed set is not 5 seeds");
  if (c.smoothing_window != 11) failed.push_back("default smoothing window is not 11");
  harness::RunConfig reacher;
  if (reacher.units() != 100) failed.push_back("reacher default is not 100 units");

  // replay the final evaluation by hand: 5 deterministic episodes
  harness::Trainer t(c, 3);
  while (t.steps_done() < c.total_steps - 1) t.step();
  RngStream eval_copy = t.eval_rng();
  t.step();
  auto env = envs::make_env(c.env);
  RngStream unused("unused", 0);
  double total = 0.0;
  int episodes = 0, steps = 0;
  for (int e = 0; e < 5; ++e) {
    Vector s = env->reset(eval_copy);
    for (;;) {
      const auto r = env->step(t.agent().act(s, agents::ActMode::deterministic, unused), eval_copy);
      total += r.reward;
      ++steps;
      if (r.done || r.truncated) break;
      s = r.state;
    }
    ++episodes;
  }
  if (t.record().returns.back() != total / 5.0) failed.push_back("final R_u is not the mean of 5 deterministic episodes");
  if (!(t.eval_rng() == eval_copy)) failed.push_back("evaluation consumed a different number of episodes");
  if (steps != 5 * env->spec().max_steps) failed.push_back("evaluation episodes are not full length");

  // U units x 5 seeds
  c.seeds = {1, 2, 3, 4, 5};
  c.threads = 1;
  c.total_steps = 4000;
  const auto records = harness::run_seeds(c, c.seeds);
  bool dims = records.size() == 5;
  for (const auto& r : records) dims = dims && r.units() == static_cast<std::size_t>(c.units());
  if (!dims) failed.push_back("RunRecord dimensions are not U x 5");

  // 11-unit centered smoothing
  std::vector<double> curve(25);
  for (std::size_t i = 0; i < curve.size(); ++i) curve[i] = std::cos(0.4 * static_cast<double>(i)) * static_cast<double>(i);
  const auto sm = harness::smooth(curve, c.smoothing_window);
  for (std::size_t i = 5; i + 5 < curve.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = i - 5; j <= i + 5; ++j) s += curve[j];
    if (std::abs(sm[i] - s / 11.0) > 1e-12) {
      failed.push_back("smoothing is not an 11-unit centered mean");
      break;
    }
  }
  if (sm.size() != curve.size()) failed.push_back("smoothing changed the curve length");

  std::string detail = failed.empty()
                           ? fmt("R_u = mean of 5 deterministic episodes (%d steps replayed), 5 seeds x %lld units, "
                                 "11-unit centered smoothing",
                                 steps, static_cast<long long>(c.units()))
                           : "";
  for (const auto& f : failed) detail += f + "; ";
  return {failed.empty(), detail};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (arg == "--out" && i + 1 < argc) g_out = argv[++i];
    else {
      std::fprintf(stderr, "usage: %s [--only N] [--out DIR]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> criteria{
      {1, "gradient correctness", gradient_correctness},
      {2, "HVD oracle equivalence", hvd_oracle_equivalence},
      {3, "HVD estimator fidelity", hvd_estimator_fidelity},
      {4, "formula conformance", formula_conformance},
      {5, "range invariants", range_invariants},
      {6, "beta = 0 equivalence", beta_zero_equivalence},
      {7, "autoencoder loss target", autoencoder_loss_target},
      {8, "cadence and cut-in", cadence_and_cut_in},
      {9, "learning trend", learning_trend},
      {10, "evaluation protocol", evaluation_protocol},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
