#include <benchmark/benchmark.h>

#include "ipns/agents/agent.hpp"
#include "ipns/envs/environment.hpp"
#include "ipns/intrinsic/density.hpp"
#include "ipns/intrinsic/hvd.hpp"
#include "ipns/numerics/mlp.hpp"

using namespace ipns;

namespace {

void BM_MlpForwardBatch(benchmark::State& state) {
  const int width = static_cast<int>(state.range(0));
  RngStream rng("bench", 1);
  const auto p = make_mlp({12, width, width, 1}, Activation::relu, Activation::linear, rng);
  Matrix x = Matrix::Random(12, 256);
  for (auto _ : state) benchmark::DoNotOptimize(forward_batch(p, x));
}
BENCHMARK(BM_MlpForwardBatch)->Arg(64)->Arg(256);

void BM_MlpBackwardBatch(benchmark::State& state) {
  const int width = static_cast<int>(state.range(0));
  RngStream rng("bench", 1);
  const auto p = make_mlp({12, width, width, 1}, Activation::relu, Activation::linear, rng);
  Matrix x = Matrix::Random(12, 256);
  ForwardCache cache;
  const Matrix y = forward_batch(p, x, &cache);
  MlpGrads g = zeros_like(p);
  for (auto _ : state) {
    backward_batch(p, cache, y, g);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_MlpBackwardBatch)->Arg(64)->Arg(256);

intrinsic::EncodedStateBuffer filled_buffer(std::size_t n) {
  RngStream rng("bench-buffer", 1);
  intrinsic::EncodedStateBuffer buf(5);
  for (std::size_t i = 0; i < n; ++i) {
    Vector z(5);
    for (auto& v : z) v = rng.uniform();
    buf.push(z);
  }
  return buf;
}

void BM_Density(benchmark::State& state) {
  const auto buf = filled_buffer(static_cast<std::size_t>(state.range(0)));
  RngStream rng("bench-density", 1);
  intrinsic::DensityParams p;
  const Vector z = Vector::Constant(5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(intrinsic::density(z, buf, p, rng));
}
BENCHMARK(BM_Density)->Arg(10000)->Arg(200000);

void BM_EstimateHvd(benchmark::State& state) {
  const auto buf = filled_buffer(static_cast<std::size_t>(state.range(0)));
  RngStream rng("bench-hvd", 1);
  intrinsic::HvdParams p;
  for (auto _ : state) benchmark::DoNotOptimize(intrinsic::estimate_hvd_now(buf, p, rng));
}
BENCHMARK(BM_EstimateHvd)->Arg(10000)->Arg(200000);

void BM_AgentUpdate(benchmark::State& state) {
  auto env = envs::make_env("planar_reacher");
  agents::AgentConfig cfg;
  cfg.algorithm = static_cast<agents::Algorithm>(state.range(0));
  cfg.hidden = {static_cast<int>(state.range(1)), static_cast<int>(state.range(1))};
  RngStream init("bench-init", 1), rng("bench-update", 1);
  auto agent = agents::make_agent(cfg, env->spec(), init);
  agents::ReplayBuffer replay(10000, env->spec().state_dim, env->spec().action_dim);
  Vector s = env->reset(rng);
  for (int i = 0; i < 2000; ++i) {
    agents::Transition t;
    t.state = s;
    t.action = envs::random_action(env->spec(), rng);
    const auto r = env->step(t.action, rng);
    t.reward = r.reward;
    t.next_state = r.state;
    t.done = r.done;
    replay.push(t);
    s = r.done || r.truncated ? env->reset(rng) : r.state;
  }
  for (auto _ : state) {
    const auto batch = replay.sample(static_cast<std::size_t>(cfg.batch_size), rng);
    benchmark::DoNotOptimize(agent->update(batch, 0.0, rng));
  }
  state.SetLabel(std::string(to_string(cfg.algorithm)));
}
BENCHMARK(BM_AgentUpdate)->Args({0, 64})->Args({0, 256})->Args({1, 256})->Args({2, 256})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
