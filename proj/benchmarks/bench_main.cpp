#include <benchmark/benchmark.h>

#include <vector>

#include "wfl/env/pendulum.hpp"
#include "wfl/nn/heads.hpp"
#include "wfl/rl/agent.hpp"
#include "wfl/update_rule.hpp"

using namespace wfl;

static void BM_update_weight(benchmark::State& state) {
  const auto bound = BoundConvention::upper(0.0);
  const auto params = WflParams::from_beta(0.5);
  double v = -0.7, q = -0.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(update_weight(v, q, params, bound));
    v = v == -0.7 ? -0.71 : -0.7;  // defeat value caching
  }
}
BENCHMARK(BM_update_weight);

static void BM_mlp_forward(benchmark::State& state) {
  Rng rng(1);
  nn::Mlp net({3, 100, 100, 1});
  net.init_params(rng);
  auto ws = net.make_workspace();
  const std::vector<double> x = {0.3, -0.9, 4.0};
  std::vector<double> out(1);
  for (auto _ : state) {
    net.forward(x, ws, out);
    benchmark::DoNotOptimize(out[0]);
  }
}
BENCHMARK(BM_mlp_forward);

static void BM_mlp_backward(benchmark::State& state) {
  Rng rng(1);
  nn::Mlp net({3, 100, 100, 1});
  net.init_params(rng);
  auto ws = net.make_workspace();
  const std::vector<double> x = {0.3, -0.9, 4.0};
  std::vector<double> out(1), grad(net.param_count(), 0.0);
  net.forward(x, ws, out);
  const double dout = 1.0;
  for (auto _ : state) {
    net.backward(ws, std::span<const double>(&dout, 1), 1.0, grad);
    benchmark::DoNotOptimize(grad[0]);
  }
}
BENCHMARK(BM_mlp_backward);

static void BM_pendulum_step(benchmark::State& state) {
  env::Pendulum env(3);
  env.reset();
  const std::vector<double> a = {0.5};
  int t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(env.step(a));
    if (++t % env::Pendulum::kEpisodeSteps == 0) env.reset();
  }
}
BENCHMARK(BM_pendulum_step);

static void BM_agent_batch(benchmark::State& state) {
  rl::AgentConfig cfg;
  rl::Agent agent(cfg, 1);
  env::Pendulum env(1);
  std::vector<double> obs = env.reset();
  for (int i = 0; i < 64; ++i) {
    const auto act = agent.act(obs);
    const auto st = env.step(act.action);
    rl::Transition t;
    t.s = obs;
    t.a = act.action;
    t.r_plus = st.r_plus;
    t.r_minus = st.r_minus;
    t.s_next = st.observation;
    t.terminal = st.terminal;
    t.b_density = act.b_density;
    agent.observe(std::move(t));
    obs = st.observation;
  }
  std::vector<const rl::Transition*> batch;
  for (std::size_t i = 0; i < 32; ++i) batch.push_back(&agent.buffer()[i]);
  for (auto _ : state) {
    agent.update_on_batch(std::span<const rl::Transition* const>(batch));
  }
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_agent_batch);

BENCHMARK_MAIN();
