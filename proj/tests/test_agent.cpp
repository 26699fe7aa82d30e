#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "wfl/env/pendulum.hpp"
#include "wfl/rl/agent.hpp"

using namespace wfl;
using namespace wfl::rl;

namespace {

AgentConfig tiny_config() {
  AgentConfig cfg;
  cfg.hidden = {12};
  return cfg;
}

std::vector<double> one_hot(int i) {
  std::vector<double> v(3, 0.0);
  v[i] = 1.0;
  return v;
}

Transition make_transition(std::vector<double> s, std::vector<double> s_next, double r_plus,
                           double r_minus, bool terminal, double b_density,
                           std::vector<double> a = {0.5}) {
  Transition t;
  t.s = std::move(s);
  t.a = std::move(a);
  t.r_plus = r_plus;
  t.r_minus = r_minus;
  t.s_next = std::move(s_next);
  t.terminal = terminal;
  t.b_density = b_density;
  return t;
}

// one full pendulum episode driven by the agent's own behavior policy
void run_episode(Agent& agent, env::Pendulum& env) {
  std::vector<double> obs = env.reset();
  for (;;) {
    const auto act = agent.act(obs);
    const auto st = env.step(act.action);
    agent.observe(make_transition(obs, st.observation, st.r_plus, st.r_minus, st.terminal,
                                  act.b_density, act.action));
    obs = st.observation;
    if (st.terminal) break;
  }
  agent.end_of_episode_replay();
}

}  // namespace

TEST_CASE("replay buffer") {
  SUBCASE("FIFO eviction at capacity") {
    ReplayBuffer buf(4);
    for (int i = 0; i < 6; ++i)
      buf.push(make_transition({double(i)}, {0.0}, double(i), 0.0, false, 1.0));
    CHECK(buf.size() == 4);
    // 0 and 1 were evicted
    for (std::size_t i = 0; i < buf.size(); ++i) CHECK(buf[i].r_plus >= 2.0);
  }
  SUBCASE("reward signs are enforced at insertion") {
    ReplayBuffer buf(4);
    CHECK_THROWS_AS(buf.push(make_transition({0.0}, {0.0}, -0.1, 0.0, false, 1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(buf.push(make_transition({0.0}, {0.0}, 0.0, 0.1, false, 1.0)),
                    std::invalid_argument);
  }
  SUBCASE("sampling without replacement") {
    ReplayBuffer buf(100);
    for (int i = 0; i < 50; ++i)
      buf.push(make_transition({double(i)}, {0.0}, 1.0, 0.0, false, 1.0));
    Rng rng(3);
    const auto idx = buf.sample_without_replacement(25, rng);
    CHECK(idx.size() == 25);
    std::vector<bool> seen(50, false);
    for (auto i : idx) {
      CHECK(i < 50);
      CHECK_FALSE(seen[i]);
      seen[i] = true;
    }
    CHECK_THROWS_AS(buf.sample_without_replacement(51, rng), std::invalid_argument);
  }
}

TEST_CASE("mixture weight") {
  SUBCASE("fresh agent values are zero, so w = 1/2") {
    Agent agent(tiny_config(), 1);
    CHECK(agent.mixture_weight(std::vector<double>{0.2, -0.3, 1.0}) == 0.5);
  }
  SUBCASE("reward-dominant limit") {
    CHECK(mixture_weight_from_logits(800.0, 0.0) == 1.0);
    CHECK(mixture_weight_from_logits(0.0, 800.0) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("log-space shift invariance") {
    for (double c : {-300.0, -1.0, 0.5, 250.0}) {
      CHECK(mixture_weight_from_logits(1.3 + c, -0.4 + c) ==
            doctest::Approx(mixture_weight_from_logits(1.3, -0.4)).epsilon(1e-12));
    }
  }
  SUBCASE("identical component densities collapse the mixture") {
    for (double w : {0.0, 0.3, 0.5, 0.9, 1.0}) {
      const double p = 0.421;
      CHECK(w * p + (1.0 - w) * p == doctest::Approx(p).epsilon(1e-15));
    }
  }
  SUBCASE("behavior density matches the mixture formula") {
    Agent agent(tiny_config(), 5);
    const std::vector<double> s = {0.5, -0.5, 2.0};
    const auto act = agent.act(s);
    const double w = agent.mixture_weight(s);
    const double dp = std::exp(agent.policy_log_prob(Branch::plus, s, act.action));
    const double dm = std::exp(agent.policy_log_prob(Branch::minus, s, act.action));
    CHECK(act.b_density == doctest::Approx(w * dp + (1.0 - w) * dm).epsilon(1e-12));
    CHECK(act.action[0] >= -2.0);
    CHECK(act.action[0] <= 2.0);
  }
}

TEST_CASE("td_target") {
  Agent agent(tiny_config(), 1);
  CHECK(agent.td_target(Branch::plus, 2.0, 0.0, false) ==
        doctest::Approx(0.02).epsilon(1e-12));
  CHECK(agent.td_target(Branch::plus, 0.0, 5.0, true) == 0.0);
  CHECK(agent.td_target(Branch::minus, -1.0, -0.5, false) ==
        doctest::Approx(0.01 * -1.0 + 0.99 * -0.5).epsilon(1e-12));
  CHECK_THROWS_AS(agent.td_target(Branch::plus, -0.1, 0.0, false), std::invalid_argument);
  CHECK_THROWS_AS(agent.td_target(Branch::minus, 0.1, 0.0, false), std::invalid_argument);

  SUBCASE("constant reward has fixed point V = c") {
    // V = (1-g) c + g V  =>  V = c
    const double c = 1.7, g = 0.99;
    const double v = c;
    CHECK((1.0 - g) * c + g * v == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("critic update weights delegate to the update rule") {
  SUBCASE("plain-TD override") {
    AgentConfig cfg = tiny_config();  // beta0 defaults are infinite
    Agent agent(cfg, 1);
    CHECK(agent.critic_update_weight(Branch::plus, 0.3, 0.7) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(agent.critic_update_weight(Branch::minus, -0.7, -0.3) == doctest::Approx(0.4).epsilon(1e-12));
  }
  SUBCASE("punishment branch at beta = 1") {
    AgentConfig cfg = tiny_config();
    cfg.beta0_minus = 1.0;  // sigma starts at 1, so beta = 1
    Agent agent(cfg, 1);
    CHECK(agent.critic_update_weight(Branch::minus, -1.0, -0.5) ==
          doctest::Approx(0.48703849209005334).epsilon(1e-10));
  }
  SUBCASE("reward branch mirrors it") {
    AgentConfig cfg = tiny_config();
    cfg.beta0_plus = 1.0;
    Agent agent(cfg, 1);
    CHECK(agent.critic_update_weight(Branch::plus, 1.0, 0.5) ==
          doctest::Approx(-0.48703849209005334).epsilon(1e-10));
  }
}

TEST_CASE("agent with lambda=0 and merged reward reproduces tabular TD(0)") {
  AgentConfig cfg;
  cfg.state_dim = 3;
  cfg.action_dim = 1;
  cfg.hidden = {};        // linear value heads
  cfg.value_bias = false; // exactly tabular on one-hot states
  cfg.kappa = 0.0;
  cfg.tau = 1.0;          // bootstrap from the online values, like the oracle
  cfg.optimizer.kind = nn::OptimizerKind::sgd;
  cfg.optimizer.lr = 0.05;
  Agent agent(cfg, 9);

  const double gamma = cfg.gamma;
  const double lr = cfg.optimizer.lr;

  // hand-rolled TD(0) oracle on the 3-state chain
  double oracle[3] = {0.0, 0.0, 0.0};
  const int chain_next[3] = {1, 2, 0};
  const double chain_r[3] = {0.3, 0.6, 0.9};
  const bool chain_term[3] = {false, false, true};

  for (int step = 0; step < 300; ++step) {
    const int i = step % 3;
    const Transition t = make_transition(one_hot(i), one_hot(chain_next[i]), chain_r[i], 0.0,
                                         chain_term[i], 0.25);
    agent.update_on_batch(std::span<const Transition>(&t, 1));

    const double target =
        (1.0 - gamma) * chain_r[i] + (chain_term[i] ? 0.0 : gamma * oracle[chain_next[i]]);
    oracle[i] += lr * (target - oracle[i]);

    for (int s = 0; s < 3; ++s) {
      CHECK(std::abs(agent.value(Branch::plus, one_hot(s)) - oracle[s]) <= 1e-10);
      CHECK(agent.value(Branch::minus, one_hot(s)) == 0.0);
    }
  }
  // the chain actually learned something
  CHECK(agent.value(Branch::plus, one_hot(0)) > 0.0);
}

TEST_CASE("a positive update weight raises the sample's log-density") {
  AgentConfig cfg = tiny_config();
  cfg.kappa = 0.0;
  cfg.optimizer.lr = 1e-6;
  Agent agent(cfg, 21);

  const std::vector<double> s = {0.4, 0.9, -1.0};
  const auto act = agent.act(s);

  SUBCASE("reward branch, weight > 0") {
    const double before = agent.policy_log_prob(Branch::plus, s, act.action);
    const Transition t = make_transition(s, s, 1.0, 0.0, false, act.b_density, act.action);
    agent.update_on_batch(std::span<const Transition>(&t, 1));
    CHECK(agent.policy_log_prob(Branch::plus, s, act.action) > before);
  }
  SUBCASE("punishment branch, weight < 0") {
    const double before = agent.policy_log_prob(Branch::minus, s, act.action);
    const Transition t = make_transition(s, s, 0.0, -1.0, false, act.b_density, act.action);
    agent.update_on_batch(std::span<const Transition>(&t, 1));
    CHECK(agent.policy_log_prob(Branch::minus, s, act.action) < before);
  }
  SUBCASE("zero TD error leaves the policies untouched") {
    const double bp = agent.policy_log_prob(Branch::plus, s, act.action);
    const double bm = agent.policy_log_prob(Branch::minus, s, act.action);
    const Transition t = make_transition(s, s, 0.0, 0.0, false, act.b_density, act.action);
    agent.update_on_batch(std::span<const Transition>(&t, 1));
    CHECK(agent.policy_log_prob(Branch::plus, s, act.action) == bp);
    CHECK(agent.policy_log_prob(Branch::minus, s, act.action) == bm);
  }
}

TEST_CASE("importance ratios are clipped and degenerate densities skipped") {
  SUBCASE("ratio 50 is treated exactly like ratio 20: both clip to 10") {
    AgentConfig cfg = tiny_config();
    cfg.kappa = 0.0;  // the clip is the only place the density enters
    Agent a(cfg, 33), b(cfg, 33);
    const std::vector<double> s = {0.1, 0.2, 0.3};
    const auto act = a.act(s);
    (void)b.act(s);  // keep the RNG streams aligned
    const double pi = std::exp(a.policy_log_prob(Branch::plus, s, act.action));

    const Transition t50 = make_transition(s, s, 1.0, 0.0, false, pi / 50.0, act.action);
    const Transition t20 = make_transition(s, s, 1.0, 0.0, false, pi / 20.0, act.action);
    a.update_on_batch(std::span<const Transition>(&t50, 1));
    b.update_on_batch(std::span<const Transition>(&t20, 1));
    CHECK(a.policy_log_prob(Branch::plus, s, act.action) ==
          b.policy_log_prob(Branch::plus, s, act.action));
    CHECK(a.counters().clipped_ratios >= 1);
  }
  SUBCASE("vanishing behavior density skips the actor sample") {
    Agent agent(tiny_config(), 3);
    const std::vector<double> s = {0.0, 1.0, 0.0};
    const Transition t = make_transition(s, s, 1.0, 0.0, false, 1e-31);
    agent.update_on_batch(std::span<const Transition>(&t, 1));
    CHECK(agent.counters().skipped_actor_samples == 1);
  }
}

TEST_CASE("replay pass arithmetic") {
  AgentConfig cfg;
  cfg.hidden = {8};
  Agent agent(cfg, 4);
  const std::vector<double> s = {0.0, 0.0, 0.0};

  SUBCASE("empty buffer is a no-op") {
    agent.end_of_episode_replay();
    CHECK(agent.gradient_batches() == 0);
  }
  SUBCASE("64 stored -> 32 replayed in one batch") {
    for (int i = 0; i < 64; ++i)
      agent.observe(make_transition(s, s, 0.5, 0.0, false, 0.5));
    agent.end_of_episode_replay();
    CHECK(agent.gradient_batches() == 1);
  }
  SUBCASE("odd sizes round the half up and the tail batch is partial") {
    for (int i = 0; i < 101; ++i)
      agent.observe(make_transition(s, s, 0.5, 0.0, false, 0.5));
    agent.end_of_episode_replay();  // ceil(101/2) = 51 -> 32 + 19
    CHECK(agent.gradient_batches() == 2);
  }
}

TEST_CASE("full-capacity replay touches 5000 samples in 157 batches") {
  AgentConfig cfg;
  cfg.hidden = {};  // keep this size-focused test cheap
  Agent agent(cfg, 4);
  const std::vector<double> s = {0.0, 0.0, 0.0};
  for (int i = 0; i < 10000; ++i)
    agent.observe(make_transition(s, s, 0.5, 0.0, false, 0.5));
  CHECK(agent.buffer().size() == 10000);
  agent.end_of_episode_replay();
  CHECK(agent.gradient_batches() == 157);  // 156 full batches + 8 leftover
}

TEST_CASE("live training keeps values admissible with zero clamping") {
  AgentConfig cfg;
  cfg.hidden = {12};
  cfg.beta0_plus = 0.5;
  cfg.beta0_minus = 0.5;
  Agent agent(cfg, 11);
  env::Pendulum env(11);

  const auto clamps_before = diagnostics().value_clamps.load();
  for (int ep = 0; ep < 4; ++ep) run_episode(agent, env);
  CHECK(diagnostics().value_clamps.load() == clamps_before);
  CHECK(agent.optimizer_skipped_steps() == 0);

  Rng probe(99);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> s = {probe.uniform(-1.0, 1.0), probe.uniform(-1.0, 1.0),
                                   probe.uniform(-8.0, 8.0)};
    CHECK(agent.value(Branch::plus, s) >= 0.0);
    CHECK(agent.value(Branch::minus, s) <= 0.0);
  }
  // scale trackers saw data, so the temperatures moved off beta0
  CHECK(agent.scale(Branch::plus).sigma_max > 0.0);
  CHECK(agent.wfl_params(Branch::plus).beta > 0.0);
}

TEST_CASE("identical seeds give identical training trajectories") {
  auto run = [](std::uint64_t seed) {
    AgentConfig cfg;
    cfg.hidden = {12};
    Agent agent(cfg, seed);
    env::Pendulum env(seed + 1000);
    for (int ep = 0; ep < 2; ++ep) run_episode(agent, env);
    std::vector<double> probe;
    for (double x : {-0.5, 0.0, 0.5}) {
      const std::vector<double> s = {x, 1.0 - x, x};
      probe.push_back(agent.value(Branch::plus, s));
      probe.push_back(agent.value(Branch::minus, s));
      probe.push_back(agent.policy_log_prob(Branch::plus, s, std::vector<double>{0.3}));
    }
    return probe;
  };
  CHECK(run(5) == run(5));
}

TEST_CASE("checkpoint round trip restores the agent") {
  namespace fs = std::filesystem;
  const std::string base = (fs::temp_directory_path() / "wfl_agent_ckpt").string();

  AgentConfig cfg;
  cfg.hidden = {12};
  cfg.beta0_plus = 2.0;
  cfg.beta0_minus = 0.7;
  Agent agent(cfg, 8);
  env::Pendulum env(8);
  for (int ep = 0; ep < 2; ++ep) run_episode(agent, env);
  agent.save_checkpoint(base);

  Agent restored(cfg, 12345);  // different seed: parameters must come from the file
  restored.load_checkpoint(base);

  Rng probe(1);
  for (int i = 0; i < 50; ++i) {
    const std::vector<double> s = {probe.uniform(-1.0, 1.0), probe.uniform(-1.0, 1.0),
                                   probe.uniform(-8.0, 8.0)};
    const std::vector<double> a = {probe.uniform(-2.0, 2.0)};
    CHECK(agent.value(Branch::plus, s) == restored.value(Branch::plus, s));
    CHECK(agent.value(Branch::minus, s) == restored.value(Branch::minus, s));
    CHECK(agent.policy_log_prob(Branch::plus, s, a) ==
          restored.policy_log_prob(Branch::plus, s, a));
    CHECK(agent.policy_log_prob(Branch::minus, s, a) ==
          restored.policy_log_prob(Branch::minus, s, a));
  }
  CHECK(agent.scale(Branch::plus).sigma == restored.scale(Branch::plus).sigma);
  CHECK(agent.scale(Branch::minus).sigma_max == restored.scale(Branch::minus).sigma_max);

  fs::remove(base + ".f64");
  fs::remove(base + ".json");
}
