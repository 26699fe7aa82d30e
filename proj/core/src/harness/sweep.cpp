#include "wfl/harness/sweep.hpp"

#include <atomic>
#include <filesystem>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "wfl/env/pendulum.hpp"
#include "wfl/harness/csv.hpp"
#include "wfl/harness/svg.hpp"
#include "wfl/rl/agent.hpp"

namespace wfl::harness {

namespace {

rl::AgentConfig agent_config_for(const ExperimentConfig& cfg, const env::Environment& e) {
  rl::AgentConfig ac;
  ac.state_dim = e.observation_dim();
  ac.action_dim = e.action_dim();
  ac.action_low = e.action_low();
  ac.action_high = e.action_high();
  ac.hidden = cfg.hidden;
  ac.gamma = cfg.gamma;
  ac.zeta = cfg.zeta;
  ac.beta0_plus = cfg.beta0_plus;
  ac.beta0_minus = cfg.beta0_minus;
  ac.beta_w = cfg.beta_w;
  ac.kappa = cfg.kappa;
  ac.tau = cfg.tau;
  ac.optimizer.lr = cfg.lr;
  ac.batch_size = cfg.batch_size;
  ac.replay_capacity = cfg.replay_capacity;
  return ac;
}

}  // namespace

LearningCurve run_single(const ExperimentConfig& cfg, std::uint64_t seed) {
  env::Pendulum env(split_seed(seed, 1));
  rl::Agent agent(agent_config_for(cfg, env), split_seed(seed, 0));

  LearningCurve curve;
  curve.reserve(cfg.episodes);
  for (int ep = 0; ep < cfg.episodes; ++ep) {
    std::vector<double> obs = env.reset();
    double sum_plus = 0.0, sum_minus = 0.0;
    int steps = 0;
    for (;;) {
      rl::Agent::ActResult act = agent.act(obs);
      env::EnvStep st = env.step(act.action);
      rl::Transition t;
      t.s = obs;
      t.a = act.action;
      t.r_plus = st.r_plus;
      t.r_minus = st.r_minus;
      t.s_next = st.observation;
      t.terminal = st.terminal;
      t.b_density = act.b_density;
      agent.observe(std::move(t));
      sum_plus += st.r_plus;
      sum_minus += st.r_minus;
      ++steps;
      obs = std::move(st.observation);
      if (st.terminal) break;
    }
    agent.end_of_episode_replay();
    EpisodeStats stats;
    stats.r_plus_sum = sum_plus;
    stats.r_minus_sum = sum_minus;
    stats.r_plus_mean = sum_plus / steps;
    stats.r_minus_mean = sum_minus / steps;
    curve.push_back(stats);
  }
  return curve;
}

std::vector<LearningCurve> ConfigOutcome::completed_curves() const {
  std::vector<LearningCurve> curves;
  for (const auto& s : seeds)
    if (s.ok) curves.push_back(s.curve);
  return curves;
}

SweepResult run_sweep(const std::vector<ExperimentConfig>& configs, const std::string& out_dir,
                      int jobs) {
  namespace fs = std::filesystem;
  if (configs.empty()) throw std::invalid_argument("run_sweep: no configs");
  fs::create_directories(out_dir);

  SweepResult result;
  result.configs.resize(configs.size());

  struct Task {
    std::size_t config_index;
    std::size_t seed_index;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    result.configs[c].config = configs[c];
    result.configs[c].seeds.resize(configs[c].seeds.size());
    for (std::size_t s = 0; s < configs[c].seeds.size(); ++s)
      tasks.push_back({c, s});
  }

  if (jobs < 1) jobs = 1;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task task = tasks[i];
      const ExperimentConfig& cfg = configs[task.config_index];
      SeedOutcome& outcome = result.configs[task.config_index].seeds[task.seed_index];
      outcome.seed = cfg.seeds[task.seed_index];
      try {
        outcome.curve = run_single(cfg, outcome.seed);
        outcome.ok = true;
      } catch (const std::exception& e) {
        outcome.ok = false;
        outcome.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t nthreads = std::min<std::size_t>(jobs, tasks.size());
  pool.reserve(nthreads);
  for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  // single-threaded reduce and emission, in config order
  nlohmann::json manifest;
  manifest["format"] = "wfl-sweep-manifest-v1";
  nlohmann::json mconfigs = nlohmann::json::array();
  for (auto& co : result.configs) {
    const ExperimentConfig& cfg = co.config;
    nlohmann::json mc;
    mc["name"] = cfg.name;
    char hash_hex[19];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                  static_cast<unsigned long long>(cfg.hash()));
    mc["config_hash"] = hash_hex;
    mc["canonical"] = cfg.canonical();

    nlohmann::json mseeds = nlohmann::json::array();
    for (auto& so : co.seeds) {
      nlohmann::json ms;
      ms["seed"] = so.seed;
      ms["status"] = so.ok ? "ok" : "failed";
      if (so.ok) {
        const std::string file = cfg.name + "_seed" + std::to_string(so.seed) + ".csv";
        so.csv_path = (fs::path(out_dir) / file).string();
        write_text_file(so.csv_path, seed_csv_text(cfg, so.seed, so.curve));
        ms["csv"] = file;
      } else {
        ms["error"] = so.error;
      }
      mseeds.push_back(ms);
    }
    mc["seeds"] = mseeds;

    const std::vector<LearningCurve> curves = co.completed_curves();
    if (!curves.empty()) {
      const AggregateCurve agg = aggregate(curves);
      co.aggregate_csv_path = (fs::path(out_dir) / (cfg.name + "_aggregate.csv")).string();
      write_text_file(co.aggregate_csv_path, aggregate_csv_text(cfg, agg));
      co.svg_path = (fs::path(out_dir) / (cfg.name + ".svg")).string();
      write_text_file(co.svg_path, learning_curve_svg(cfg.name, agg));
      mc["aggregate_csv"] = cfg.name + "_aggregate.csv";
      mc["svg"] = cfg.name + ".svg";
    }
    mconfigs.push_back(mc);
  }
  manifest["configs"] = mconfigs;
  result.manifest_path = (fs::path(out_dir) / "manifest.json").string();
  write_text_file(result.manifest_path, manifest.dump(2) + "\n");
  return result;
}

}  // namespace wfl::harness
