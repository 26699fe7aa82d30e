// Experiment driver: one agent/environment pair per (config, seed), run in
// parallel across a bounded worker pool. Each seed writes its own CSV; each
// config gets an aggregate CSV and an SVG; a manifest records everything,
// including failed seeds.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wfl/harness/config.hpp"
#include "wfl/harness/curve.hpp"

namespace wfl::harness {

struct SeedOutcome {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string csv_path;
  std::string error;
  LearningCurve curve;
};

struct ConfigOutcome {
  ExperimentConfig config;
  std::vector<SeedOutcome> seeds;
  std::string aggregate_csv_path;
  std::string svg_path;

  std::vector<LearningCurve> completed_curves() const;
};

struct SweepResult {
  std::vector<ConfigOutcome> configs;
  std::string manifest_path;
};

// One full training run; deterministic in (cfg, seed).
LearningCurve run_single(const ExperimentConfig& cfg, std::uint64_t seed);

SweepResult run_sweep(const std::vector<ExperimentConfig>& configs, const std::string& out_dir,
                      int jobs);

}  // namespace wfl::harness
