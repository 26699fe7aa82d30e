// Per-episode learning statistics and their cross-seed aggregation.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wfl::harness {

struct EpisodeStats {
  double r_plus_mean = 0.0;
  double r_plus_sum = 0.0;
  double r_minus_mean = 0.0;
  double r_minus_sum = 0.0;
};

using LearningCurve = std::vector<EpisodeStats>;

struct BandSeries {
  std::vector<double> median;
  std::vector<double> q25;
  std::vector<double> q75;
};

struct AggregateCurve {
  std::size_t episodes = 0;
  std::size_t seed_count = 0;
  BandSeries r_plus_mean, r_plus_sum, r_minus_mean, r_minus_sum;
};

// Linear-interpolation quantile of an unsorted sample (takes a copy).
double quantile(std::vector<double> values, double p);

// All curves must share one length; the result is independent of their order.
AggregateCurve aggregate(const std::vector<LearningCurve>& curves);

// Per-seed scalar metrics.
double final_window_mean_rplus(const LearningCurve& curve, int window);
double worst_episode_rminus(const LearningCurve& curve);
// First episode index (0-based) whose mean r_plus reaches the threshold,
// +inf when it never does.
double episodes_to_threshold(const LearningCurve& curve, double threshold);

struct ConfigSummary {
  std::string config;
  std::uint64_t config_hash = 0;
  int seed_count = 0;
  int window = 20;
  double threshold = 1.5;

  double final_rplus_median = 0.0, final_rplus_q25 = 0.0, final_rplus_q75 = 0.0;
  double worst_rminus_median = 0.0, worst_rminus_q25 = 0.0, worst_rminus_q75 = 0.0;
  double to_threshold_median = 0.0, to_threshold_q25 = 0.0, to_threshold_q75 = 0.0;
};

ConfigSummary summarize_config(const std::string& name, std::uint64_t config_hash,
                               const std::vector<LearningCurve>& curves, int window,
                               double threshold);

std::string summary_table(const std::vector<ConfigSummary>& rows);

}  // namespace wfl::harness
