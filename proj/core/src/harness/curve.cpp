#include "wfl/harness/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wfl::harness {

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p outside [0,1]");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(lo);
  // interpolation with an infinite endpoint stays infinite
  if (std::isinf(values[lo]) || std::isinf(values[lo + 1]))
    return frac == 0.0 ? values[lo] : (frac == 1.0 ? values[lo + 1] : values[lo] + values[lo + 1]);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

AggregateCurve aggregate(const std::vector<LearningCurve>& curves) {
  if (curves.empty()) throw std::invalid_argument("aggregate: no curves");
  const std::size_t episodes = curves.front().size();
  for (const auto& c : curves)
    if (c.size() != episodes) throw std::invalid_argument("aggregate: curve length mismatch");

  AggregateCurve out;
  out.episodes = episodes;
  out.seed_count = curves.size();
  auto fill = [&](BandSeries& series, auto field) {
    series.median.resize(episodes);
    series.q25.resize(episodes);
    series.q75.resize(episodes);
    std::vector<double> sample(curves.size());
    for (std::size_t e = 0; e < episodes; ++e) {
      for (std::size_t s = 0; s < curves.size(); ++s) sample[s] = curves[s][e].*field;
      series.median[e] = quantile(sample, 0.5);
      series.q25[e] = quantile(sample, 0.25);
      series.q75[e] = quantile(sample, 0.75);
    }
  };
  fill(out.r_plus_mean, &EpisodeStats::r_plus_mean);
  fill(out.r_plus_sum, &EpisodeStats::r_plus_sum);
  fill(out.r_minus_mean, &EpisodeStats::r_minus_mean);
  fill(out.r_minus_sum, &EpisodeStats::r_minus_sum);
  return out;
}

double final_window_mean_rplus(const LearningCurve& curve, int window) {
  if (curve.empty()) throw std::invalid_argument("final_window_mean_rplus: empty curve");
  const std::size_t n = std::min<std::size_t>(window, curve.size());
  double acc = 0.0;
  for (std::size_t i = curve.size() - n; i < curve.size(); ++i) acc += curve[i].r_plus_mean;
  return acc / static_cast<double>(n);
}

double worst_episode_rminus(const LearningCurve& curve) {
  if (curve.empty()) throw std::invalid_argument("worst_episode_rminus: empty curve");
  double worst = curve.front().r_minus_mean;
  for (const auto& e : curve) worst = std::min(worst, e.r_minus_mean);
  return worst;
}

double episodes_to_threshold(const LearningCurve& curve, double threshold) {
  for (std::size_t i = 0; i < curve.size(); ++i)
    if (curve[i].r_plus_mean >= threshold) return static_cast<double>(i);
  return std::numeric_limits<double>::infinity();
}

ConfigSummary summarize_config(const std::string& name, std::uint64_t config_hash,
                               const std::vector<LearningCurve>& curves, int window,
                               double threshold) {
  if (curves.empty()) throw std::invalid_argument("summarize_config: no curves");
  ConfigSummary row;
  row.config = name;
  row.config_hash = config_hash;
  row.seed_count = static_cast<int>(curves.size());
  row.window = window;
  row.threshold = threshold;

  std::vector<double> finals, worsts, reach;
  for (const auto& c : curves) {
    finals.push_back(final_window_mean_rplus(c, window));
    worsts.push_back(worst_episode_rminus(c));
    reach.push_back(episodes_to_threshold(c, threshold));
  }
  row.final_rplus_median = quantile(finals, 0.5);
  row.final_rplus_q25 = quantile(finals, 0.25);
  row.final_rplus_q75 = quantile(finals, 0.75);
  row.worst_rminus_median = quantile(worsts, 0.5);
  row.worst_rminus_q25 = quantile(worsts, 0.25);
  row.worst_rminus_q75 = quantile(worsts, 0.75);
  row.to_threshold_median = quantile(reach, 0.5);
  row.to_threshold_q25 = quantile(reach, 0.25);
  row.to_threshold_q75 = quantile(reach, 0.75);
  return row;
}

std::string summary_table(const std::vector<ConfigSummary>& rows) {
  std::ostringstream out;
  out << "config,seed_count,window,threshold,"
         "final_rplus_median,final_rplus_q25,final_rplus_q75,"
         "worst_rminus_median,worst_rminus_q25,worst_rminus_q75,"
         "to_threshold_median,to_threshold_q25,to_threshold_q75\n";
  for (const auto& r : rows) {
    out << r.config << ',' << r.seed_count << ',' << r.window << ',' << r.threshold << ','
        << r.final_rplus_median << ',' << r.final_rplus_q25 << ',' << r.final_rplus_q75 << ','
        << r.worst_rminus_median << ',' << r.worst_rminus_q25 << ',' << r.worst_rminus_q75 << ','
        << r.to_threshold_median << ',' << r.to_threshold_q25 << ',' << r.to_threshold_q75
        << '\n';
  }
  return out.str();
}

}  // namespace wfl::harness
