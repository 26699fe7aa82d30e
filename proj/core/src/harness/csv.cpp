#include "wfl/harness/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wfl::harness {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

namespace {

std::string hash_comment(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "# config=" << cfg.name << " config_hash=" << std::hex << cfg.hash() << std::dec;
  return out.str();
}

double parse_field(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::runtime_error("csv: bad numeric field '" + s + "'");
  return v;
}

}  // namespace

std::string seed_csv_text(const ExperimentConfig& cfg, std::uint64_t seed,
                          const LearningCurve& curve) {
  std::string out = hash_comment(cfg) + " seed=" + std::to_string(seed) + "\n";
  out += "episode,r_plus_mean,r_plus_sum,r_minus_mean,r_minus_sum\n";
  for (std::size_t e = 0; e < curve.size(); ++e) {
    out += std::to_string(e);
    out += ',' + format_double(curve[e].r_plus_mean);
    out += ',' + format_double(curve[e].r_plus_sum);
    out += ',' + format_double(curve[e].r_minus_mean);
    out += ',' + format_double(curve[e].r_minus_sum);
    out += '\n';
  }
  return out;
}

std::string aggregate_csv_text(const ExperimentConfig& cfg, const AggregateCurve& agg) {
  std::string out = hash_comment(cfg) + " seeds=" + std::to_string(agg.seed_count) + "\n";
  out +=
      "episode"
      ",r_plus_mean_median,r_plus_mean_q25,r_plus_mean_q75"
      ",r_plus_sum_median,r_plus_sum_q25,r_plus_sum_q75"
      ",r_minus_mean_median,r_minus_mean_q25,r_minus_mean_q75"
      ",r_minus_sum_median,r_minus_sum_q25,r_minus_sum_q75\n";
  auto band = [&](const BandSeries& b, std::size_t e) {
    return ',' + format_double(b.median[e]) + ',' + format_double(b.q25[e]) + ',' +
           format_double(b.q75[e]);
  };
  for (std::size_t e = 0; e < agg.episodes; ++e) {
    out += std::to_string(e);
    out += band(agg.r_plus_mean, e);
    out += band(agg.r_plus_sum, e);
    out += band(agg.r_minus_mean, e);
    out += band(agg.r_minus_sum, e);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LearningCurve parse_seed_csv(const std::string& text) {
  LearningCurve curve;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("episode,", 0) == 0) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 5) throw std::runtime_error("csv: expected 5 columns, got line: " + line);
    EpisodeStats e;
    e.r_plus_mean = parse_field(fields[1]);
    e.r_plus_sum = parse_field(fields[2]);
    e.r_minus_mean = parse_field(fields[3]);
    e.r_minus_sum = parse_field(fields[4]);
    curve.push_back(e);
  }
  return curve;
}

}  // namespace wfl::harness
