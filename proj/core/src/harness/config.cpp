#include "wfl/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wfl::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

double parse_number(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  if (s == "inf" || s == "+inf" || s == "infinity")
    return std::numeric_limits<double>::infinity();
  double v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::runtime_error("config: bad numeric value for '" + key + "': " + s);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  return parts;
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string ExperimentConfig::canonical() const {
  std::string out;
  out += "name=" + name;
  out += ";beta0_plus=" + format_number(beta0_plus);
  out += ";beta0_minus=" + format_number(beta0_minus);
  out += ";episodes=" + std::to_string(episodes);
  out += ";gamma=" + format_number(gamma);
  out += ";zeta=" + format_number(zeta);
  out += ";lr=" + format_number(lr);
  out += ";beta_w=" + format_number(beta_w);
  out += ";kappa=" + format_number(kappa);
  out += ";tau=" + format_number(tau);
  out += ";batch_size=" + std::to_string(batch_size);
  out += ";replay_capacity=" + std::to_string(replay_capacity);
  out += ";hidden=";
  for (std::size_t i = 0; i < hidden.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(hidden[i]);
  }
  out += ";seeds=";
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(seeds[i]);
  }
  return out;
}

std::uint64_t ExperimentConfig::hash() const {
  return fnv1a(canonical());
}

std::vector<std::uint64_t> parse_seed_spec(const std::string& spec) {
  const std::string s = trim(spec);
  const auto dots = s.find("..");
  std::vector<std::uint64_t> seeds;
  if (dots != std::string::npos) {
    const std::uint64_t lo = std::stoull(trim(s.substr(0, dots)));
    const std::uint64_t hi = std::stoull(trim(s.substr(dots + 2)));
    if (hi < lo) throw std::runtime_error("config: empty seed range " + s);
    for (std::uint64_t v = lo; v <= hi; ++v) seeds.push_back(v);
    return seeds;
  }
  for (const std::string& part : split(s, ','))
    if (!part.empty()) seeds.push_back(std::stoull(part));
  if (seeds.empty()) throw std::runtime_error("config: no seeds in '" + spec + "'");
  return seeds;
}

namespace {

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "beta0_plus") cfg.beta0_plus = parse_number(value, key);
  else if (key == "beta0_minus") cfg.beta0_minus = parse_number(value, key);
  else if (key == "episodes") cfg.episodes = static_cast<int>(parse_number(value, key));
  else if (key == "gamma") cfg.gamma = parse_number(value, key);
  else if (key == "zeta") cfg.zeta = parse_number(value, key);
  else if (key == "lr") cfg.lr = parse_number(value, key);
  else if (key == "beta_w") cfg.beta_w = parse_number(value, key);
  else if (key == "kappa") cfg.kappa = parse_number(value, key);
  else if (key == "tau") cfg.tau = parse_number(value, key);
  else if (key == "batch_size") cfg.batch_size = static_cast<int>(parse_number(value, key));
  else if (key == "replay_capacity")
    cfg.replay_capacity = static_cast<std::size_t>(parse_number(value, key));
  else if (key == "seeds") cfg.seeds = parse_seed_spec(value);
  else if (key == "hidden") {
    cfg.hidden.clear();
    for (const std::string& part : split(value, ','))
      if (!part.empty()) cfg.hidden.push_back(static_cast<int>(parse_number(part, key)));
  } else {
    throw std::runtime_error("config: unknown key '" + key + "'");
  }
}

}  // namespace

std::vector<ExperimentConfig> parse_config_text(const std::string& text) {
  std::vector<ExperimentConfig> configs;
  ExperimentConfig defaults;
  ExperimentConfig* current = nullptr;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config: malformed section at line " + std::to_string(lineno));
      ExperimentConfig next = defaults;
      next.name = trim(line.substr(1, line.size() - 2));
      if (next.name.empty())
        throw std::runtime_error("config: empty section name at line " + std::to_string(lineno));
      configs.push_back(next);
      current = &configs.back();
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    apply_key(current ? *current : defaults, key, value);
  }

  if (configs.empty()) {
    // a sectionless file describes a single config
    configs.push_back(defaults);
  }
  return configs;
}

std::vector<ExperimentConfig> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace wfl::harness
