// Declarative experiment configs. The on-disk format is flat key = value
// text; a [section] opens one named config and inherits every assignment
// made before the first section. beta0 values accept "inf" for plain TD.
// Every emitted file embeds the FNV-1a hash of the canonical serialization.

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace wfl::harness {

struct ExperimentConfig {
  std::string name = "default";

  double beta0_plus = std::numeric_limits<double>::infinity();
  double beta0_minus = std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  int episodes = 300;

  double gamma = 0.99;
  double zeta = 0.999;
  double lr = 1e-3;
  double beta_w = 10.0;
  double kappa = 0.01;
  double tau = 0.01;
  int batch_size = 32;
  std::size_t replay_capacity = 10000;
  std::vector<int> hidden = {100, 100};

  std::string canonical() const;
  std::uint64_t hash() const;
};

std::uint64_t fnv1a(const std::string& text);

// "3", "1,4,9" or "0..9" (inclusive range)
std::vector<std::uint64_t> parse_seed_spec(const std::string& spec);

std::vector<ExperimentConfig> parse_config_text(const std::string& text);
std::vector<ExperimentConfig> load_config_file(const std::string& path);

}  // namespace wfl::harness
