// Checkpoint format: one flat little-endian float64 array (<base>.f64) plus
// a JSON sidecar (<base>.json) listing each named block's offset, length,
// and, for network blocks, the layer shapes. Small scalar state (scale
// trackers, optimizer step counters) lives directly in the sidecar.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wfl::nn {

struct CheckpointBlock {
  std::string name;
  std::vector<double> data;
  std::vector<int> layer_sizes;  // empty for non-network blocks
};

struct Checkpoint {
  std::vector<CheckpointBlock> blocks;
  std::map<std::string, double> scalars;
  std::map<std::string, std::int64_t> counters;

  CheckpointBlock& add_block(std::string name, std::span<const double> data,
                             std::vector<int> layer_sizes = {});
  const CheckpointBlock* find(const std::string& name) const;

  // Writes <base>.f64 and <base>.json.
  void save(const std::string& base_path) const;
  static Checkpoint load(const std::string& base_path);
};

}  // namespace wfl::nn
