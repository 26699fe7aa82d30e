// CSV emission and parsing for learning curves. Numbers are written in
// shortest round-trip form so identical runs produce identical bytes.

#pragma once

#include <cstdint>
#include <string>

#include "wfl/harness/config.hpp"
#include "wfl/harness/curve.hpp"

namespace wfl::harness {

std::string format_double(double v);

std::string seed_csv_text(const ExperimentConfig& cfg, std::uint64_t seed,
                          const LearningCurve& curve);
std::string aggregate_csv_text(const ExperimentConfig& cfg, const AggregateCurve& agg);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

LearningCurve parse_seed_csv(const std::string& text);

}  // namespace wfl::harness
