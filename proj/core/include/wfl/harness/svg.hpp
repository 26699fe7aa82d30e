// Minimal self-contained SVG rendering: learning curves as median lines
// with interquartile bands, contour fields as heatmaps with iso-lines.

#pragma once

#include <string>
#include <vector>

#include "wfl/harness/contour.hpp"
#include "wfl/harness/curve.hpp"

namespace wfl::harness {

std::string learning_curve_svg(const std::string& title, const AggregateCurve& agg);
std::string contour_svg(const std::string& title, const ContourField& field, int iso_levels = 9);

}  // namespace wfl::harness
