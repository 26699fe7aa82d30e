// Update-weight fields over a (V, Q) grid, for visualizing how the
// logarithmic term reshapes the degree of updates around the reward bound.

#pragma once

#include <string>
#include <vector>

#include "wfl/update_rule.hpp"

namespace wfl::harness {

struct ContourField {
  double lambda = 0.5;
  bool upper_bound = true;
  double bound_value = 1.0;
  int resolution = 0;
  double lo = -1.0, hi = 1.0;
  std::vector<double> weights;  // row-major: rows index v, columns index q

  double coord(int i) const {
    return lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(resolution);
  }
  double at(int iv, int iq) const {
    return weights[static_cast<std::size_t>(iv) * resolution + iq];
  }
};

// Grid cell centers lie strictly inside (lo, hi). beta is recovered from
// lambda as (1-lambda)/lambda; lambda outside (0,1) is a domain error (plain
// TD has no contour structure — drive it through a sweep config instead).
ContourField emit_contour_field(double lambda, const BoundConvention& bound, int resolution,
                                double lo, double hi);

std::string contour_csv_text(const ContourField& field);

}  // namespace wfl::harness
