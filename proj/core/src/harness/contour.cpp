#include "wfl/harness/contour.hpp"

#include <stdexcept>

#include "wfl/harness/csv.hpp"

namespace wfl::harness {

ContourField emit_contour_field(double lambda, const BoundConvention& bound, int resolution,
                                double lo, double hi) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::domain_error("emit_contour_field: lambda must lie strictly inside (0,1)");
  if (resolution < 2) throw std::invalid_argument("emit_contour_field: resolution too small");
  if (!(lo < hi)) throw std::invalid_argument("emit_contour_field: empty grid interval");

  ContourField field;
  field.lambda = lambda;
  field.upper_bound = bound.is_upper();
  field.bound_value = bound.bound();
  field.resolution = resolution;
  field.lo = lo;
  field.hi = hi;
  field.weights.resize(static_cast<std::size_t>(resolution) * resolution);

  const WflParams params = WflParams::from_beta((1.0 - lambda) / lambda);
  for (int iv = 0; iv < resolution; ++iv) {
    const double v = field.coord(iv);
    for (int iq = 0; iq < resolution; ++iq) {
      const double q = field.coord(iq);
      field.weights[static_cast<std::size_t>(iv) * resolution + iq] =
          update_weight(v, q, params, bound);
    }
  }
  return field;
}

std::string contour_csv_text(const ContourField& field) {
  std::string out = "# lambda=" + format_double(field.lambda) +
                    " bound=" + (field.upper_bound ? std::string("upper") : std::string("lower")) +
                    " bound_value=" + format_double(field.bound_value) +
                    " n=" + std::to_string(field.resolution) + "\n";
  out += "v\\q";
  for (int iq = 0; iq < field.resolution; ++iq) out += ',' + format_double(field.coord(iq));
  out += '\n';
  for (int iv = 0; iv < field.resolution; ++iv) {
    out += format_double(field.coord(iv));
    for (int iq = 0; iq < field.resolution; ++iq) out += ',' + format_double(field.at(iv, iq));
    out += '\n';
  }
  return out;
}

}  // namespace wfl::harness
