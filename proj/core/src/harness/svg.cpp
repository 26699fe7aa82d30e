#include "wfl/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wfl/harness/csv.hpp"

namespace wfl::harness {

namespace {

std::string num(double v) { return format_double(v); }

struct Frame {
  double x0, y0, w, h;        // pixel rect
  double xmin, xmax, ymin, ymax;  // data rect
  double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
  double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

void data_range(const BandSeries& b, double& lo, double& hi) {
  for (const auto* v : {&b.q25, &b.q75, &b.median}) {
    for (double x : *v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
}

std::string polyline(const Frame& f, const std::vector<double>& ys, const std::string& color,
                     double width) {
  std::string p = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
                  num(width) + "\" points=\"";
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (i) p += ' ';
    p += num(f.px(static_cast<double>(i))) + ',' + num(f.py(ys[i]));
  }
  return p + "\"/>\n";
}

std::string band(const Frame& f, const BandSeries& b, const std::string& color) {
  std::string p = "<polygon fill=\"" + color + "\" fill-opacity=\"0.25\" stroke=\"none\" points=\"";
  for (std::size_t i = 0; i < b.q75.size(); ++i)
    p += num(f.px(static_cast<double>(i))) + ',' + num(f.py(b.q75[i])) + ' ';
  for (std::size_t i = b.q25.size(); i-- > 0;)
    p += num(f.px(static_cast<double>(i))) + ',' + num(f.py(b.q25[i])) + ' ';
  return p + "\"/>\n";
}

std::string panel(const Frame& f, const BandSeries& series, const std::string& color,
                  const std::string& label) {
  std::string out;
  out += "<rect x=\"" + num(f.x0) + "\" y=\"" + num(f.y0) + "\" width=\"" + num(f.w) +
         "\" height=\"" + num(f.h) + "\" fill=\"none\" stroke=\"#444\"/>\n";
  out += band(f, series, color);
  out += polyline(f, series.median, color, 1.5);
  out += "<text x=\"" + num(f.x0 + 6) + "\" y=\"" + num(f.y0 + 16) +
         "\" font-family=\"sans-serif\" font-size=\"13\">" + label + "</text>\n";
  // y extents
  out += "<text x=\"" + num(f.x0 - 4) + "\" y=\"" + num(f.y0 + 10) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + num(f.ymax) +
         "</text>\n";
  out += "<text x=\"" + num(f.x0 - 4) + "\" y=\"" + num(f.y0 + f.h) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + num(f.ymin) +
         "</text>\n";
  return out;
}

}  // namespace

std::string learning_curve_svg(const std::string& title, const AggregateCurve& agg) {
  const double width = 720, height = 520;
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                    "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
                    num(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(width / 2) + "\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">" + title + "</text>\n";

  const double n = static_cast<double>(agg.episodes ? agg.episodes - 1 : 1);

  double plo = 0.0, phi = 2.0;
  data_range(agg.r_plus_mean, plo, phi);
  Frame top{60, 40, width - 90, (height - 110) / 2, 0, std::max(n, 1.0), plo, phi};
  out += panel(top, agg.r_plus_mean, "#c03028", "episodic mean reward");

  double mlo = -0.1, mhi = 0.0;
  data_range(agg.r_minus_mean, mlo, mhi);
  Frame bottom{60, 60 + top.h, width - 90, top.h, 0, std::max(n, 1.0), mlo, mhi};
  out += panel(bottom, agg.r_minus_mean, "#2860c0", "episodic mean punishment");

  out += "<text x=\"" + num(width / 2) + "\" y=\"" + num(height - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">episode</text>\n";
  out += "</svg>\n";
  return out;
}

namespace {

// interpolated crossing of a level between two grid values
double cross(double a, double b, double level) {
  return (level - a) / (b - a);
}

std::string heat_color(double v, double vmax) {
  // diverging blue -> white -> red
  const double t = vmax > 0 ? std::clamp(v / vmax, -1.0, 1.0) : 0.0;
  const int r = static_cast<int>(t > 0 ? 255 : 255 * (1 + t));
  const int g = static_cast<int>(255 * (1 - std::abs(t)) * 0.9 + 25);
  const int b = static_cast<int>(t < 0 ? 255 : 255 * (1 - t));
  std::ostringstream c;
  c << "rgb(" << r << ',' << g << ',' << b << ")";
  return c.str();
}

}  // namespace

std::string contour_svg(const std::string& title, const ContourField& field, int iso_levels) {
  const int n = field.resolution;
  const double size = 640, margin = 50;
  const double cell = (size - 2 * margin) / n;
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(size) +
                    "\" height=\"" + num(size) + "\" viewBox=\"0 0 " + num(size) + " " +
                    num(size) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(size / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">" + title + "</text>\n";

  double vmax = 0.0;
  for (double w : field.weights) vmax = std::max(vmax, std::abs(w));

  // heatmap: x = q index, y = v index (v grows upward)
  for (int iv = 0; iv < n; ++iv) {
    for (int iq = 0; iq < n; ++iq) {
      const double x = margin + iq * cell;
      const double y = margin + (n - 1 - iv) * cell;
      out += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(cell + 0.5) +
             "\" height=\"" + num(cell + 0.5) + "\" fill=\"" +
             heat_color(field.at(iv, iq), vmax) + "\"/>\n";
    }
  }

  // marching-squares iso lines at evenly spaced levels
  std::string lines;
  for (int l = 1; l <= iso_levels; ++l) {
    const double level = -vmax + 2.0 * vmax * l / (iso_levels + 1);
    for (int iv = 0; iv + 1 < n; ++iv) {
      for (int iq = 0; iq + 1 < n; ++iq) {
        const double w00 = field.at(iv, iq), w01 = field.at(iv, iq + 1);
        const double w10 = field.at(iv + 1, iq), w11 = field.at(iv + 1, iq + 1);
        auto px = [&](double fq) { return margin + (iq + fq) * cell + cell / 2; };
        auto py = [&](double fv) { return margin + (n - 1 - iv - fv) * cell + cell / 2; };
        std::vector<std::pair<double, double>> pts;
        if ((w00 < level) != (w01 < level)) pts.emplace_back(px(cross(w00, w01, level)), py(0));
        if ((w10 < level) != (w11 < level)) pts.emplace_back(px(cross(w10, w11, level)), py(1));
        if ((w00 < level) != (w10 < level)) pts.emplace_back(px(0), py(cross(w00, w10, level)));
        if ((w01 < level) != (w11 < level)) pts.emplace_back(px(1), py(cross(w01, w11, level)));
        if (pts.size() >= 2) {
          lines += "<line x1=\"" + num(pts[0].first) + "\" y1=\"" + num(pts[0].second) +
                   "\" x2=\"" + num(pts[1].first) + "\" y2=\"" + num(pts[1].second) +
                   "\" stroke=\"#222\" stroke-width=\"0.7\"/>\n";
        }
      }
    }
  }
  out += lines;

  out += "<text x=\"" + num(size / 2) + "\" y=\"" + num(size - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">Q</text>\n";
  out += "<text x=\"16\" y=\"" + num(size / 2) +
         "\" font-family=\"sans-serif\" font-size=\"12\">V</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace wfl::harness
