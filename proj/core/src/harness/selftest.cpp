#include "wfl/harness/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wfl/update_rule.hpp"

namespace wfl::harness {

namespace {

bool report(std::ostream& out, const std::string& name, bool ok, const std::string& detail) {
  out << (ok ? "[ ok ] " : "[FAIL] ") << name;
  if (!detail.empty()) out << "  (" << detail << ")";
  out << '\n';
  return ok;
}

}  // namespace

bool selftest(std::ostream& out) {
  bool all = true;

  {  // plain-TD recovery: lambda = 0 gives exactly q - v
    const auto bound = BoundConvention::upper(0.0);
    const auto params = WflParams::conventional();
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      for (int j = 0; j < 100; ++j) {
        const double v = -2.0 + 0.02 * i;
        const double q = -2.0 + 0.02 * j;
        worst = std::max(worst, std::abs(update_weight(v, q, params, bound) - (q - v)));
      }
    }
    all &= report(out, "plain TD recovery at lambda=0", worst <= 1e-12,
                  "max |weight-(q-v)| = " + std::to_string(worst));
  }

  {  // mirror symmetry between the two bound conventions
    const auto up = BoundConvention::upper(0.0);
    const auto lo = BoundConvention::lower(0.0);
    const auto params = WflParams::from_beta(1.0);
    double worst = 0.0;
    for (int i = 1; i <= 60; ++i) {
      for (int j = 1; j <= 60; ++j) {
        const double v = -0.05 * i;
        const double q = -0.05 * j;
        worst = std::max(worst, std::abs(update_weight(v, q, params, up) +
                                         update_weight(-v, -q, params, lo)));
      }
    }
    all &= report(out, "mirror symmetry upper/lower", worst <= 1e-12,
                  "max asymmetry = " + std::to_string(worst));
  }

  {  // first-order reference within 1% close to the bound
    const auto bound = BoundConvention::upper(0.0);
    const auto params = WflParams::from_beta(1.0);
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
      const double v = -0.001 * i;
      const double q = v + 0.0004;
      const auto pair = optimality_pair(v, q, params, bound);
      const double exact = delta_ln(pair, bound);
      const double ref = taylor_delta_ln(v, q, bound);
      worst = std::max(worst, std::abs(exact - ref) / std::abs(ref));
    }
    all &= report(out, "log-ratio matches first-order reference near bound", worst <= 0.01,
                  "max rel err = " + std::to_string(worst));
  }

  {  // monotonicity: same gap, stronger response closer to the bound
    const auto bound = BoundConvention::upper(0.0);
    const auto params = WflParams::from_beta(1.0);
    bool mono = true;
    double prev = std::numeric_limits<double>::infinity();
    for (double v = -0.2; v >= -1.01; v -= 0.1) {
      const auto pair = optimality_pair(v, v + 0.1, params, bound);
      const double d = std::abs(delta_ln(pair, bound));
      mono &= d < prev;
      prev = d;
    }
    all &= report(out, "update magnitude grows toward the bound", mono, "");
  }

  {  // Fisher identity against the direct binary expectation
    bool ok = true;
    for (double beta : {0.5, 1.0, 2.0}) {
      const auto params = WflParams::from_beta(beta);
      const auto bound = BoundConvention::upper(0.0);
      for (double v = -3.0; v <= -0.2; v += 0.4) {
        const double p = optimality_prob(v, params, bound);
        const double h = 1e-6;
        auto logp1 = [&](double x) { return std::log(optimality_prob(x, params, bound)); };
        auto logp0 = [&](double x) { return std::log(1.0 - optimality_prob(x, params, bound)); };
        const double d1 = (logp1(v + h) - logp1(v - h)) / (2 * h);
        const double d0 = (logp0(v + h) - logp0(v - h)) / (2 * h);
        const double expectation = p * d1 * d1 + (1.0 - p) * d0 * d0;
        ok &= std::abs(expectation - fisher_information(v, params, bound)) <= 1e-6;
      }
    }
    all &= report(out, "Fisher information closed form", ok, "");
  }

  {  // contour shape: radial near-bound amplification vs near-linear far field
    const auto bound = BoundConvention::upper(0.0);
    const auto strong = WflParams::from_beta(1.0 / 9.0);  // lambda = 0.9
    const double near = std::abs(update_weight(-0.2, -0.1, strong, bound));
    const double far = std::abs(update_weight(-0.9, -0.8, strong, bound));
    bool ok = near > 3.0 * far;
    const auto weak = WflParams::from_beta(9.0);  // lambda = 0.1
    for (double v = -0.99; v <= -0.5; v += 0.07) {
      const double w = update_weight(v, v + 0.1, weak, bound);
      ok &= std::abs(w - 0.09) <= 0.1 * 0.09;
    }
    all &= report(out, "contour field shape", ok, "");
  }

  out << (all ? "selftest passed\n" : "selftest FAILED\n");
  return all;
}

}  // namespace wfl::harness
