#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wfl/update_rule.hpp"

using namespace wfl;

namespace {

// Independent expectation of (d/dV ln p(O|V))^2 over the binary optimality
// variable, with the derivative taken by central differences.
double fisher_numeric(double v, const WflParams& params, const BoundConvention& bound) {
  const double h = 1e-6;
  auto lp1 = [&](double x) { return std::log(optimality_prob(x, params, bound)); };
  auto lp0 = [&](double x) { return std::log(1.0 - optimality_prob(x, params, bound)); };
  const double p = optimality_prob(v, params, bound);
  const double d1 = (lp1(v + h) - lp1(v - h)) / (2.0 * h);
  const double d0 = (lp0(v + h) - lp0(v - h)) / (2.0 * h);
  return p * d1 * d1 + (1.0 - p) * d0 * d0;
}

}  // namespace

TEST_CASE("lambda_from_beta") {
  CHECK(lambda_from_beta(9.0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(lambda_from_beta(1.0 / 9.0) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(lambda_from_beta(1.0) == 0.5);
  CHECK(lambda_from_beta(std::numeric_limits<double>::infinity()) == 0.0);
  CHECK_THROWS_AS(lambda_from_beta(0.0), std::domain_error);
  CHECK_THROWS_AS(lambda_from_beta(-2.0), std::domain_error);
  CHECK_THROWS_AS(lambda_from_beta(std::numeric_limits<double>::quiet_NaN()), std::domain_error);

  CHECK(WflParams::from_beta(3.0).lambda == 0.25);
  CHECK(WflParams::conventional().is_conventional());
  CHECK(WflParams::conventional().lambda == 0.0);
}

TEST_CASE("optimality_prob") {
  const auto upper = BoundConvention::upper(0.0);
  const auto lower = BoundConvention::lower(0.0);
  const auto beta1 = WflParams::from_beta(1.0);

  SUBCASE("value at the bound clamps to 1-eps") {
    CHECK(optimality_prob(0.0, beta1, upper) == 1.0 - kProbEpsilon);
    CHECK(optimality_prob(0.0, beta1, lower) == 1.0 - kProbEpsilon);
  }
  SUBCASE("one unit below an upper bound at beta=1") {
    CHECK(optimality_prob(-1.0, beta1, upper) ==
          doctest::Approx(0.36787944117144233).epsilon(1e-14));
  }
  SUBCASE("mirror: one unit above a lower bound") {
    CHECK(optimality_prob(1.0, beta1, lower) ==
          doctest::Approx(0.36787944117144233).epsilon(1e-14));
  }
  SUBCASE("far values clamp at eps") {
    CHECK(optimality_prob(-1e6, beta1, upper) == kProbEpsilon);
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(optimality_prob(std::numeric_limits<double>::quiet_NaN(), beta1, upper),
                    std::domain_error);
    CHECK_THROWS_AS(optimality_prob(std::numeric_limits<double>::infinity(), beta1, upper),
                    std::domain_error);
    CHECK_THROWS_AS(optimality_prob(0.5, WflParams::conventional(), upper), std::domain_error);
  }
}

TEST_CASE("delta_ln") {
  const auto upper = BoundConvention::upper(0.0);
  const auto lower = BoundConvention::lower(0.0);
  const auto beta1 = WflParams::from_beta(1.0);

  SUBCASE("equal probabilities give zero") {
    CHECK(delta_ln(OptimalityPair{0.3, 0.3}, upper) == 0.0);
    CHECK(delta_ln(OptimalityPair{0.7, 0.7}, lower) == 0.0);
  }
  SUBCASE("upper-bound example") {
    const auto pair = optimality_pair(-1.0, -0.5, beta1, upper);
    CHECK(delta_ln(pair, upper) == doctest::Approx(0.4740769841801067).epsilon(1e-12));
  }
  SUBCASE("lower-bound mirror") {
    const auto pair = optimality_pair(1.0, 0.5, beta1, lower);
    CHECK(delta_ln(pair, lower) == doctest::Approx(-0.4740769841801067).epsilon(1e-12));
  }
  SUBCASE("invalid pair throws") {
    CHECK_THROWS_AS(delta_ln(OptimalityPair{0.0, 0.5}, upper), std::domain_error);
    CHECK_THROWS_AS(delta_ln(OptimalityPair{0.5, 1.0}, upper), std::domain_error);
  }
}

TEST_CASE("update_weight") {
  const auto upper = BoundConvention::upper(0.0);
  const auto lower = BoundConvention::lower(0.0);

  SUBCASE("plain-TD override returns exactly q - v") {
    const auto params = WflParams::conventional();
    for (int i = 0; i < 100; ++i) {
      for (int j = 0; j < 100; ++j) {
        const double v = -3.0 + 0.06 * i;
        const double q = -3.0 + 0.06 * j;
        CHECK(update_weight(v, q, params, upper) == q - v);
      }
    }
  }
  SUBCASE("composition of the two oracle terms") {
    const double w = update_weight(-1.0, -0.5, WflParams::from_beta(1.0), upper);
    CHECK(w == doctest::Approx(0.48703849209005334).epsilon(1e-12));
  }
  SUBCASE("zero TD error gives zero for any convention and beta") {
    for (double beta : {0.1, 1.0, 7.5}) {
      CHECK(update_weight(-0.4, -0.4, WflParams::from_beta(beta), upper) == 0.0);
      CHECK(update_weight(0.4, 0.4, WflParams::from_beta(beta), lower) == 0.0);
    }
  }
  SUBCASE("inadmissible values are clamped and counted") {
    diagnostics().reset();
    const auto params = WflParams::from_beta(1.0);
    const double w = update_weight(0.5, -0.5, params, upper);  // v beyond the bound
    CHECK(std::isfinite(w));
    CHECK(diagnostics().value_clamps.load() == 1);
    update_weight(-0.5, 0.5, params, upper);  // q beyond the bound
    CHECK(diagnostics().value_clamps.load() == 2);
    diagnostics().reset();
  }
  SUBCASE("non-finite input throws") {
    CHECK_THROWS_AS(
        update_weight(std::numeric_limits<double>::quiet_NaN(), 0.0,
                      WflParams::from_beta(1.0), upper),
        std::domain_error);
  }
}

TEST_CASE("sign consistency: weight > 0 iff q > v") {
  const auto upper = BoundConvention::upper(0.0);
  const auto lower = BoundConvention::lower(0.0);
  for (double beta : {0.05, 0.5, 1.0, 4.0, 25.0}) {
    const auto params = WflParams::from_beta(beta);
    for (int i = 1; i <= 40; ++i) {
      for (int j = 1; j <= 40; ++j) {
        const double v = -0.075 * i;
        const double q = -0.075 * j;
        const double wu = update_weight(v, q, params, upper);
        const double wl = update_weight(-v, -q, params, lower);
        if (q > v) {
          CHECK(wu > 0.0);
          CHECK(wl < 0.0);
        } else if (q < v) {
          CHECK(wu < 0.0);
          CHECK(wl > 0.0);
        } else {
          CHECK(wu == 0.0);
          CHECK(wl == 0.0);
        }
      }
    }
  }
}

TEST_CASE("mirror symmetry between bound conventions") {
  const auto upper = BoundConvention::upper(0.0);
  const auto lower = BoundConvention::lower(0.0);
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> val(-4.0, -1e-6);
  std::uniform_real_distribution<double> betas(0.05, 20.0);
  for (int k = 0; k < 2000; ++k) {
    const double v = val(gen);
    const double q = val(gen);
    const auto params = WflParams::from_beta(betas(gen));
    const double wu = update_weight(v, q, params, upper);
    const double wl = update_weight(-v, -q, params, lower);
    CHECK(std::abs(wu + wl) <= 1e-12);
  }
}

TEST_CASE("log-ratio magnitude grows toward the bound at fixed gap") {
  const auto upper = BoundConvention::upper(0.0);
  const auto params = WflParams::from_beta(1.0);

  const auto near = optimality_pair(-0.2, -0.1, params, upper);
  const auto far = optimality_pair(-1.0, -0.9, params, upper);
  CHECK(delta_ln(near, upper) == doctest::Approx(0.6443966600735705).epsilon(1e-12));
  CHECK(delta_ln(far, upper) == doctest::Approx(0.06316029752164043).epsilon(1e-12));

  double prev = std::numeric_limits<double>::infinity();
  for (double v = -0.15; v >= -3.0; v -= 0.05) {
    const auto pair = optimality_pair(v, v + 0.1, params, upper);
    const double mag = std::abs(delta_ln(pair, upper));
    CHECK(mag < prev);
    prev = mag;
  }
}

TEST_CASE("taylor_delta_ln") {
  const auto upper = BoundConvention::upper(0.0);
  const auto lower = BoundConvention::lower(0.0);

  SUBCASE("zero gap") {
    CHECK(taylor_delta_ln(-0.3, -0.3, upper) == 0.0);
  }
  SUBCASE("doubling the distance gives ln 2") {
    CHECK(taylor_delta_ln(-0.2, -0.1, upper) ==
          doctest::Approx(0.6931471805599453).epsilon(1e-14));
    CHECK(taylor_delta_ln(0.2, 0.1, lower) ==
          doctest::Approx(-0.6931471805599453).epsilon(1e-14));
  }
  SUBCASE("first-order reference is ~7% off at beta*distance = 0.2") {
    const auto params = WflParams::from_beta(1.0);
    const double exact = delta_ln(optimality_pair(-0.2, -0.1, params, upper), upper);
    const double ref = taylor_delta_ln(-0.2, -0.1, upper);
    CHECK(exact == doctest::Approx(0.6443966600735705).epsilon(1e-12));
    CHECK(std::abs(exact - ref) / std::abs(ref) < 0.08);
  }
  SUBCASE("values at the bound are a domain error") {
    CHECK_THROWS_AS(taylor_delta_ln(0.0, -0.1, upper), std::domain_error);
    CHECK_THROWS_AS(taylor_delta_ln(-0.1, 0.0, upper), std::domain_error);
  }
}

TEST_CASE("taylor reference converges: within 1% when beta*distance <= 0.01") {
  for (const bool is_upper : {true, false}) {
    const auto bound = is_upper ? BoundConvention::upper(0.0) : BoundConvention::lower(0.0);
    const double side = is_upper ? -1.0 : 1.0;
    for (double beta : {0.1, 1.0, 10.0}) {
      const auto params = WflParams::from_beta(beta);
      const double dmax = 0.01 / beta;
      for (double fv : {0.2, 0.5, 1.0}) {
        for (double fq : {0.3, 0.7, 1.0}) {
          const double v = side * fv * dmax;
          const double q = side * fq * dmax;
          if (v == q) continue;
          const double exact = delta_ln(optimality_pair(v, q, params, bound), bound);
          const double ref = taylor_delta_ln(v, q, bound);
          CHECK(std::abs(exact - ref) / std::abs(ref) <= 0.01);
        }
      }
    }
  }
}

TEST_CASE("fisher_information") {
  const auto upper = BoundConvention::upper(0.0);

  SUBCASE("p = 1/2 at beta = 1 gives exactly the plug-in value") {
    const double v = -std::log(2.0);
    CHECK(fisher_information(v, WflParams::from_beta(1.0), upper) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("beta=2 half a unit from the bound") {
    CHECK(fisher_information(-0.5, WflParams::from_beta(2.0), upper) ==
          doctest::Approx(2.327906827477306).epsilon(1e-12));
  }
  SUBCASE("closed form equals the binary-expectation oracle within 1e-6") {
    for (const bool is_upper : {true, false}) {
      const auto bound = is_upper ? BoundConvention::upper(0.0) : BoundConvention::lower(0.0);
      const double side = is_upper ? -1.0 : 1.0;
      for (double beta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const auto params = WflParams::from_beta(beta);
        for (double d = 0.2; d <= 3.0; d += 0.2) {
          const double v = side * d;
          CHECK(fisher_information(v, params, bound) ==
                doctest::Approx(fisher_numeric(v, params, bound)).epsilon(1e-6));
        }
      }
    }
  }
  SUBCASE("value at the bound yields a large finite value and a flag") {
    diagnostics().reset();
    const double f = fisher_information(0.0, WflParams::from_beta(1.0), upper);
    CHECK(std::isfinite(f));
    CHECK(f > 1e10);
    CHECK(diagnostics().prob_saturations.load() >= 1);
    diagnostics().reset();
  }
}

TEST_CASE("contour-field property") {
  const auto upper = BoundConvention::upper(0.0);

  SUBCASE("lambda=0.9: magnitude at fixed gap falls with distance to the bound") {
    const auto params = WflParams::from_beta(1.0 / 9.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double v = -0.15; v >= -0.95; v -= 0.05) {
      const double mag = std::abs(update_weight(v, v + 0.1, params, upper));
      CHECK(mag < prev);
      prev = mag;
    }
    const double near = std::abs(update_weight(-0.2, -0.1, params, upper));
    const double far = std::abs(update_weight(-0.9, -0.8, params, upper));
    CHECK(near > 3.0 * far);
  }
  SUBCASE("lambda=0.1 far from the bound: weight within 10% of 0.9*delta") {
    const auto params = WflParams::from_beta(9.0);
    for (double v = -0.95; v <= -0.6 + 1e-9; v += 0.05) {
      for (double delta : {0.02, 0.05, 0.1}) {
        const double w = update_weight(v, v + delta, params, upper);
        CHECK(std::abs(w - 0.9 * delta) <= 0.1 * 0.9 * delta);
      }
    }
  }
}
