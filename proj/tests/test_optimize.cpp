#include <doctest.h>

#include <cmath>

#include "cvmi/closed_forms.hpp"
#include "cvmi/optimize.hpp"

using namespace cvmi;

TEST_CASE("golden section recovers the analytic optimum") {
  for (const auto& id : {"1d_sq_1", "1d_sq_2", "epr_disp_2", "epr_conj_2"})
    for (double n : {0.5, 1.0, 3.0})
      for (double g : {1.0, 2.0, 10.0}) {
        const OptimizationResult result = maximize_variance(id, n, g);
        const double expected = optimal_variance(id, n, g);
        CHECK(result.argmax == doctest::Approx(expected).epsilon(1e-6));
        CHECK(result.max_mi_bits == doctest::Approx(formula_mi(id, n, g)).epsilon(1e-9));
        CHECK(result.iterations > 0);
        CHECK(result.bracket_width < 1e-6);
      }
}

TEST_CASE("grid scan confirms the maximizer") {
  // Brute-force oracle, independent of the closed-form catalog.
  const double n = 1.0, g = 5.0;
  const OptimizationResult result = maximize_variance("epr_conj_2", n, g);
  double best_v = 0.0, best_mi = -1.0;
  for (int i = 1; i <= 100000; ++i) {
    const double v = i * 1e-5;
    double mi;
    try {
      mi = evaluate(build_scheme("epr_conj_2", n, g, v));
    } catch (const std::domain_error&) {
      continue;
    }
    if (mi > best_mi) {
      best_mi = mi;
      best_v = v;
    }
  }
  CHECK(result.argmax == doctest::Approx(best_v).epsilon(1e-4));
  CHECK(result.max_mi_bits >= best_mi - 1e-10);
  CHECK(result.argmax == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(result.max_mi_bits == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("maximize_variance argument validation") {
  CHECK_THROWS_AS(maximize_variance("1d_coh_1", 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(maximize_variance("1d_sq_1", 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("crossing thresholds") {
  // EPR displacement overtakes conjugate coherent pairs at n = 2 ...
  const CrossingResult a = crossing_threshold("eq13", "eq14", 1.0);
  CHECK(a.found);
  CHECK(a.n_star == doctest::Approx(2.0).epsilon(1e-8));
  // ... and the single-use squeezed scheme at n = 4.
  const CrossingResult b = crossing_threshold("eq9", "eq14", 1.0);
  CHECK(b.found);
  CHECK(b.n_star == doctest::Approx(4.0).epsilon(1e-8));

  // Bisection oracle: the sign really flips across the root.
  CHECK(formula_mi("eq13", a.n_star - 1e-6, 1.0) < formula_mi("eq14", a.n_star - 1e-6, 1.0));
  CHECK(formula_mi("eq13", a.n_star + 1e-6, 1.0) > formula_mi("eq14", a.n_star + 1e-6, 1.0));

  CHECK_FALSE(crossing_threshold("eq13", "eq14", 1.0, {5.0, 100.0}).found);
  CHECK_THROWS_AS(crossing_threshold("eq13", "eq14", 1.0, {1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("threshold curve follows 4 / (2g - 1)") {
  const ThresholdCurve curve = threshold_curve("1d_coh_2", {2.0, 5.0, 10.0});
  REQUIRE(curve.points.size() == 3);
  for (const auto& point : curve.points) {
    CHECK(point.found);
    CHECK(point.n_star == doctest::Approx(4.0 / (2.0 * point.gain - 1.0)).epsilon(1e-6));
  }
  CHECK_THROWS_AS(threshold_curve("2d_coh_1", {2.0}), std::invalid_argument);
}

TEST_CASE("no finite threshold for the squeezed variant at unit gain") {
  const ThresholdCurve curve = threshold_curve("1d_sq_2", {1.0, 10.0});
  REQUIRE(curve.points.size() == 2);
  CHECK_FALSE(curve.points[0].found);
  CHECK(curve.points[1].found);
}

TEST_CASE("asymptotic threshold constants") {
  CHECK(fitted_asymptotic_constant("1d_sq_2") == doctest::Approx(4.0).epsilon(0.05));
  CHECK(fitted_asymptotic_constant("1d_coh_2") == doctest::Approx(2.0).epsilon(0.05));
  CHECK(fitted_asymptotic_constant("1d_sq_1") == doctest::Approx(1.0).epsilon(0.05));
}
