#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cvmi/schemes.hpp"

// Golden-section maximization of free scheme variances under the photon
// budget, and bisection root-finding for scheme crossings and thresholds.

namespace cvmi {

struct OptimizationResult {
  double argmax = 1.0;       // variance at the maximum
  double max_mi_bits = 0.0;
  int iterations = 0;
  double bracket_width = 0.0;  // final width in the variance
};

// Golden-section search over log V on [1e-6, 1], objective = engine MI of
// the scheme built with that variance. The bracket is shrunk to the
// budget-feasible region first; tol is absolute in log V.
OptimizationResult maximize_variance(const std::string& id, double n, double g,
                                     double tol = 1e-10);

struct CrossingResult {
  bool found = false;
  double n_star = 0.0;
};

// Bisection on f(n) = formula_mi(id_a, n, g) - formula_mi(id_b, n, g) to
// |dn| <= 1e-9. Reports found = false when f has no sign change on the
// bracket.
CrossingResult crossing_threshold(const std::string& id_a, const std::string& id_b,
                                  double g,
                                  std::pair<double, double> bracket = {1e-6, 100.0});

struct ThresholdPoint {
  double gain = 1.0;
  bool found = false;
  double n_star = 0.0;
};

struct ThresholdCurve {
  std::string variant;
  std::vector<ThresholdPoint> points;
};

// Threshold photon number above which the double-use 2D coherent scheme
// beats the given gain-degraded variant ("1d_sq_1", "1d_coh_2" or
// "1d_sq_2"), per gain in the grid.
ThresholdCurve threshold_curve(const std::string& variant_id,
                               const std::vector<double>& gains);

// Large-g constant c in n*(g) ~ c / g, fitted as n*(g_ref) * g_ref.
double fitted_asymptotic_constant(const std::string& variant_id, double g_ref = 1e3);

}  // namespace cvmi
