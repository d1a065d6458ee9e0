#include "cvmi/optimize.hpp"

#include <cmath>
#include <stdexcept>

#include "cvmi/closed_forms.hpp"

namespace cvmi {

namespace {

constexpr double kBracketLow = 1e-6;

bool feasible(const std::string& id, double n, double g, double v) {
  try {
    build_scheme(id, n, g, v);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

}  // namespace

OptimizationResult maximize_variance(const std::string& id, double n, double g,
                                     double tol) {
  if (!has_free_variance(id))
    throw std::invalid_argument("scheme has no free variance: " + id);
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");

  // The feasible region is an interval [v_min, 1]: the intrinsic photon cost
  // v + 1/v is decreasing on (0, 1].
  double lo = kBracketLow;
  if (!feasible(id, n, g, 1.0))
    throw std::domain_error("empty feasible region for scheme " + id);
  if (!feasible(id, n, g, lo)) {
    double bad = lo, good = 1.0;
    for (int i = 0; i < 200 && good - bad > 1e-15; ++i) {
      const double mid = 0.5 * (bad + good);
      if (feasible(id, n, g, mid))
        good = mid;
      else
        bad = mid;
    }
    lo = good;
  }

  auto objective = [&](double log_v) {
    return evaluate(build_scheme(id, n, g, std::exp(log_v)));
  };

  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = std::log(lo), b = 0.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c), fd = objective(d);
  int iterations = 0;
  while (b - a > tol && iterations < 500) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
    ++iterations;
  }

  OptimizationResult result;
  result.argmax = std::exp(0.5 * (a + b));
  result.max_mi_bits = evaluate(build_scheme(id, n, g, result.argmax));
  result.iterations = iterations;
  result.bracket_width = std::exp(b) - std::exp(a);
  return result;
}

CrossingResult crossing_threshold(const std::string& id_a, const std::string& id_b,
                                  double g, std::pair<double, double> bracket) {
  auto f = [&](double n) { return formula_mi(id_a, n, g) - formula_mi(id_b, n, g); };
  double lo = bracket.first, hi = bracket.second;
  if (lo <= 0.0 || hi <= lo) throw std::invalid_argument("invalid crossing bracket");
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return {true, lo};
  if (fhi == 0.0) return {true, hi};
  if ((flo > 0.0) == (fhi > 0.0)) return {false, 0.0};
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return {true, mid};
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return {true, 0.5 * (lo + hi)};
}

ThresholdCurve threshold_curve(const std::string& variant_id,
                               const std::vector<double>& gains) {
  if (variant_id != "1d_sq_1" && variant_id != "1d_coh_2" && variant_id != "1d_sq_2")
    throw std::invalid_argument("unknown threshold variant: " + variant_id);
  ThresholdCurve curve;
  curve.variant = variant_id;
  for (double g : gains) {
    const CrossingResult crossing = crossing_threshold("2d_coh_2", variant_id, g);
    curve.points.push_back({g, crossing.found, crossing.n_star});
  }
  return curve;
}

double fitted_asymptotic_constant(const std::string& variant_id, double g_ref) {
  const CrossingResult crossing = crossing_threshold("2d_coh_2", variant_id, g_ref);
  if (!crossing.found)
    throw std::domain_error("no finite threshold for variant " + variant_id);
  return crossing.n_star * g_ref;
}

}  // namespace cvmi
