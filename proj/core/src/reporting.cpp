#include "cvmi/reporting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cvmi/closed_forms.hpp"
#include "cvmi/montecarlo.hpp"
#include "cvmi/optimize.hpp"

namespace cvmi {

namespace {

const std::vector<double> kGainGrid = {1.0, 1.5, 2.0, 5.0, 10.0, 100.0};

std::vector<double> budget_grid() {  // 20 points in (0, 10]
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(0.5 * i);
  return grid;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  for (std::thread& t : pool) t.join();
}

std::string format_check(double observed, double expected, double tolerance) {
  std::ostringstream out;
  out << "observed " << format_sig(observed, 6) << ", expected " << format_sig(expected, 6)
      << ", tolerance " << format_sig(tolerance, 3);
  return out.str();
}

}  // namespace

std::string format_sig(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
  return buffer;
}

std::string run_sweep_csv(const SweepRequest& request) {
  if (request.schemes.empty()) throw std::invalid_argument("scheme list is empty");
  if (request.n_points < 1 || request.n_min < 0.0 || request.n_max < request.n_min)
    throw std::invalid_argument("invalid n grid");
  if (request.gains.empty()) throw std::invalid_argument("gain list is empty");
  for (const std::string& id : request.schemes)
    if (!is_scheme_id(id)) throw std::invalid_argument("unknown scheme id: " + id);
  for (double g : request.gains)
    if (g < 1.0) throw std::invalid_argument("gain must be at least 1");

  std::vector<std::string> schemes = request.schemes;
  std::sort(schemes.begin(), schemes.end());
  std::vector<double> grid;
  for (int i = 0; i < request.n_points; ++i)
    grid.push_back(request.n_points == 1
                       ? request.n_min
                       : request.n_min + (request.n_max - request.n_min) * i /
                                             (request.n_points - 1));
  std::vector<double> gains = request.gains;
  std::sort(gains.begin(), gains.end());

  struct Point {
    std::string scheme;
    double n, g;
  };
  std::vector<Point> points;
  for (const std::string& id : schemes)
    for (double n : grid)
      for (double g : gains) points.push_back({id, n, g});

  std::vector<std::string> rows(points.size());
  parallel_for(static_cast<int>(points.size()), resolve_threads(request.threads),
               [&](int i) {
                 const Point& pt = points[static_cast<size_t>(i)];
                 const double engine = evaluate(build_scheme(pt.scheme, pt.n, pt.g),
                                                request.base);
                 const double formula = formula_mi(pt.scheme, pt.n, pt.g, request.base);
                 std::ostringstream row;
                 row << pt.scheme << ',' << format_sig(pt.n) << ',' << format_sig(pt.g)
                     << ',' << format_sig(engine) << ',' << format_sig(formula) << ','
                     << format_sig(std::abs(engine - formula));
                 rows[static_cast<size_t>(i)] = row.str();
               });

  std::string csv = "scheme,n,g,mi_bits,mi_formula_bits,abs_diff\n";
  for (const std::string& row : rows) {
    csv += row;
    csv += '\n';
  }
  return csv;
}

std::string figure_csv(const std::string& name) {
  std::ostringstream csv;
  if (name == "fig2") {
    csv << "n,2d_coh_2,epr_disp_2,conj_coh_2,epr_conj_2\n";
    for (int i = 0; i <= 100; ++i) {
      const double n = 0.1 * i;
      csv << format_sig(n) << ',' << format_sig(formula_mi("2d_coh_2", n)) << ','
          << format_sig(formula_mi("epr_disp_2", n)) << ','
          << format_sig(formula_mi("conj_coh_2", n)) << ','
          << format_sig(formula_mi("epr_conj_2", n)) << '\n';
    }
  } else if (name == "fig3") {
    csv << "n,2d_coh_2,epr_conj_2,1d_coh_2_g1,1d_coh_2_ginf,1d_sq_2_g1,1d_sq_2_ginf\n";
    for (int i = 0; i <= 100; ++i) {
      const double n = 0.1 * i;
      csv << format_sig(n) << ',' << format_sig(formula_mi("2d_coh_2", n)) << ','
          << format_sig(formula_mi("epr_conj_2", n)) << ','
          << format_sig(formula_mi("1d_coh_2", n, 1.0)) << ','
          << format_sig(high_gain_limit("1d_coh_2", n)) << ','
          << format_sig(formula_mi("1d_sq_2", n, 1.0)) << ','
          << format_sig(high_gain_limit("1d_sq_2", n)) << '\n';
    }
  } else if (name == "figA1") {
    csv << "g,nstar_1d_sq_1,nstar_1d_coh_2,nstar_1d_sq_2\n";
    const std::vector<std::string> variants = {"1d_sq_1", "1d_coh_2", "1d_sq_2"};
    for (int g = 1; g <= 100; ++g) {
      csv << format_sig(static_cast<double>(g));
      for (const std::string& variant : variants) {
        const CrossingResult crossing =
            crossing_threshold("2d_coh_2", variant, static_cast<double>(g));
        csv << ',';
        if (crossing.found) csv << format_sig(crossing.n_star);
      }
      csv << '\n';
    }
  } else {
    throw std::invalid_argument("unknown figure name: " + name);
  }
  return csv.str();
}

namespace {

CheckResult check_double_entry(double tolerance) {
  double worst = 0.0;
  std::string where;
  for (const std::string& id : scheme_ids())
    for (double n : budget_grid())
      for (double g : kGainGrid) {
        const double diff =
            std::abs(evaluate(build_scheme(id, n, g)) - formula_mi(id, n, g));
        if (diff > worst) {
          worst = diff;
          where = id + " n=" + format_sig(n, 4) + " g=" + format_sig(g, 4);
        }
      }
  std::string detail = "max |engine - formula| = " + format_sig(worst, 6) + " bits";
  if (!where.empty()) detail += " at " + where;
  return {"double-entry engine vs closed forms", worst <= tolerance, detail};
}

CheckResult check_gain_behaviour(double tolerance) {
  bool pass = true;
  std::string detail;
  const std::vector<double> budgets = {0.5, 2.0, 5.0};
  for (const std::string& id : scheme_ids()) {
    for (double n : budgets) {
      std::vector<double> values;
      for (double g : kGainGrid) values.push_back(evaluate(build_scheme(id, n, g)));
      if (is_gain_invariant(id)) {
        const double spread = *std::max_element(values.begin(), values.end()) -
                              *std::min_element(values.begin(), values.end());
        if (spread > tolerance) {
          pass = false;
          detail = id + " spread " + format_sig(spread, 6) + " bits at n=" + format_sig(n, 4);
        }
      } else {
        for (size_t i = 1; i < values.size(); ++i)
          if (values[i] >= values[i - 1]) {
            pass = false;
            detail = id + " not strictly decreasing at n=" + format_sig(n, 4);
          }
      }
    }
  }
  if (pass) detail = "invariant schemes flat, 1D schemes strictly decreasing in g";
  return {"gain invariance / degradation", pass, detail};
}

CheckResult check_crossings() {
  const CrossingResult epr_vs_conj = crossing_threshold("epr_disp_2", "conj_coh_2", 1.0);
  const CrossingResult het_vs_conj = crossing_threshold("2d_coh_2", "conj_coh_2", 1.0);
  const bool pass = epr_vs_conj.found && het_vs_conj.found &&
                    std::abs(epr_vs_conj.n_star - 2.0) <= 1e-6 &&
                    std::abs(het_vs_conj.n_star - 4.0) <= 1e-6;
  return {"crossings at n*=2 and n*=4", pass,
          "n* = " + format_sig(epr_vs_conj.n_star, 10) + " and " +
              format_sig(het_vs_conj.n_star, 10)};
}

CheckResult check_high_gain_limits() {
  bool pass = true;
  double worst = 0.0;
  const std::vector<std::string> ids = {"1d_coh_1", "1d_sq_1", "1d_coh_2", "1d_sq_2"};
  for (const std::string& id : ids)
    for (double n : {0.5, 1.0, 2.0, 5.0}) {
      const double diff = std::abs(formula_mi(id, n, 1e6) - high_gain_limit(id, n));
      worst = std::max(worst, diff);
      if (diff > 1e-3) pass = false;
    }
  const double spot = high_gain_limit("1d_sq_1", 1.0);
  if (std::abs(spot - 0.87066) > 1e-4) pass = false;
  return {"high-gain limits", pass,
          "max |g=1e6 - limit| = " + format_sig(worst, 4) + " bits, spot value " +
              format_sig(spot, 6)};
}

CheckResult check_optimizer() {
  bool pass = true;
  std::string detail;
  double worst_rel = 0.0;
  for (const std::string& id : {"1d_sq_1", "1d_sq_2", "epr_disp_2", "dense_coding"})
    for (double n : {0.5, 1.0, 2.0, 5.0})
      for (double g : {1.0, 2.0, 10.0, 1e6}) {
        const double expected = optimal_variance(id, n, g);
        const OptimizationResult result = maximize_variance(id, n, g);
        const double rel = std::abs(result.argmax - expected) / expected;
        worst_rel = std::max(worst_rel, rel);
        if (rel > 1e-6) {
          pass = false;
          detail = std::string(id) + " n=" + format_sig(n, 4) + " g=" + format_sig(g, 4);
        }
      }
  // Implied optimum of the combined scheme: V = 1/(1+n), MI = 2 log2(1+n).
  for (double n : {0.5, 1.0, 2.0, 5.0})
    for (double g : {1.0, 5.0}) {
      const OptimizationResult result = maximize_variance("epr_conj_2", n, g);
      const double v_expected = 1.0 / (1.0 + n);
      const double mi_expected = 2.0 * std::log2(1.0 + n);
      worst_rel = std::max(worst_rel, std::abs(result.argmax - v_expected) / v_expected);
      if (std::abs(result.argmax - v_expected) / v_expected > 1e-6 ||
          std::abs(result.max_mi_bits - mi_expected) > 1e-9) {
        pass = false;
        detail = "epr_conj_2 n=" + format_sig(n, 4);
      }
    }
  if (pass) detail = "max relative argmax error " + format_sig(worst_rel, 4);
  return {"optimizer vs closed-form optima", pass, detail};
}

CheckResult check_equivalences(double tolerance) {
  double worst = 0.0;
  for (double n : budget_grid()) {
    worst = std::max(worst, std::abs(evaluate(build_scheme("1d_coh_2", n, 1.0)) -
                                     evaluate(build_scheme("conj_coh_2", n, 1.0))));
    worst = std::max(worst, std::abs(evaluate(build_scheme("1d_sq_2", n, 1.0)) -
                                     evaluate(build_scheme("epr_conj_2", n, 1.0))));
  }
  return {"unamplified equivalences", worst <= tolerance,
          "max |difference| = " + format_sig(worst, 6) + " bits"};
}

CheckResult check_monte_carlo(const VerifyOptions& options) {
  struct Tuple {
    const char* id;
    double n, g;
  };
  const std::vector<Tuple> tuples = {{"2d_coh_1", 1.0, 1.0},  {"1d_coh_1", 1.0, 2.0},
                                     {"conj_coh_2", 2.0, 5.0}, {"epr_conj_2", 2.0, 3.0},
                                     {"epr_disp_2", 1.0, 1.0}, {"2d_coh_2", 4.0, 10.0}};
  bool pass = true;
  std::string detail;
  double worst_sigmas = 0.0;
  const int threads = resolve_threads(options.threads);
  for (const Tuple& t : tuples) {
    const SchemeSpec spec = build_scheme(t.id, t.n, t.g);
    const McEstimate estimate =
        estimate_mi(spec, options.mc_samples, options.seed, LogBase::Bits, threads);
    const double truth = formula_mi(t.id, t.n, t.g);
    const double sigmas = std::abs(estimate.mi - truth) / estimate.std_error;
    worst_sigmas = std::max(worst_sigmas, sigmas);
    if (sigmas > 3.0 || estimate.std_error > 0.02) {
      pass = false;
      detail = std::string(t.id) + ": " + format_check(estimate.mi, truth,
                                                       3.0 * estimate.std_error);
    }
  }
  // Determinism across repeated runs and thread counts.
  const SchemeSpec spec = build_scheme("conj_coh_2", 2.0, 5.0);
  const McEstimate first = estimate_mi(spec, options.mc_samples, options.seed,
                                       LogBase::Bits, 1);
  const McEstimate repeat = estimate_mi(spec, options.mc_samples, options.seed,
                                        LogBase::Bits, 1);
  const McEstimate threaded = estimate_mi(spec, options.mc_samples, options.seed,
                                          LogBase::Bits, 4);
  if (first.mi != repeat.mi || first.mi != threaded.mi ||
      first.std_error != threaded.std_error) {
    pass = false;
    detail = "estimates not deterministic across runs/thread counts";
  }
  if (pass)
    detail = "all tuples within 3 SE (worst " + format_sig(worst_sigmas, 3) +
             " SE), deterministic";
  return {"Monte Carlo oracle", pass, detail};
}

CheckResult check_thresholds() {
  bool pass = true;
  std::string detail;
  for (double g : {2.0, 5.0, 10.0}) {
    const CrossingResult crossing = crossing_threshold("2d_coh_2", "1d_coh_2", g);
    const double expected = 4.0 / (2.0 * g - 1.0);
    if (!crossing.found || std::abs(crossing.n_star - expected) > 1e-6) {
      pass = false;
      detail = "n*(g=" + format_sig(g, 3) + ") " +
               format_check(crossing.n_star, expected, 1e-6);
    }
  }
  // Fitted constants at g = 1e3, top to bottom {4, 2, 1}.
  std::vector<double> constants;
  for (const std::string& variant : {"1d_sq_2", "1d_coh_2", "1d_sq_1"})
    constants.push_back(fitted_asymptotic_constant(variant));
  const std::vector<double> expected_constants = {4.0, 2.0, 1.0};
  for (size_t i = 0; i < constants.size(); ++i)
    if (std::abs(constants[i] - expected_constants[i]) > 0.05 * expected_constants[i]) {
      pass = false;
      detail = "fitted constant " + format_check(constants[i], expected_constants[i],
                                                 0.05 * expected_constants[i]);
    }
  if (crossing_threshold("2d_coh_2", "1d_sq_2", 1.0).found) {
    pass = false;
    detail = "unexpected finite threshold for 1d_sq_2 at g=1";
  }
  if (pass)
    detail = "n* = 4/(2g-1); fitted constants {" + format_sig(constants[0], 4) + ", " +
             format_sig(constants[1], 4) + ", " + format_sig(constants[2], 4) + "}";
  return {"threshold curve", pass, detail};
}

CheckResult check_physicality() {
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> op_kind(0, 5);
  std::uniform_int_distribution<int> mode_pick(0, 2);
  bool pass = true;
  std::string detail;
  double min_nu = 1e9;

  // Four active ops per sequence and squeezing variances in [0.1, 1]: the
  // accumulated covariance stays within the range where the 1e-9 eigenvalue
  // tolerance is meaningful in double precision.
  for (int trial = 0; trial < 1000 && pass; ++trial) {
    GaussianState state = vacuum(3);
    for (int step = 0; step < 4; ++step) {
      const int a = mode_pick(rng);
      int b = mode_pick(rng);
      if (b == a) b = (a + 1) % 3;
      const double g = 1.0 + 9.0 * unit(rng);
      const double v = 0.1 + 0.9 * unit(rng);
      const double t = unit(rng);
      SymplecticOp op;
      switch (op_kind(rng)) {
        case 0:
          state = displace(state, a, 4.0 * unit(rng) - 2.0, 4.0 * unit(rng) - 2.0);
          continue;
        case 1: op = squeeze_op(3, a, v); break;
        case 2: op = two_mode_squeeze_op(3, a, b, v); break;
        case 3: op = beam_splitter_op(3, a, b, t); break;
        case 4:
          state = amplify(state, a, g);
          continue;
        case 5: op = joint_amplifier_op(3, a, b, g); break;
      }
      if (!is_symplectic(op.matrix)) {
        pass = false;
        detail = "non-symplectic operator in trial " + std::to_string(trial);
        break;
      }
      state = apply(state, op);
    }
    const PhysicalityReport report = check_physical(state);
    min_nu = std::min(min_nu, report.min_symplectic_eigenvalue);
    if (!report.ok) {
      pass = false;
      detail = "unphysical state in trial " + std::to_string(trial) +
               ", min eigenvalue " + format_sig(report.min_symplectic_eigenvalue, 6);
    }
  }
  if (pass)
    detail = "1000 random sequences physical, min symplectic eigenvalue " +
             format_sig(min_nu, 6);
  return {"physicality suite", pass, detail};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  results.push_back(check_double_entry(options.tolerance));
  results.push_back(check_gain_behaviour(options.tolerance));
  results.push_back(check_crossings());
  results.push_back(check_high_gain_limits());
  results.push_back(check_optimizer());
  results.push_back(check_equivalences(options.tolerance));
  results.push_back(check_monte_carlo(options));
  results.push_back(check_thresholds());
  results.push_back(check_physicality());
  return results;
}

}  // namespace cvmi
