#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cvmi/schemes.hpp"

// Parameter sweeps, figure data files, and the verification suite shared by
// the CLI and the acceptance tests. All CSV output uses 12 significant
// digits, '.' decimal separator and '\n' line endings, so identical inputs
// produce identical bytes.

namespace cvmi {

std::string format_sig(double value, int digits = 12);

struct SweepRequest {
  std::vector<std::string> schemes;
  double n_min = 0.0;
  double n_max = 10.0;
  int n_points = 21;
  std::vector<double> gains = {1.0};
  LogBase base = LogBase::Bits;
  int threads = 0;  // 0 = hardware concurrency
};

// CSV with header scheme,n,g,mi_bits,mi_formula_bits,abs_diff, rows sorted
// by (scheme, n, g). Engine and formula columns are both populated.
std::string run_sweep_csv(const SweepRequest& request);

// name in {fig2, fig3, figA1}; returns the CSV contents.
std::string figure_csv(const std::string& name);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  double tolerance = 1e-9;    // engine-vs-formula and invariance tolerance
  std::int64_t mc_samples = 200000;
  std::uint64_t seed = 12345;
  int threads = 0;
};

// Full invariant suite: one result per criterion (engine-vs-formula grid,
// gain invariance, crossings, high-gain limits, optimizer agreement,
// equivalences, Monte Carlo spot checks, threshold curve, physicality).
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace cvmi
