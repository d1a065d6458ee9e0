#pragma once

#include <cstdint>

#include "cvmi/schemes.hpp"

// Sampling-based MI estimator validating the analytic engine end to end.
//
// Sampling layout, fixed for reproducibility: 20 batches, batch b drawn from
// an mt19937_64 engine seeded with splitmix64(seed + b), Gaussian variates by
// Box-Muller on 53-bit uniforms. Batches may run in parallel; the reduction
// order is fixed, so results are bit-identical for any thread count.

namespace cvmi {

struct McEstimate {
  double mi = 0.0;         // plug-in estimate from the full-sample covariance
  double std_error = 0.0;  // from 20-way batching
  int batches = 20;
  std::int64_t samples_used = 0;
};

// Draws `samples` symbol/outcome pairs (rounded down to a multiple of 20),
// forms sample covariance blocks and plugs them into gaussian_mi. The
// plug-in estimator carries a small-sample bias of order m / (2 N ln 2) bits
// which is documented, not corrected. Requires samples >= 1000.
McEstimate estimate_mi(const SchemeSpec& spec, std::int64_t samples, std::uint64_t seed,
                       LogBase base = LogBase::Bits, int threads = 1);

}  // namespace cvmi
