#pragma once

#include <string>
#include <vector>

#include "cvmi/detection.hpp"

// Analytic catalog of mutual information expressions, optimal variances and
// high-gain limits, used as the reference against the simulation engine.

namespace cvmi {

// Formula ids: "eq1".."eq15", "dense_coding", "a1", "a2", "eq4_limit",
// "eq10_limit". Scheme ids are accepted as aliases for their amplified
// formula (e.g. "1d_coh_1" -> eq4, "conj_coh_2" -> eq14).
const std::vector<std::string>& formula_ids();

// MI of the given formula at photon budget n and gain g. Gain-free formulas
// accept and ignore g. n = 0 returns exactly 0.
double formula_mi(const std::string& id, double n, double g = 1.0,
                  LogBase base = LogBase::Bits);

// Optimal free variance (squeezed V_gamma or two-mode-squeezed V) for
// {1d_sq_1, 1d_sq_2, epr_disp_2, epr_conj_2, dense_coding}.
double optimal_variance(const std::string& scheme_id, double n, double g = 1.0);

// g -> infinity limit for the gain-degraded schemes
// {1d_coh_1, 1d_sq_1, 1d_coh_2, 1d_sq_2}.
double high_gain_limit(const std::string& scheme_id, double n, LogBase base = LogBase::Bits);

}  // namespace cvmi
