#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvmi/detection.hpp"

// Executable catalog of the channel configurations: state preparation,
// modulation, amplification, detection, and photon-budget accounting.

namespace cvmi {

// A complete experiment. The photon budget is the total mean photon number
// over the modes in budget_modes, measured at the channel input (before
// amplification), with independent symbol draws per use.
struct SchemeSpec {
  std::string id;
  int num_modes = 1;
  GaussianState prepared;  // zero-symbol state
  ModulationModel modulation;
  ChannelSpec channel;
  MeasurementModel detector;
  std::vector<int> budget_modes;
  double budget = 0.0;
  double gain = 1.0;
  double free_variance = 1.0;  // V_gamma or V actually used; 1 when fixed
};

const std::vector<std::string>& scheme_ids();
bool is_scheme_id(const std::string& id);
bool has_free_variance(const std::string& id);
bool is_gain_invariant(const std::string& id);

// Builds a scheme at photon budget n and gain g. Free variances default to
// the optimal values from the closed-form catalog; pass `variance` to study
// suboptimal alphabets. Throws std::domain_error when the variance makes the
// modulation variance negative (infeasible budget).
SchemeSpec build_scheme(const std::string& id, double n, double g,
                        std::optional<double> variance = std::nullopt);

// MI computed entirely through the simulation engine, never through the
// closed forms.
double evaluate(const SchemeSpec& spec, LogBase base = LogBase::Bits);

// mean_photons of the ensemble-average state over the budget modes, before
// amplification.
double photon_budget(const SchemeSpec& spec);

}  // namespace cvmi
