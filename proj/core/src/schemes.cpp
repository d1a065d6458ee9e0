#include "cvmi/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvmi/closed_forms.hpp"

namespace cvmi {

namespace {

void require_budget(double n) {
  if (n < 0.0) throw std::invalid_argument("photon budget must be nonnegative");
}

void require_gain(double g) {
  if (g < 1.0) throw std::invalid_argument("gain must be at least 1");
}

double require_feasible(double v_s, const std::string& id) {
  if (v_s < -1e-12)
    throw std::domain_error("infeasible budget for scheme " + id +
                            ": modulation variance would be negative");
  return std::max(v_s, 0.0);
}

Eigen::MatrixXd diagonal_cov(std::initializer_list<double> values) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) d(i++) = v;
  return d.asDiagonal();
}

ChannelSpec per_mode_amplifiers(int num_modes, double g) {
  ChannelSpec channel;
  for (int m = 0; m < num_modes; ++m) channel.push_back(SingleModeGain{m, g});
  return channel;
}

// Displacements (dx, dp) on mode 0 and (dx, -dp) on mode 1.
Eigen::MatrixXd conjugate_encode_map() {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(4, 2);
  e(0, 0) = 1.0;
  e(1, 1) = 1.0;
  e(2, 0) = 1.0;
  e(3, 1) = -1.0;
  return e;
}

}  // namespace

const std::vector<std::string>& scheme_ids() {
  static const std::vector<std::string> ids = {
      "1d_coh_1", "1d_sq_1",    "2d_coh_1",   "1d_coh_2",   "1d_sq_2",
      "2d_coh_2", "epr_disp_2", "conj_coh_2", "epr_conj_2", "dense_coding"};
  return ids;
}

bool is_scheme_id(const std::string& id) {
  const auto& ids = scheme_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

bool has_free_variance(const std::string& id) {
  return id == "1d_sq_1" || id == "1d_sq_2" || id == "epr_disp_2" ||
         id == "epr_conj_2" || id == "dense_coding";
}

bool is_gain_invariant(const std::string& id) {
  return id == "2d_coh_1" || id == "2d_coh_2" || id == "epr_disp_2" ||
         id == "conj_coh_2" || id == "epr_conj_2" || id == "dense_coding";
}

SchemeSpec build_scheme(const std::string& id, double n, double g,
                        std::optional<double> variance) {
  require_budget(n);
  require_gain(g);
  if (!is_scheme_id(id)) throw std::invalid_argument("unknown scheme id: " + id);
  if (variance && !has_free_variance(id))
    throw std::invalid_argument("scheme has no free variance: " + id);

  SchemeSpec spec;
  spec.id = id;
  spec.budget = n;
  spec.gain = g;

  // At zero budget every free variance collapses to 1 (no squeezing) and the
  // modulation vanishes.
  auto free_variance = [&](void) {
    if (variance) {
      if (*variance <= 0.0 || *variance > 1.0)
        throw std::invalid_argument("free variance must be in (0, 1]");
      return *variance;
    }
    return n == 0.0 ? 1.0 : optimal_variance(id, n, g);
  };

  if (id == "1d_coh_1") {
    spec.num_modes = 1;
    spec.prepared = vacuum(1);
    spec.modulation.symbol_cov = diagonal_cov({4.0 * n});
    spec.modulation.encode_map = Eigen::MatrixXd::Zero(2, 1);
    spec.modulation.encode_map(0, 0) = 1.0;
    spec.channel = per_mode_amplifiers(1, g);
    spec.detector = homodyne(0, Quad::X);
    spec.budget_modes = {0};
  } else if (id == "1d_sq_1") {
    const double v = free_variance();
    const double v_s = require_feasible(4.0 * n + 2.0 - v - 1.0 / v, id);
    spec.num_modes = 1;
    spec.prepared = squeeze(vacuum(1), 0, v);
    spec.free_variance = v;
    spec.modulation.symbol_cov = diagonal_cov({v_s});
    spec.modulation.encode_map = Eigen::MatrixXd::Zero(2, 1);
    spec.modulation.encode_map(0, 0) = 1.0;
    spec.channel = per_mode_amplifiers(1, g);
    spec.detector = homodyne(0, Quad::X);
    spec.budget_modes = {0};
  } else if (id == "2d_coh_1") {
    spec.num_modes = 1;
    spec.prepared = vacuum(1);
    spec.modulation.symbol_cov = diagonal_cov({2.0 * n, 2.0 * n});
    spec.modulation.encode_map = Eigen::MatrixXd::Identity(2, 2);
    spec.channel = per_mode_amplifiers(1, g);
    spec.detector = heterodyne(0);
    spec.budget_modes = {0};
  } else if (id == "1d_coh_2") {
    spec.num_modes = 2;
    spec.prepared = vacuum(2);
    spec.modulation.symbol_cov = diagonal_cov({2.0 * n, 2.0 * n});
    spec.modulation.encode_map = Eigen::MatrixXd::Zero(4, 2);
    spec.modulation.encode_map(0, 0) = 1.0;  // symbol 1 -> x of mode 0
    spec.modulation.encode_map(2, 1) = 1.0;  // symbol 2 -> x of mode 1
    spec.channel = per_mode_amplifiers(2, g);
    spec.detector = combine(homodyne(0, Quad::X), homodyne(1, Quad::X));
    spec.budget_modes = {0, 1};
  } else if (id == "1d_sq_2") {
    const double v = free_variance();
    const double v_s = require_feasible(2.0 * n + 2.0 - v - 1.0 / v, id);
    spec.num_modes = 2;
    spec.prepared = squeeze(squeeze(vacuum(2), 0, v), 1, v);
    spec.free_variance = v;
    spec.modulation.symbol_cov = diagonal_cov({v_s, v_s});
    spec.modulation.encode_map = Eigen::MatrixXd::Zero(4, 2);
    spec.modulation.encode_map(0, 0) = 1.0;
    spec.modulation.encode_map(2, 1) = 1.0;
    spec.channel = per_mode_amplifiers(2, g);
    spec.detector = combine(homodyne(0, Quad::X), homodyne(1, Quad::X));
    spec.budget_modes = {0, 1};
  } else if (id == "2d_coh_2") {
    spec.num_modes = 2;
    spec.prepared = vacuum(2);
    spec.modulation.symbol_cov = diagonal_cov({n, n, n, n});
    spec.modulation.encode_map = Eigen::MatrixXd::Identity(4, 4);
    spec.channel = per_mode_amplifiers(2, g);
    spec.detector = combine(heterodyne(0), heterodyne(1));
    spec.budget_modes = {0, 1};
  } else if (id == "epr_disp_2") {
    const double v = free_variance();
    const double v_s = require_feasible(2.0 * n - (v + 1.0 / v - 2.0), id);
    spec.num_modes = 2;
    spec.prepared = two_mode_squeeze(vacuum(2), 0, 1, v);
    spec.free_variance = v;
    spec.modulation.symbol_cov = diagonal_cov({v_s, v_s});
    spec.modulation.encode_map = Eigen::MatrixXd::Zero(4, 2);
    spec.modulation.encode_map(0, 0) = 1.0;  // displacement on mode 0 only
    spec.modulation.encode_map(1, 1) = 1.0;
    spec.channel = {JointPairGain{0, 1, g}};
    spec.detector = bell(0, 1);
    spec.budget_modes = {0, 1};
  } else if (id == "conj_coh_2") {
    spec.num_modes = 2;
    spec.prepared = vacuum(2);
    spec.modulation.symbol_cov = diagonal_cov({n, n});
    spec.modulation.encode_map = conjugate_encode_map();
    spec.channel = {JointPairGain{0, 1, g}};
    spec.detector = bell(0, 1);
    spec.budget_modes = {0, 1};
  } else if (id == "epr_conj_2") {
    const double v = free_variance();
    const double v_s = require_feasible(n - 0.5 * (v + 1.0 / v - 2.0), id);
    spec.num_modes = 2;
    spec.prepared = two_mode_squeeze(vacuum(2), 0, 1, v);
    spec.free_variance = v;
    spec.modulation.symbol_cov = diagonal_cov({v_s, v_s});
    spec.modulation.encode_map = conjugate_encode_map();
    spec.channel = {JointPairGain{0, 1, g}};
    spec.detector = bell(0, 1);
    spec.budget_modes = {0, 1};
  } else {  // dense_coding: as epr_disp_2 but photons counted in the
            // displaced mode only
    const double v = free_variance();
    const double v_s = require_feasible(2.0 * n - 0.5 * (v + 1.0 / v - 2.0), id);
    spec.num_modes = 2;
    spec.prepared = two_mode_squeeze(vacuum(2), 0, 1, v);
    spec.free_variance = v;
    spec.modulation.symbol_cov = diagonal_cov({v_s, v_s});
    spec.modulation.encode_map = Eigen::MatrixXd::Zero(4, 2);
    spec.modulation.encode_map(0, 0) = 1.0;
    spec.modulation.encode_map(1, 1) = 1.0;
    spec.channel = {JointPairGain{0, 1, g}};
    spec.detector = bell(0, 1);
    spec.budget_modes = {0};
  }
  return spec;
}

double evaluate(const SchemeSpec& spec, LogBase base) {
  return gaussian_mi(joint_statistics(spec.prepared, spec.modulation, spec.detector,
                                      spec.channel),
                     base);
}

double photon_budget(const SchemeSpec& spec) {
  GaussianState ensemble = spec.prepared;
  ensemble.cov += spec.modulation.encode_map * spec.modulation.symbol_cov *
                  spec.modulation.encode_map.transpose();
  return mean_photons(ensemble, spec.budget_modes);
}

}  // namespace cvmi
