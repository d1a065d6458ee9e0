#pragma once

#include <variant>
#include <vector>

#include "cvmi/gaussian.hpp"

// Gaussian measurement models and the mutual information functional over
// jointly Gaussian symbol/outcome statistics.

namespace cvmi {

enum class Quad { X, P };
enum class LogBase { Bits, Nats };

// A mode inside a measurement network: either one of the signal modes or a
// vacuum ancilla appended by the detector. Ancilla indices are resolved to
// absolute mode numbers only when the network is applied to a state.
struct ModeRef {
  bool ancilla = false;
  int index = 0;
};

inline ModeRef signal_mode(int index) { return {false, index}; }
inline ModeRef ancilla_mode(int index) { return {true, index}; }

struct MeasuredQuadrature {
  ModeRef mode;
  Quad quad = Quad::X;
};

struct NetworkBeamSplitter {
  ModeRef mode_a, mode_b;
  double transmittance = 0.5;
};
struct NetworkPhaseFlip {
  ModeRef mode;
};
using NetworkOp = std::variant<NetworkBeamSplitter, NetworkPhaseFlip>;

// Passive network plus the list of measured quadratures, at most one per
// final mode.
struct MeasurementModel {
  int num_ancillas = 0;
  std::vector<NetworkOp> network;
  std::vector<MeasuredQuadrature> measured;
};

MeasurementModel homodyne(int mode, Quad quad);

// Vacuum ancilla, 50:50 beam splitter, x on the signal output and p on the
// ancilla output.
MeasurementModel heterodyne(int mode);

// Continuous-variable Bell measurement: 50:50 beam splitter across the pair,
// x on output 1 and p on output 2, measuring (x_a + x_b)/sqrt(2) and
// (p_a - p_b)/sqrt(2).
MeasurementModel bell(int mode_a, int mode_b);

MeasurementModel combine(MeasurementModel a, const MeasurementModel& b);

// Gaussian symbol distribution plus the linear map from a symbol draw to a
// phase-space displacement of the transmitted state.
struct ModulationModel {
  Eigen::MatrixXd symbol_cov;  // k x k, PSD
  Eigen::MatrixXd encode_map;  // 2M x k
};

struct SingleModeGain {
  int mode = 0;
  double gain = 1.0;
};
struct JointPairGain {
  int mode_a = 0, mode_b = 1;
  double gain = 1.0;
};
using ChannelElement = std::variant<SingleModeGain, JointPairGain>;
using ChannelSpec = std::vector<ChannelElement>;

GaussianState apply_channel(const GaussianState& state, const ChannelSpec& channel);

// Linear action of the channel on input displacements (2M x 2M).
Eigen::MatrixXd channel_mean_map(int num_modes, const ChannelSpec& channel);

// Joint Gaussian second moments of (symbols, outcomes).
struct JointStatistics {
  Eigen::MatrixXd symbol_cov;   // k x k
  Eigen::MatrixXd cross_cov;    // k x m
  Eigen::MatrixXd outcome_cov;  // m x m
};

// Affine reduction of the full chain: outcomes = signal_map * symbols + noise
// with noise ~ N(offset, noise_cov). The prepared state is the zero-symbol
// state; symbol displacements enter at the channel input.
struct OutcomeMap {
  Eigen::MatrixXd signal_map;  // m x k
  Eigen::MatrixXd noise_cov;   // m x m
  Eigen::VectorXd offset;      // m
};

OutcomeMap outcome_map(const GaussianState& prepared, const ModulationModel& modulation,
                       const MeasurementModel& measurement, const ChannelSpec& channel);

JointStatistics joint_statistics(const GaussianState& prepared,
                                 const ModulationModel& modulation,
                                 const MeasurementModel& measurement,
                                 const ChannelSpec& channel);

// I = 1/2 log det S_oo - 1/2 log det (S_oo - S_so^T S_ss^+ S_so), with a
// pseudo-inverse on the symbol support. Throws std::domain_error when the
// conditional covariance is singular (noiseless outcome, unbounded
// information).
double gaussian_mi(const JointStatistics& js, LogBase base = LogBase::Bits);

}  // namespace cvmi
