#include "cvmi/detection.hpp"

#include <cmath>
#include <stdexcept>

namespace cvmi {

namespace {

int resolve(const ModeRef& ref, int num_signal_modes) {
  return ref.ancilla ? num_signal_modes + ref.index : ref.index;
}

Eigen::MatrixXd network_matrix(const MeasurementModel& meas, int num_signal_modes) {
  const int total = num_signal_modes + meas.num_ancillas;
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * total, 2 * total);
  for (const NetworkOp& op : meas.network) {
    if (const auto* bs = std::get_if<NetworkBeamSplitter>(&op)) {
      s = beam_splitter_op(total, resolve(bs->mode_a, num_signal_modes),
                           resolve(bs->mode_b, num_signal_modes), bs->transmittance)
              .matrix *
          s;
    } else {
      const auto& flip = std::get<NetworkPhaseFlip>(op);
      s = phase_flip_op(total, resolve(flip.mode, num_signal_modes)).matrix * s;
    }
  }
  return s;
}

Eigen::MatrixXd selection_matrix(const MeasurementModel& meas, int num_signal_modes) {
  const int total = num_signal_modes + meas.num_ancillas;
  Eigen::MatrixXd p =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(meas.measured.size()), 2 * total);
  for (size_t i = 0; i < meas.measured.size(); ++i) {
    const MeasuredQuadrature& q = meas.measured[i];
    const int mode = resolve(q.mode, num_signal_modes);
    p(static_cast<Eigen::Index>(i), 2 * mode + (q.quad == Quad::P ? 1 : 0)) = 1.0;
  }
  return p;
}

// Symmetric pseudo-inverse restricted to the eigenvalue support.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const double cutoff = 1e-12 * std::max(1.0, evals.cwiseAbs().maxCoeff());
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(evals.size());
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    if (evals(i) > cutoff) inv(i) = 1.0 / evals(i);
  return solver.eigenvectors() * inv.asDiagonal() * solver.eigenvectors().transpose();
}

double log_det_psd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double ev = solver.eigenvalues()(i);
    if (ev <= 0.0) throw std::domain_error("covariance matrix is not positive definite");
    log_det += std::log(ev);
  }
  return log_det;
}

}  // namespace

MeasurementModel homodyne(int mode, Quad quad) {
  MeasurementModel meas;
  meas.measured.push_back({signal_mode(mode), quad});
  return meas;
}

MeasurementModel heterodyne(int mode) {
  MeasurementModel meas;
  meas.num_ancillas = 1;
  meas.network.push_back(NetworkBeamSplitter{signal_mode(mode), ancilla_mode(0), 0.5});
  // Orient the ancilla output so the p signal enters with a + sign.
  meas.network.push_back(NetworkPhaseFlip{ancilla_mode(0)});
  meas.measured.push_back({signal_mode(mode), Quad::X});
  meas.measured.push_back({ancilla_mode(0), Quad::P});
  return meas;
}

MeasurementModel bell(int mode_a, int mode_b) {
  if (mode_a == mode_b) throw std::invalid_argument("mode pair must be distinct");
  MeasurementModel meas;
  meas.network.push_back(NetworkBeamSplitter{signal_mode(mode_a), signal_mode(mode_b), 0.5});
  meas.network.push_back(NetworkPhaseFlip{signal_mode(mode_b)});
  meas.measured.push_back({signal_mode(mode_a), Quad::X});
  meas.measured.push_back({signal_mode(mode_b), Quad::P});
  return meas;
}

MeasurementModel combine(MeasurementModel a, const MeasurementModel& b) {
  const int shift = a.num_ancillas;
  auto shifted = [shift](ModeRef ref) {
    if (ref.ancilla) ref.index += shift;
    return ref;
  };
  for (const NetworkOp& op : b.network) {
    if (const auto* bs = std::get_if<NetworkBeamSplitter>(&op)) {
      a.network.push_back(
          NetworkBeamSplitter{shifted(bs->mode_a), shifted(bs->mode_b), bs->transmittance});
    } else {
      a.network.push_back(NetworkPhaseFlip{shifted(std::get<NetworkPhaseFlip>(op).mode)});
    }
  }
  for (const MeasuredQuadrature& q : b.measured) a.measured.push_back({shifted(q.mode), q.quad});
  a.num_ancillas += b.num_ancillas;
  return a;
}

GaussianState apply_channel(const GaussianState& state, const ChannelSpec& channel) {
  GaussianState out = state;
  for (const ChannelElement& element : channel) {
    if (const auto* single = std::get_if<SingleModeGain>(&element))
      out = amplify(out, single->mode, single->gain);
    else {
      const auto& joint = std::get<JointPairGain>(element);
      out = amplify_joint(out, joint.mode_a, joint.mode_b, joint.gain);
    }
  }
  return out;
}

Eigen::MatrixXd channel_mean_map(int num_modes, const ChannelSpec& channel) {
  Eigen::MatrixXd map = Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes);
  for (const ChannelElement& element : channel) {
    if (const auto* single = std::get_if<SingleModeGain>(&element)) {
      Eigen::MatrixXd scale = Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes);
      scale(2 * single->mode, 2 * single->mode) = std::sqrt(single->gain);
      scale(2 * single->mode + 1, 2 * single->mode + 1) = std::sqrt(single->gain);
      map = scale * map;
    } else {
      const auto& joint = std::get<JointPairGain>(element);
      map = joint_amplifier_op(num_modes, joint.mode_a, joint.mode_b, joint.gain).matrix * map;
    }
  }
  return map;
}

OutcomeMap outcome_map(const GaussianState& prepared, const ModulationModel& modulation,
                       const MeasurementModel& measurement, const ChannelSpec& channel) {
  const int m = prepared.num_modes;
  if (modulation.encode_map.rows() != 2 * m)
    throw std::invalid_argument("encode map rows must equal twice the mode count");
  if (modulation.symbol_cov.rows() != modulation.symbol_cov.cols() ||
      modulation.symbol_cov.rows() != modulation.encode_map.cols())
    throw std::invalid_argument("symbol covariance / encode map dimension mismatch");

  const GaussianState after_channel = apply_channel(prepared, channel);
  const GaussianState extended = append_vacuum(after_channel, measurement.num_ancillas);

  const Eigen::MatrixXd net = network_matrix(measurement, m);
  const Eigen::MatrixXd select = selection_matrix(measurement, m);
  const Eigen::MatrixXd pick = select * net;  // m_out x 2(M + ancillas)

  OutcomeMap out;
  out.signal_map =
      pick.leftCols(2 * m) * channel_mean_map(m, channel) * modulation.encode_map;
  Eigen::MatrixXd noise = pick * extended.cov * pick.transpose();
  out.noise_cov = 0.5 * (noise + noise.transpose());
  out.offset = pick * extended.mean;
  return out;
}

JointStatistics joint_statistics(const GaussianState& prepared,
                                 const ModulationModel& modulation,
                                 const MeasurementModel& measurement,
                                 const ChannelSpec& channel) {
  const OutcomeMap map = outcome_map(prepared, modulation, measurement, channel);
  JointStatistics js;
  js.symbol_cov = modulation.symbol_cov;
  js.cross_cov = modulation.symbol_cov * map.signal_map.transpose();
  Eigen::MatrixXd oo =
      map.signal_map * modulation.symbol_cov * map.signal_map.transpose() + map.noise_cov;
  js.outcome_cov = 0.5 * (oo + oo.transpose());
  return js;
}

double gaussian_mi(const JointStatistics& js, LogBase base) {
  const Eigen::MatrixXd conditional =
      js.outcome_cov - js.cross_cov.transpose() * pseudo_inverse(js.symbol_cov) * js.cross_cov;

  const double log_det_outcome = log_det_psd(js.outcome_cov);
  double log_det_conditional;
  try {
    log_det_conditional = log_det_psd(0.5 * (conditional + conditional.transpose()));
  } catch (const std::domain_error&) {
    throw std::domain_error("conditional covariance singular: unbounded information");
  }
  if (log_det_conditional - log_det_outcome < std::log(1e-300))
    throw std::domain_error("conditional covariance singular: unbounded information");

  double nats = 0.5 * (log_det_outcome - log_det_conditional);
  if (nats < 0.0 && nats > -1e-9) nats = 0.0;
  return base == LogBase::Bits ? nats / std::log(2.0) : nats;
}

}  // namespace cvmi
