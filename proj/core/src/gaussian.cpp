#include "cvmi/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace cvmi {

namespace {

void require_mode(const GaussianState& state, int mode) {
  if (mode < 0 || mode >= state.num_modes)
    throw std::invalid_argument("mode index out of range");
}

void require_distinct(int a, int b) {
  if (a == b) throw std::invalid_argument("mode pair must be distinct");
}

Eigen::MatrixXd j_form(int num_modes) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * num_modes, 2 * num_modes);
  for (int m = 0; m < num_modes; ++m) {
    j(2 * m, 2 * m + 1) = 1.0;
    j(2 * m + 1, 2 * m) = -1.0;
  }
  return j;
}

}  // namespace

Eigen::MatrixXd omega(int num_modes) { return 2.0 * j_form(num_modes); }

bool is_symplectic(const Eigen::MatrixXd& s, double tol) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) return false;
  const int m = static_cast<int>(s.rows()) / 2;
  const Eigen::MatrixXd om = omega(m);
  return (s * om * s.transpose() - om).cwiseAbs().maxCoeff() <= tol;
}

GaussianState vacuum(int num_modes) {
  if (num_modes < 1) throw std::invalid_argument("mode count must be at least 1");
  GaussianState state;
  state.num_modes = num_modes;
  state.mean = Eigen::VectorXd::Zero(2 * num_modes);
  state.cov = Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes);
  return state;
}

GaussianState apply(const GaussianState& state, const SymplecticOp& op) {
  if (op.matrix.rows() != state.mean.size())
    throw std::invalid_argument("operator dimension mismatch");
  GaussianState out;
  out.num_modes = state.num_modes;
  out.mean = op.matrix * state.mean + op.displacement;
  Eigen::MatrixXd cov = op.matrix * state.cov * op.matrix.transpose();
  out.cov = 0.5 * (cov + cov.transpose());
  return out;
}

GaussianState append_vacuum(const GaussianState& state, int extra_modes) {
  if (extra_modes < 0) throw std::invalid_argument("extra mode count must be nonnegative");
  if (extra_modes == 0) return state;
  const int n = state.num_modes + extra_modes;
  GaussianState out = vacuum(n);
  out.mean.head(2 * state.num_modes) = state.mean;
  out.cov.topLeftCorner(2 * state.num_modes, 2 * state.num_modes) = state.cov;
  return out;
}

SymplecticOp squeeze_op(int num_modes, int mode, double v_x) {
  if (v_x <= 0.0) throw std::invalid_argument("squeezing variance must be positive");
  SymplecticOp op{Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes),
                  Eigen::VectorXd::Zero(2 * num_modes)};
  op.matrix(2 * mode, 2 * mode) = std::sqrt(v_x);
  op.matrix(2 * mode + 1, 2 * mode + 1) = 1.0 / std::sqrt(v_x);
  return op;
}

SymplecticOp two_mode_squeeze_op(int num_modes, int mode_a, int mode_b, double v) {
  if (v <= 0.0 || v > 1.0)
    throw std::invalid_argument("two-mode squeezing variance must be in (0, 1]");
  require_distinct(mode_a, mode_b);
  const double r = -0.5 * std::log(v);
  const double c = std::cosh(r), s = std::sinh(r);
  SymplecticOp op{Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes),
                  Eigen::VectorXd::Zero(2 * num_modes)};
  const int xa = 2 * mode_a, pa = 2 * mode_a + 1;
  const int xb = 2 * mode_b, pb = 2 * mode_b + 1;
  // x_a + x_b and p_a - p_b scale by c - s = sqrt(v) on vacuum.
  op.matrix(xa, xa) = c;  op.matrix(xa, xb) = -s;
  op.matrix(pa, pa) = c;  op.matrix(pa, pb) = s;
  op.matrix(xb, xa) = -s; op.matrix(xb, xb) = c;
  op.matrix(pb, pa) = s;  op.matrix(pb, pb) = c;
  return op;
}

SymplecticOp beam_splitter_op(int num_modes, int mode_a, int mode_b, double transmittance) {
  if (transmittance < 0.0 || transmittance > 1.0)
    throw std::invalid_argument("transmittance must be in [0, 1]");
  require_distinct(mode_a, mode_b);
  const double c = std::sqrt(transmittance), s = std::sqrt(1.0 - transmittance);
  SymplecticOp op{Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes),
                  Eigen::VectorXd::Zero(2 * num_modes)};
  for (int q = 0; q < 2; ++q) {
    const int a = 2 * mode_a + q, b = 2 * mode_b + q;
    op.matrix(a, a) = c;  op.matrix(a, b) = s;
    op.matrix(b, a) = -s; op.matrix(b, b) = c;
  }
  return op;
}

SymplecticOp joint_amplifier_op(int num_modes, int mode_a, int mode_b, double gain) {
  if (gain < 1.0) throw std::invalid_argument("gain must be at least 1");
  require_distinct(mode_a, mode_b);
  const double c = std::sqrt(gain), s = std::sqrt(gain - 1.0);
  SymplecticOp op{Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes),
                  Eigen::VectorXd::Zero(2 * num_modes)};
  const int xa = 2 * mode_a, pa = 2 * mode_a + 1;
  const int xb = 2 * mode_b, pb = 2 * mode_b + 1;
  // a_out = sqrt(g) a + sqrt(g-1) b^dag; conjugation flips the p sign.
  op.matrix(xa, xa) = c;  op.matrix(xa, xb) = s;
  op.matrix(pa, pa) = c;  op.matrix(pa, pb) = -s;
  op.matrix(xb, xa) = s;  op.matrix(xb, xb) = c;
  op.matrix(pb, pa) = -s; op.matrix(pb, pb) = c;
  return op;
}

SymplecticOp phase_flip_op(int num_modes, int mode) {
  SymplecticOp op{Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes),
                  Eigen::VectorXd::Zero(2 * num_modes)};
  op.matrix(2 * mode, 2 * mode) = -1.0;
  op.matrix(2 * mode + 1, 2 * mode + 1) = -1.0;
  return op;
}

GaussianState displace(const GaussianState& state, int mode, double dx, double dp) {
  require_mode(state, mode);
  GaussianState out = state;
  out.mean(2 * mode) += dx;
  out.mean(2 * mode + 1) += dp;
  return out;
}

GaussianState squeeze(const GaussianState& state, int mode, double v_x) {
  require_mode(state, mode);
  return apply(state, squeeze_op(state.num_modes, mode, v_x));
}

GaussianState two_mode_squeeze(const GaussianState& state, int mode_a, int mode_b, double v) {
  require_mode(state, mode_a);
  require_mode(state, mode_b);
  return apply(state, two_mode_squeeze_op(state.num_modes, mode_a, mode_b, v));
}

GaussianState beam_splitter(const GaussianState& state, int mode_a, int mode_b,
                            double transmittance) {
  require_mode(state, mode_a);
  require_mode(state, mode_b);
  return apply(state, beam_splitter_op(state.num_modes, mode_a, mode_b, transmittance));
}

GaussianState amplify(const GaussianState& state, int mode, double gain) {
  require_mode(state, mode);
  if (gain < 1.0) throw std::invalid_argument("gain must be at least 1");
  const double root_g = std::sqrt(gain);
  GaussianState out = state;
  out.mean(2 * mode) *= root_g;
  out.mean(2 * mode + 1) *= root_g;
  // cov -> X cov X^T + Y with X = sqrt(g) on the mode, Y = (g-1) I.
  out.cov.row(2 * mode) *= root_g;
  out.cov.row(2 * mode + 1) *= root_g;
  out.cov.col(2 * mode) *= root_g;
  out.cov.col(2 * mode + 1) *= root_g;
  out.cov(2 * mode, 2 * mode) += gain - 1.0;
  out.cov(2 * mode + 1, 2 * mode + 1) += gain - 1.0;
  return out;
}

GaussianState amplify_joint(const GaussianState& state, int mode_a, int mode_b, double gain) {
  require_mode(state, mode_a);
  require_mode(state, mode_b);
  return apply(state, joint_amplifier_op(state.num_modes, mode_a, mode_b, gain));
}

GaussianState partial_trace(const GaussianState& state, const std::vector<int>& keep_modes) {
  if (keep_modes.empty()) throw std::invalid_argument("keep_modes must be non-empty");
  std::vector<int> idx;
  for (int m : keep_modes) {
    require_mode(state, m);
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  GaussianState out;
  out.num_modes = static_cast<int>(keep_modes.size());
  out.mean.resize(idx.size());
  out.cov.resize(idx.size(), idx.size());
  for (size_t i = 0; i < idx.size(); ++i) {
    out.mean(static_cast<Eigen::Index>(i)) = state.mean(idx[i]);
    for (size_t j = 0; j < idx.size(); ++j)
      out.cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          state.cov(idx[i], idx[j]);
  }
  return out;
}

double mean_photons(const GaussianState& state) {
  std::vector<int> all(state.num_modes);
  for (int m = 0; m < state.num_modes; ++m) all[m] = m;
  return mean_photons(state, all);
}

double mean_photons(const GaussianState& state, const std::vector<int>& modes) {
  double total = 0.0;
  for (int m : modes) {
    require_mode(state, m);
    const int x = 2 * m, p = 2 * m + 1;
    const double xx = state.cov(x, x) + state.mean(x) * state.mean(x);
    const double pp = state.cov(p, p) + state.mean(p) * state.mean(p);
    total += (xx + pp) / 4.0 - 0.5;
  }
  return total;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
  const int m = static_cast<int>(cov.rows()) / 2;
  // Williamson spectrum as the eigenvalues of the Hermitian matrix
  // i V^{1/2} J V^{1/2}, which come in +/- nu pairs. The Hermitian route is
  // far better conditioned than the eigenvalues of J V.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> cov_solver(0.5 * (cov + cov.transpose()));
  const Eigen::MatrixXd root = cov_solver.eigenvectors() *
                               cov_solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                               cov_solver.eigenvectors().transpose();
  Eigen::MatrixXd skew = root * j_form(m) * root;
  skew = 0.5 * (skew - skew.transpose().eval());
  const std::complex<double> imag_unit(0.0, 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(imag_unit * skew.cast<std::complex<double>>(),
                                                         Eigen::EigenvaluesOnly);
  std::vector<double> nus;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    if (solver.eigenvalues()(i) >= 0.0) nus.push_back(solver.eigenvalues()(i));
  std::sort(nus.begin(), nus.end());
  return nus;
}

PhysicalityReport check_physical(const GaussianState& state) {
  PhysicalityReport report;
  report.max_asymmetry = (state.cov - state.cov.transpose()).cwiseAbs().maxCoeff();
  const std::vector<double> nus = symplectic_eigenvalues(state.cov);
  report.min_symplectic_eigenvalue = nus.empty() ? 0.0 : nus.front();
  report.ok = report.max_asymmetry <= 1e-12 &&
              report.min_symplectic_eigenvalue >= 1.0 - 1e-9;
  return report;
}

}  // namespace cvmi
