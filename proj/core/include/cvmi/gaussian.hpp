#pragma once

#include <Eigen/Dense>
#include <vector>

// Multimode Gaussian states in the quadrature convention [x, p] = 2i,
// vacuum variance 1. Quadratures are ordered (x1, p1, x2, p2, ...).
// States are immutable values; every operation returns a new state.

namespace cvmi {

struct GaussianState {
  int num_modes = 0;
  Eigen::VectorXd mean;  // length 2M
  Eigen::MatrixXd cov;   // 2M x 2M, symmetric, vacuum = identity
};

// Linear phase-space action of a Gaussian unitary: r -> S r + d.
struct SymplecticOp {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd displacement;
};

// Symplectic form with 2x2 blocks [[0, 2], [-2, 0]] per mode.
Eigen::MatrixXd omega(int num_modes);

bool is_symplectic(const Eigen::MatrixXd& s, double tol = 1e-10);

GaussianState vacuum(int num_modes);

GaussianState apply(const GaussianState& state, const SymplecticOp& op);
GaussianState append_vacuum(const GaussianState& state, int extra_modes);

// Elementary symplectic matrices, each acting on the named modes of an
// M-mode system.
SymplecticOp squeeze_op(int num_modes, int mode, double v_x);
SymplecticOp two_mode_squeeze_op(int num_modes, int mode_a, int mode_b, double v);
SymplecticOp beam_splitter_op(int num_modes, int mode_a, int mode_b, double transmittance);
SymplecticOp joint_amplifier_op(int num_modes, int mode_a, int mode_b, double gain);
SymplecticOp phase_flip_op(int num_modes, int mode);  // pi rotation, (x,p) -> (-x,-p)

GaussianState displace(const GaussianState& state, int mode, double dx, double dp);

// Applies diag(sqrt(v_x), 1/sqrt(v_x)) to the mode's (x, p) block, so a
// squeezed vacuum ends with x-variance v_x and p-variance 1/v_x.
GaussianState squeeze(const GaussianState& state, int mode, double v_x);

// Two-mode squeezer oriented so that on vacuum input the combinations
// (x_a + x_b)/sqrt(2) and (p_a - p_b)/sqrt(2) both have variance v <= 1.
GaussianState two_mode_squeeze(const GaussianState& state, int mode_a, int mode_b, double v);

GaussianState beam_splitter(const GaussianState& state, int mode_a, int mode_b,
                            double transmittance);

// Phase-insensitive amplifier a_out = sqrt(g) a + sqrt(g-1) a_idler^dag with
// a vacuum idler that is traced out: cov -> g cov + (g-1) I on the mode,
// mean -> sqrt(g) mean.
GaussianState amplify(const GaussianState& state, int mode, double gain);

// Joint amplification of a mode pair: the two signals serve as each other's
// idler, no ancilla involved.
GaussianState amplify_joint(const GaussianState& state, int mode_a, int mode_b, double gain);

GaussianState partial_trace(const GaussianState& state, const std::vector<int>& keep_modes);

// <n> = sum over modes of (<x^2> + <p^2>)/4 - 1/2, second moments about zero.
double mean_photons(const GaussianState& state);
double mean_photons(const GaussianState& state, const std::vector<int>& modes);

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov);

struct PhysicalityReport {
  bool ok = false;
  double min_symplectic_eigenvalue = 0.0;
  double max_asymmetry = 0.0;
};

// Fails iff min symplectic eigenvalue < 1 - 1e-9 or asymmetry > 1e-12.
PhysicalityReport check_physical(const GaussianState& state);

}  // namespace cvmi
