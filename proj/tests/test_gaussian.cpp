#include <doctest.h>

#include <cmath>
#include <random>

#include "cvmi/gaussian.hpp"

using namespace cvmi;

namespace {

// Independent construction of the single-mode amplifier: append a vacuum
// idler, apply the two-mode Bogoliubov map, trace the idler.
GaussianState amplify_via_ancilla(const GaussianState& state, int mode, double gain) {
  GaussianState extended = append_vacuum(state, 1);
  extended = amplify_joint(extended, mode, state.num_modes, gain);
  std::vector<int> keep;
  for (int m = 0; m < state.num_modes; ++m) keep.push_back(m);
  return partial_trace(extended, keep);
}

GaussianState random_state(std::mt19937_64& rng, int num_modes) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GaussianState state = vacuum(num_modes);
  for (int m = 0; m < num_modes; ++m) {
    state = squeeze(state, m, 0.3 + 0.7 * unit(rng));
    state = displace(state, m, 2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0);
  }
  if (num_modes > 1) state = beam_splitter(state, 0, 1, unit(rng));
  return state;
}

}  // namespace

TEST_CASE("vacuum") {
  const GaussianState one = vacuum(1);
  CHECK(one.mean.isZero(0.0));
  CHECK(one.cov.isIdentity(0.0));
  CHECK(vacuum(2).cov.isIdentity(0.0));
  CHECK(mean_photons(one) == 0.0);
  CHECK_THROWS_AS(vacuum(0), std::invalid_argument);
}

TEST_CASE("displace") {
  const GaussianState state = displace(vacuum(1), 0, 2.0, 0.0);
  CHECK(state.mean(0) == 2.0);
  CHECK(state.mean(1) == 0.0);
  CHECK(state.cov.isIdentity(0.0));
  CHECK(mean_photons(state) == doctest::Approx(1.0).epsilon(1e-12));

  const GaussianState same = displace(state, 0, 0.0, 0.0);
  CHECK(same.mean == state.mean);
  CHECK_THROWS_AS(displace(vacuum(1), 1, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("squeeze") {
  CHECK(squeeze(vacuum(1), 0, 1.0).cov.isIdentity(1e-15));
  const GaussianState squeezed = squeeze(vacuum(1), 0, 0.25);
  CHECK(squeezed.cov(0, 0) == doctest::Approx(0.25));
  CHECK(squeezed.cov(1, 1) == doctest::Approx(4.0));

  for (double v : {0.01, 0.3, 0.9, 2.5})
    CHECK(squeeze(vacuum(1), 0, v).cov.determinant() == doctest::Approx(1.0));
  CHECK_THROWS_AS(squeeze(vacuum(1), 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(squeeze(vacuum(1), 0, -1.0), std::invalid_argument);
}

TEST_CASE("two_mode_squeeze") {
  CHECK(two_mode_squeeze(vacuum(2), 0, 1, 1.0).cov.isIdentity(1e-15));

  const double v = 0.5;
  const GaussianState tms = two_mode_squeeze(vacuum(2), 0, 1, v);
  const auto quad_var = [&](double cx0, double cx1, int offset) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(4);
    f(offset) = cx0;
    f(2 + offset) = cx1;
    return f.dot(tms.cov * f);
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(quad_var(inv_sqrt2, inv_sqrt2, 0) == doctest::Approx(0.5));   // x0 + x1
  CHECK(quad_var(inv_sqrt2, -inv_sqrt2, 0) == doctest::Approx(2.0));  // x0 - x1
  CHECK(quad_var(inv_sqrt2, -inv_sqrt2, 1) == doctest::Approx(0.5));  // p0 - p1

  // Per-mode photons (v + 1/v - 2)/4, cross-checked against sinh^2(r).
  for (double w : {0.2, 0.5, 0.8}) {
    const GaussianState state = two_mode_squeeze(vacuum(2), 0, 1, w);
    const double expected = (w + 1.0 / w - 2.0) / 4.0;
    const double r = -0.5 * std::log(w);
    CHECK(mean_photons(state, {0}) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(mean_photons(state, {0}) ==
          doctest::Approx(std::sinh(r) * std::sinh(r)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(two_mode_squeeze(vacuum(2), 0, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(two_mode_squeeze(vacuum(2), 0, 1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(two_mode_squeeze(vacuum(2), 0, 0, 0.5), std::invalid_argument);
}

TEST_CASE("beam_splitter") {
  for (double t : {0.0, 0.3, 1.0})
    CHECK(beam_splitter(vacuum(2), 0, 1, t).cov.isIdentity(1e-15));
  CHECK(beam_splitter(displace(vacuum(2), 0, 1.0, -0.5), 0, 1, 1.0).mean(0) == 1.0);

  // Bell-measurement signal routing of conjugate displacements.
  GaussianState state = displace(displace(vacuum(2), 0, 1.5, 0.7), 1, 1.5, -0.7);
  state = beam_splitter(state, 0, 1, 0.5);
  const double sqrt2 = std::sqrt(2.0);
  CHECK(state.mean(0) == doctest::Approx(sqrt2 * 1.5));
  CHECK(state.mean(1) == doctest::Approx(0.0));
  CHECK(state.mean(2) == doctest::Approx(0.0));
  CHECK(std::abs(state.mean(3)) == doctest::Approx(sqrt2 * 0.7));

  CHECK_THROWS_AS(beam_splitter(vacuum(2), 0, 1, 1.2), std::invalid_argument);
  CHECK_THROWS_AS(beam_splitter(vacuum(2), 0, 1, -0.1), std::invalid_argument);
}

TEST_CASE("amplify single mode") {
  std::mt19937_64 seed_rng(7);
  const GaussianState state = random_state(seed_rng, 1);
  CHECK((amplify(state, 0, 1.0).cov - state.cov).cwiseAbs().maxCoeff() == 0.0);

  const GaussianState thermal = amplify(vacuum(1), 0, 2.0);
  CHECK(thermal.cov(0, 0) == doctest::Approx(3.0));
  CHECK(thermal.cov(1, 1) == doctest::Approx(3.0));

  // Dual route: closed-form map vs explicit idler + partial trace.
  std::mt19937_64 rng(42);
  for (double g : {1.0, 1.5, 2.0, 10.0}) {
    const GaussianState input = random_state(rng, 2);
    const GaussianState direct = amplify(input, 0, g);
    const GaussianState via_ancilla = amplify_via_ancilla(input, 0, g);
    CHECK((direct.cov - via_ancilla.cov).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((direct.mean - via_ancilla.mean).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((direct.cov - (g * input.cov).eval()).topLeftCorner(2, 2).isApprox(
        ((g - 1.0) * Eigen::MatrixXd::Identity(2, 2)).eval(), 1e-12));
  }
  CHECK_THROWS_AS(amplify(vacuum(1), 0, 0.5), std::invalid_argument);
}

TEST_CASE("joint amplification preserves the conjugate SNR") {
  const double x = 1.2, p = -0.4;
  for (double g : {1.0, 3.0, 25.0}) {
    GaussianState state = displace(displace(vacuum(2), 0, x, p), 1, x, -p);
    state = amplify_joint(state, 0, 1, g);
    const double scale = std::sqrt(g) + std::sqrt(g - 1.0);
    CHECK(state.mean(0) == doctest::Approx(scale * x));
    CHECK(state.mean(3) == doctest::Approx(-scale * p));
    // Bell-combination variance scales by the same factor squared.
    Eigen::VectorXd bell_x = Eigen::VectorXd::Zero(4);
    bell_x(0) = bell_x(2) = 1.0 / std::sqrt(2.0);
    CHECK(bell_x.dot(state.cov * bell_x) == doctest::Approx(scale * scale));
  }
}

TEST_CASE("partial_trace") {
  CHECK(partial_trace(vacuum(2), {0}).cov.isIdentity(0.0));
  const double v = 0.4;
  const GaussianState arm = partial_trace(two_mode_squeeze(vacuum(2), 0, 1, v), {0});
  CHECK(arm.cov(0, 0) == doctest::Approx((v + 1.0 / v) / 2.0));
  CHECK(arm.cov(1, 1) == doctest::Approx((v + 1.0 / v) / 2.0));
  const GaussianState both = partial_trace(two_mode_squeeze(vacuum(2), 0, 1, v), {0, 1});
  CHECK(both.num_modes == 2);
  CHECK_THROWS_AS(partial_trace(vacuum(2), {}), std::invalid_argument);
}

TEST_CASE("mean_photons") {
  CHECK(mean_photons(vacuum(3)) == 0.0);
  CHECK(mean_photons(displace(vacuum(1), 0, 2.0, 0.0)) == doctest::Approx(1.0));
  for (double v : {0.2, 0.5}) {
    CHECK(mean_photons(squeeze(vacuum(1), 0, v)) ==
          doctest::Approx((v + 1.0 / v - 2.0) / 4.0));
  }

  // Additive over product states; invariant under passive ops at zero mean.
  GaussianState product = squeeze(vacuum(2), 0, 0.3);
  product = squeeze(product, 1, 0.6);
  CHECK(mean_photons(product) ==
        doctest::Approx(mean_photons(partial_trace(product, {0})) +
                        mean_photons(partial_trace(product, {1}))));
  CHECK(mean_photons(beam_splitter(product, 0, 1, 0.37)) ==
        doctest::Approx(mean_photons(product)).epsilon(1e-12));
}

TEST_CASE("check_physical") {
  const PhysicalityReport good = check_physical(vacuum(1));
  CHECK(good.ok);
  CHECK(good.min_symplectic_eigenvalue == doctest::Approx(1.0));

  GaussianState bad = vacuum(1);
  bad.cov = 0.5 * Eigen::MatrixXd::Identity(2, 2);
  CHECK_FALSE(check_physical(bad).ok);

  const PhysicalityReport amplified = check_physical(amplify(vacuum(1), 0, 2.0));
  CHECK(amplified.ok);
  CHECK(amplified.min_symplectic_eigenvalue == doctest::Approx(3.0));
}

TEST_CASE("all exposed unitaries are symplectic") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    CHECK(is_symplectic(squeeze_op(2, 0, 0.05 + unit(rng)).matrix));
    CHECK(is_symplectic(two_mode_squeeze_op(2, 0, 1, 0.05 + 0.95 * unit(rng)).matrix));
    CHECK(is_symplectic(beam_splitter_op(2, 0, 1, unit(rng)).matrix));
    CHECK(is_symplectic(joint_amplifier_op(2, 0, 1, 1.0 + 9.0 * unit(rng)).matrix));
    CHECK(is_symplectic(phase_flip_op(2, 1).matrix));
  }
}

TEST_CASE("Bell-basis diagonalization of the two-mode squeezed state") {
  const double v = 0.35;
  GaussianState state = two_mode_squeeze(vacuum(2), 0, 1, v);
  state = beam_splitter(state, 0, 1, 0.5);
  // Product of single-mode squeezed states with x-variances {v, 1/v}.
  CHECK(state.cov(0, 0) == doctest::Approx(v));
  CHECK(state.cov(1, 1) == doctest::Approx(1.0 / v));
  CHECK(state.cov(2, 2) == doctest::Approx(1.0 / v));
  CHECK(state.cov(3, 3) == doctest::Approx(v));
  CHECK(state.cov.topRightCorner(2, 2).cwiseAbs().maxCoeff() < 1e-12);
}
