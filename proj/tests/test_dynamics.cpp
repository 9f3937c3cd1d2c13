#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "cosserat/error.hpp"
#include "cosserat/dynamics.hpp"

using namespace cosserat;

namespace {

// Closed-form branches for k along x: longitudinal displacement,
// longitudinal rotation, and two copies of the coupled (u_t, phi_t) pair.
std::vector<double> branches_along_x(const MaterialParams& m, double k) {
  const double k2 = k * k;
  std::vector<double> w2;
  w2.push_back((m.lambda + 2.0 * m.mu_e + m.kappa_c) * k2 / m.rho);
  w2.push_back(((m.alpha_t + m.beta_t + m.gamma_t) * k2 + 2.0 * m.kappa_c) / m.J);
  const double a = m.rho * m.J;
  const double b = m.rho * (m.gamma_t * k2 + 2.0 * m.kappa_c) + m.J * (m.mu_e + m.kappa_c) * k2;
  const double c = (m.mu_e + m.kappa_c) * k2 * (m.gamma_t * k2 + 2.0 * m.kappa_c) -
                   m.kappa_c * m.kappa_c * k2;
  const double disc = std::sqrt(b * b - 4.0 * a * c);
  for (int copy = 0; copy < 2; ++copy) {
    w2.push_back((b - disc) / (2.0 * a));
    w2.push_back((b + disc) / (2.0 * a));
  }
  std::vector<double> w;
  for (double x : w2) w.push_back(std::sqrt(x));
  std::sort(w.begin(), w.end());
  return w;
}

}  // namespace

TEST(Dynamics, SymbolIsHermitian) {
  const MaterialParams m;
  const Matrix6c K = stiffness_symbol(m, Eigen::Vector3d(1.0, -2.0, 0.5));
  EXPECT_LT((K - K.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Dynamics, SymbolAtZeroWavevector) {
  // Only the uniform-rotation restoring torque survives: 2 kappa_c.
  const MaterialParams m;
  const Matrix6c K = stiffness_symbol(m, Eigen::Vector3d::Zero());
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const double expected = (i == j && i >= 3) ? 2.0 * m.kappa_c : 0.0;
      EXPECT_NEAR(std::abs(K(i, j) - expected), 0.0, 1e-15);
    }
  }
}

TEST(Dynamics, BranchesMatchClosedForm) {
  const MaterialParams m;
  for (double k : {1.0, 2.0 * std::numbers::pi, 9.0}) {
    const auto ref = branches_along_x(m, k);
    const auto got = dispersion_branches(m, Eigen::Vector3d(k, 0.0, 0.0));
    for (int b = 0; b < 6; ++b) EXPECT_NEAR(got[b].omega, ref[b], 1e-12 * ref[b]);
  }
}

TEST(Dynamics, BranchesAreIsotropic) {
  const MaterialParams m;
  const Eigen::Vector3d k(1.0, 2.0, -2.0);
  const auto tilted = dispersion_branches(m, k);
  const auto aligned = dispersion_branches(m, Eigen::Vector3d(k.norm(), 0.0, 0.0));
  for (int b = 0; b < 6; ++b) EXPECT_NEAR(tilted[b].omega, aligned[b].omega, 1e-12);
}

TEST(Dynamics, ModesAreMassNormalised) {
  const MaterialParams m;
  const auto br = dispersion_branches(m, Eigen::Vector3d(3.0, 0.0, 0.0));
  for (const auto& b : br) {
    double norm = 0.0;
    for (int i = 0; i < 6; ++i) norm += std::norm(b.mode(i)) * (i < 3 ? m.rho : m.J);
    EXPECT_NEAR(norm, 1.0, 1e-13);
  }
}

TEST(Dynamics, EffectiveWavevector) {
  const Grid g(16, 1.0);
  const Eigen::Vector3d k(2.0 * std::numbers::pi, 0.0, 0.0);
  const Eigen::Vector3d e = effective_wavevector(g, k);
  EXPECT_DOUBLE_EQ(e(0), std::sin(k(0) / 16.0) * 16.0);
  EXPECT_EQ(e(1), 0.0);
}

TEST(Dynamics, PeakFrequencyOfSyntheticTone) {
  const double dt = 0.01;
  for (double w : {3.3, -7.1}) {
    std::vector<std::complex<double>> s;
    for (int j = 0; j < 4096; ++j) s.push_back(std::exp(std::complex<double>(0.0, w * j * dt)));
    EXPECT_NEAR(peak_frequency(s, dt), w, 2e-3 * std::abs(w));
  }
  std::vector<std::complex<double>> tiny(4);
  EXPECT_THROW(peak_frequency(tiny, dt), Error);
}

TEST(Dynamics, PlaneWaveStateProjectsOntoItsBranch) {
  const Grid g(8, 1.0);
  const MaterialParams m;
  const Eigen::Vector3d k(2.0 * std::numbers::pi, 0.0, 0.0);
  const auto br = dispersion_branches(m, effective_wavevector(g, k));
  std::vector<Branch> one{br[2]};
  const std::vector<std::complex<double>> amp{{0.01, 0.0}};
  const MicropolarState s = plane_wave_state(g, k, one, amp);
  const Vector6c f = fourier_coefficient(s, k);
  // Re(c v e^{ikx}) has coefficient c v / 2 at +k.
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(std::abs(f(i) - 0.005 * br[2].mode(i)), 0.0, 1e-15);
}

TEST(Dynamics, EnergyDriftOfConstantSeries) {
  std::vector<ConservedTotals> t(3);
  for (auto& x : t) x.energy = 2.0;
  EXPECT_EQ(energy_drift(t), 0.0);
  t[1].energy = 2.002;
  EXPECT_NEAR(energy_drift(t), 1e-3, 1e-12);
}

TEST(Dynamics, ClassicalPulseKeepsRotationsAtZero) {
  MaterialParams m;
  m.kappa_c = m.alpha_t = m.beta_t = m.gamma_t = 0.0;
  const Grid g(16, 1.0);
  const double c = std::sqrt((m.lambda + 2.0 * m.mu_e) / m.rho);
  const PulseRun r = pulse_speed(m, g, c);
  EXPECT_EQ(r.max_phi, 0.0);
  EXPECT_NEAR(r.travelled, 0.5, 0.05);
}
