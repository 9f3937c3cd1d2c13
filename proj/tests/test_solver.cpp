#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "cosserat/error.hpp"
#include "cosserat/fields.hpp"
#include "cosserat/material.hpp"
#include "cosserat/solver.hpp"

using namespace cosserat;

namespace {

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

// sigma_ij = C_ijkl gamma_kl with the isotropic micropolar modulus tensor.
Eigen::Matrix3d contract_rank4(double lambda, double a, double b, const Eigen::Matrix3d& g) {
  Eigen::Matrix3d s = Eigen::Matrix3d::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          const double c = lambda * delta(i, j) * delta(k, l) + a * delta(i, k) * delta(j, l) +
                           b * delta(i, l) * delta(j, k);
          s(i, j) += c * g(k, l);
        }
      }
    }
  }
  return s;
}

MaterialParams material() { return MaterialParams::desk_defaults(); }

}  // namespace

TEST(Material, ForceStressMatchesRank4Contraction) {
  const MaterialParams m = material();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::Matrix3d g;
    for (int i = 0; i < 9; ++i) g(i / 3, i % 3) = u(rng);
    const Eigen::Matrix3d ref = contract_rank4(m.lambda, m.mu_e + m.kappa_c, m.mu_e, g);
    EXPECT_LT((force_stress(m, g) - ref).cwiseAbs().maxCoeff(), 1e-14);
    const Eigen::Matrix3d cref = contract_rank4(m.alpha_t, m.gamma_t, m.beta_t, g);
    EXPECT_LT((couple_stress(m, g) - cref).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Material, SingleShearEntry) {
  const MaterialParams m = material();
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  g(0, 1) = 0.3;
  const Eigen::Matrix3d s = force_stress(m, g);
  EXPECT_DOUBLE_EQ(s(0, 1), (m.mu_e + m.kappa_c) * 0.3);
  EXPECT_DOUBLE_EQ(s(1, 0), m.mu_e * 0.3);
  EXPECT_EQ(s(0, 0), 0.0);
  EXPECT_EQ(force_stress(m, Eigen::Matrix3d::Zero()).norm(), 0.0);
}

TEST(Material, ClassicalLimitGivesSymmetricStress) {
  MaterialParams m = material();
  m.kappa_c = 0.0;
  Eigen::Matrix3d g;
  g << 1, 2, 3, 2, 5, 6, 3, 6, 9;
  const Eigen::Matrix3d s = force_stress(m, g);
  EXPECT_EQ((s - s.transpose()).norm(), 0.0);
}

TEST(Material, EnergyIsHalfStrainTimesStress) {
  const MaterialParams m = material();
  Eigen::Matrix3d g, k;
  g << 0.1, 0.2, -0.1, 0.0, 0.3, 0.05, 0.2, -0.2, 0.1;
  k << 0.3, -0.1, 0.0, 0.2, 0.1, 0.1, -0.3, 0.0, 0.2;
  const double expected =
      0.5 * (g.cwiseProduct(force_stress(m, g)).sum() + k.cwiseProduct(couple_stress(m, k)).sum());
  EXPECT_NEAR(energy_density(m, g, k), expected, 1e-15);
}

TEST(Material, Validation) {
  EXPECT_NO_THROW(material().validate());
  MaterialParams m = material();
  m.rho = 0.0;
  EXPECT_THROW(m.validate(), Error);
  m = material();
  m.J = -1.0;
  EXPECT_THROW(m.validate(), Error);
  m = material();
  m.kappa_c = -3.0;
  EXPECT_THROW(m.validate(), Error);
  m = material();
  m.lambda = std::numeric_limits<double>::infinity();
  EXPECT_THROW(m.validate(), Error);
  m = material();
  m.kappa_c = m.alpha_t = m.beta_t = m.gamma_t = 0.0;
  EXPECT_NO_THROW(m.validate());
  EXPECT_FALSE(m.positive_definite());
  EXPECT_TRUE(material().positive_definite());
}

TEST(Solver, UniformStressHasNoResidual) {
  const Grid g(6, 1.0);
  const MaterialParams m = material();
  MicropolarState s(g);
  TensorField sigma(g);
  for (auto& c : sigma.c) std::fill(c.begin(), c.end(), 0.7);
  EXPECT_EQ(max_abs(linear_momentum_residual(s, sigma, VectorField(g), m)), 0.0);
}

TEST(Solver, SkewStressGivesTwiceTheTorque) {
  const Grid g(6, 1.0);
  const MaterialParams m = material();
  MicropolarState s(g);
  TensorField sigma(g);
  const double v = 0.25;
  std::fill(sigma.at(0, 1).begin(), sigma.at(0, 1).end(), v);
  std::fill(sigma.at(1, 0).begin(), sigma.at(1, 0).end(), -v);
  const VectorField r = angular_momentum_residual(s, sigma, TensorField(g), VectorField(g), m);
  // eps_2ij sigma_ij = sigma_01 - sigma_10.
  EXPECT_DOUBLE_EQ(r.c[2][0], 2.0 * v);
  EXPECT_EQ(max_abs(r.c[0]), 0.0);
  EXPECT_EQ(max_abs(r.c[1]), 0.0);
}

TEST(Solver, SymmetricStressHasNoTorque) {
  const Grid g(6, 1.0);
  MicropolarState s(g);
  TensorField sigma(g);
  std::fill(sigma.at(0, 2).begin(), sigma.at(0, 2).end(), 0.4);
  std::fill(sigma.at(2, 0).begin(), sigma.at(2, 0).end(), 0.4);
  TensorField mu(g);
  for (auto& c : mu.c) std::fill(c.begin(), c.end(), 0.2);
  EXPECT_LE(max_abs(angular_momentum_residual(s, sigma, mu, VectorField(g), material())), 1e-13);
}

TEST(Solver, ZeroStateStaysZeroBitwise) {
  const Grid g(8, 1.0);
  const MaterialParams m = material();
  const LeapfrogIntegrator it(m, g, BodySources(g), 0.9 * LeapfrogIntegrator::stable_step_bound(m, g));
  MicropolarState s(g);
  it.run(s, 50);
  for (int i = 0; i < 3; ++i) {
    for (Index p = 0; p < g.size(); ++p) {
      EXPECT_EQ(s.u.c[i][p], 0.0);
      EXPECT_EQ(s.phi_dot.c[i][p], 0.0);
    }
  }
}

TEST(Solver, UniformVelocityEnergy) {
  const Grid g(6, 2.0);
  const MaterialParams m = material();
  MicropolarState s(g);
  const double v[3] = {0.3, -0.1, 0.2};
  for (int i = 0; i < 3; ++i) std::fill(s.u_dot.c[i].begin(), s.u_dot.c[i].end(), v[i]);
  const double expected = 0.5 * m.rho * (0.09 + 0.01 + 0.04) * 8.0;
  EXPECT_NEAR(total_energy(s, m), expected, 1e-14);
  EXPECT_EQ(total_energy(MicropolarState(g), m), 0.0);
}

TEST(Solver, EnergyOfKnownStrain) {
  // u_y = A sin(kx): strain energy sum h^3 W matches a direct pointwise sum.
  const Grid g(8, 1.0);
  const MaterialParams m = material();
  MicropolarState s(g);
  for (Index p = 0; p < g.size(); ++p) s.u.c[1][p] = 0.01 * std::sin(6.0 * g.position(p)[0] + 0.3);
  const StrainState e = linearized_strain(s);
  double direct = 0.0;
  for (Index p = 0; p < g.size(); ++p) {
    Eigen::Matrix3d gm, km;
    for (int i = 0; i < 9; ++i) {
      gm(i / 3, i % 3) = e.gamma.c[i][p];
      km(i / 3, i % 3) = e.kappa.c[i][p];
    }
    direct += energy_density(m, gm, km);
  }
  direct *= g.cell_volume();
  EXPECT_NEAR(total_energy(s, m), direct, 1e-16);
}

TEST(Solver, StepAboveStabilityBoundIsRefused) {
  const Grid g(8, 1.0);
  const MaterialParams m = material();
  const double bound = LeapfrogIntegrator::stable_step_bound(m, g);
  EXPECT_NEAR(bound, 0.5 * g.spacing() / m.max_wave_speed(), 1e-15);
  EXPECT_THROW(LeapfrogIntegrator(m, g, BodySources(g), 1.001 * bound), Error);
  EXPECT_NO_THROW(LeapfrogIntegrator(m, g, BodySources(g), bound));
}

TEST(Solver, NonFiniteStateReportsStep) {
  const Grid g(6, 1.0);
  const MaterialParams m = material();
  const LeapfrogIntegrator it(m, g, BodySources(g), 0.5 * LeapfrogIntegrator::stable_step_bound(m, g));
  MicropolarState s(g);
  s.u.c[0][7] = std::numeric_limits<double>::quiet_NaN();
  try {
    it.run(s, 3);
    FAIL() << "expected a non-finite error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("step"), std::string::npos);
  }
}

TEST(Solver, StepMatchesRun) {
  const Grid g(8, 1.0);
  const MaterialParams m = material();
  const LeapfrogIntegrator it(m, g, BodySources(g), 0.5 * LeapfrogIntegrator::stable_step_bound(m, g));
  std::mt19937_64 rng(2);
  MicropolarState a = random_state(rng, g, 0.05, 1);
  MicropolarState b = it.step(it.step(a));
  it.run(a, 2);
  for (int i = 0; i < 3; ++i) {
    for (Index p = 0; p < g.size(); ++p) EXPECT_EQ(a.u.c[i][p], b.u.c[i][p]);
  }
}

TEST(Solver, TotalsOfUniformMotion) {
  const Grid g(4, 1.0);
  const MaterialParams m = material();
  MicropolarState s(g);
  std::fill(s.u_dot.c[0].begin(), s.u_dot.c[0].end(), 2.0);
  std::fill(s.phi_dot.c[2].begin(), s.phi_dot.c[2].end(), 3.0);
  const ConservedTotals t = conserved_totals(s, m, 0, 0.0);
  EXPECT_NEAR(t.linear(0), m.rho * 2.0, 1e-15);
  EXPECT_EQ(t.linear(1), 0.0);
  // Orbital part of a uniform x-velocity: sum h^3 (X x e_x) rho v.
  double orbital_z = 0.0;
  for (Index p = 0; p < g.size(); ++p) orbital_z -= g.position(p)[1] * m.rho * 2.0;
  orbital_z *= g.cell_volume();
  EXPECT_NEAR(t.angular(2), orbital_z + m.J * 3.0, 1e-14);
}
