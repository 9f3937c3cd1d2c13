#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "cosserat/error.hpp"
#include "cosserat/fields.hpp"
#include "cosserat/kinematics.hpp"
#include "cosserat/verification.hpp"

using namespace cosserat;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

VectorField identity_placement(const Grid& g) {
  VectorField y(g);
  for (Index p = 0; p < g.size(); ++p) {
    const auto x = g.position(p);
    for (int i = 0; i < 3; ++i) y.c[i][p] = x[i];
  }
  return y;
}

}  // namespace

TEST(Kinematics, LeviCivitaSymbol) {
  EXPECT_EQ(levi_civita(0, 1, 2), 1.0);
  EXPECT_EQ(levi_civita(1, 2, 0), 1.0);
  EXPECT_EQ(levi_civita(2, 1, 0), -1.0);
  EXPECT_EQ(levi_civita(0, 0, 2), 0.0);
}

TEST(Kinematics, RodriguesRotation) {
  const Eigen::Vector3d a(0.3, -0.4, 0.5);
  const Eigen::Matrix3d r = rotation_from_axial(a);
  EXPECT_LT((r.transpose() * r - Eigen::Matrix3d::Identity()).norm(), 1e-14);
  EXPECT_NEAR(r.determinant(), 1.0, 1e-14);
  EXPECT_LT((r * a - a).norm(), 1e-14);
  const Eigen::Matrix3d ref = Eigen::AngleAxisd(a.norm(), a.normalized()).toRotationMatrix();
  EXPECT_LT((r - ref).norm(), 1e-14);
}

TEST(Kinematics, FiniteRigidRotationIsNotPeriodic) {
  const Grid g(8, 1.0);
  const VectorField x = identity_placement(g);
  const Eigen::Matrix3d r = rotation_from_axial(Eigen::Vector3d(0, 0, 0.3));
  VectorField y(g);
  for (Index p = 0; p < g.size(); ++p) {
    const Eigen::Vector3d v = r * Eigen::Vector3d(x.c[0][p], x.c[1][p], x.c[2][p]);
    for (int i = 0; i < 3; ++i) y.c[i][p] = v(i);
  }
  EXPECT_THROW(deformation_gradient(y), Error);
  EXPECT_NO_THROW(deformation_gradient(x));
}

TEST(Kinematics, RotationFieldRejectsNonOrthogonal) {
  const Grid g(4, 1.0);
  TensorField q(g);
  for (int i = 0; i < 3; ++i) std::fill(q.at(i, i).begin(), q.at(i, i).end(), 1.0);
  EXPECT_NO_THROW(RotationField{q});
  q.at(0, 0)[5] = 1.01;
  EXPECT_THROW(RotationField{q}, Error);
}

TEST(Kinematics, DefectFreeConfigurationIsNearlyFlat) {
  const Grid g(24, 1.0);
  std::mt19937_64 rng(4);
  const RotationField q = AnalyticRotation::random(rng, 1.0, 0.15).sample(g);
  const CosseratConfiguration c = defect_free_configuration(q);
  // O(h^2) defects; the orders are measured by the verification suites.
  EXPECT_LT(l2_norm(torsion(c.coframe, c.connection)), 2e-2);
  EXPECT_LT(l2_norm(curvature(c.connection)), 5e-2);
}

TEST(Kinematics, PoincareRejectsOpenCoframe) {
  const Grid g(8, 1.0);
  FormField e = Coframe::identity(g).form();
  for (Index p = 0; p < g.size(); ++p) {
    e.component(0, 0)[p] += 0.1 * std::sin(kTwoPi * g.position(p)[1]);
  }
  EXPECT_THROW(poincare_reconstruct(Coframe(e), 1e-3), Error);
}

TEST(Kinematics, PoincareReconstructsExactCoframe) {
  const Grid g(16, 1.0);
  VectorField y = identity_placement(g);
  for (Index p = 0; p < g.size(); ++p) {
    y.c[1][p] += 0.01 * std::sin(kTwoPi * g.position(p)[0]);
  }
  const Coframe e(placement_differential(y));
  // The potentials come back as X + w with w = 0.01 sin(2 pi x) e_y up to O(h^2).
  const VectorField y2 = poincare_reconstruct(e, 1.0);
  for (Index p = 0; p < g.size(); ++p) {
    const auto x = g.position(p);
    EXPECT_NEAR(y2.c[0][p], x[0], 1e-12);
    EXPECT_NEAR(y2.c[1][p] - x[1], 0.01 * std::sin(kTwoPi * x[0]), 1e-3);
    EXPECT_NEAR(y2.c[2][p], x[2], 1e-12);
  }
}

TEST(Kinematics, LieDerivativeNeedsTorsionFreeCoframe) {
  const Grid g(8, 1.0);
  std::mt19937_64 rng(9);
  const Coframe e(random_coframe_form(rng, g, 0.05));
  const VectorField u(g);
  EXPECT_THROW(lie_derivative_coframe(u, e, Connection::zero(g), 1e-6), Error);
}

TEST(Kinematics, StrainOfTransverseShearWave) {
  // u_y = A sin(kx), phi = 0: gamma_yx = A k' cos(kx) with the stencil
  // wavenumber k' = sin(kh)/h, all other entries zero.
  const Grid g(16, 1.0);
  const double A = 0.01;
  const double k = kTwoPi;
  MicropolarState s(g);
  for (Index p = 0; p < g.size(); ++p) s.u.c[1][p] = A * std::sin(k * g.position(p)[0]);
  const StrainState e = linearized_strain(s);
  const double kh = std::sin(k * g.spacing()) / g.spacing();
  for (Index p = 0; p < g.size(); ++p) {
    EXPECT_NEAR(e.gamma.at(1, 0)[p], A * kh * std::cos(k * g.position(p)[0]), 1e-15);
  }
  EXPECT_EQ(max_abs(e.gamma.at(0, 1)), 0.0);
  EXPECT_EQ(max_abs(e.kappa), 0.0);
}

TEST(Kinematics, MatchedRigidMotionHasZeroStrain) {
  EXPECT_LE(rigid_motion_strain(Grid(8, 1.0), 3), 1e-12);
}

TEST(Kinematics, LinearizationDefectScalesWithEps) {
  const std::vector<double> eps{1e-2, 1e-3};
  const auto d = linearization_defects(Grid(8, 1.0), 1, eps);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d[0] / d[1], 10.0, 1.0);
}
