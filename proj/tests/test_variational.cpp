#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cosserat/error.hpp"
#include "cosserat/fields.hpp"
#include "cosserat/variational.hpp"
#include "cosserat/verification.hpp"

using namespace cosserat;

namespace {

std::vector<MicropolarState> random_trajectory(const Grid& g, int slices, double amp,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<MicropolarState> out;
  for (int n = 0; n < slices; ++n) out.push_back(random_state(rng, g, amp, 1));
  return out;
}

}  // namespace

TEST(Variational, LagrangianRejectsIndefiniteMaterial) {
  MaterialParams m;
  m.mu_e = -1.0;
  EXPECT_THROW(LagrangianSpec{m}, Error);
}

TEST(Variational, GradientCheckIsExactForQuadraticAction) {
  const Grid g(6, 1.0);
  const LagrangianSpec lag(MaterialParams{});
  const auto traj = random_trajectory(g, 4, 0.05, 1);
  const auto dir = random_trajectory(g, 4, 1.0, 2);
  const std::vector<double> eps{1e-2, 1e-1, 1.0};
  const auto r = functional_gradient_check(lag, traj, dir, 0.05, eps);
  EXPECT_TRUE(r.passed);
  EXPECT_LT(r.min_relative_error, 1e-10);
}

TEST(Variational, ZeroDirectionGivesZeroOnBothSides) {
  const Grid g(4, 1.0);
  const LagrangianSpec lag(MaterialParams{});
  const auto traj = random_trajectory(g, 3, 0.05, 3);
  const std::vector<MicropolarState> dir(3, MicropolarState(g));
  const std::vector<double> eps{1e-2};
  const auto r = functional_gradient_check(lag, traj, dir, 0.05, eps);
  EXPECT_EQ(r.directional, 0.0);
  EXPECT_EQ(r.central_differences[0], 0.0);
}

TEST(Variational, FlippedResidualSignIsCaught) {
  const GradientReport r = gradient_consistency(Grid(6, 1.0), MaterialParams{}, 5);
  EXPECT_LT(r.relative_error, 1e-10);
  EXPECT_GT(r.mutated_relative_error, 1e-2);
}

TEST(Variational, FormAndTensorResidualsAgree) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const EquivalenceReport r = form_tensor_equivalence(Grid(8, 1.0), MaterialParams{}, seed);
    EXPECT_LE(r.force, 1e-13);
    EXPECT_LE(r.moment, 1e-13);
  }
}

TEST(Variational, VolumeFormRoundTrip) {
  const Grid g(4, 1.0);
  VectorField v(g);
  for (int i = 0; i < 3; ++i) {
    for (Index p = 0; p < g.size(); ++p) v.c[i][p] = i + 0.5 * static_cast<double>(p);
  }
  const VectorField back = volume_density(volume_form(v));
  for (int i = 0; i < 3; ++i) EXPECT_EQ(back.c[i], v.c[i]);
}

TEST(Variational, DriftOfLinearSeriesWithMatchingRate) {
  std::vector<double> t;
  std::vector<Eigen::Vector3d> q;
  const Eigen::Vector3d rate(1.0, -2.0, 0.5);
  for (int k = 0; k < 50; ++k) {
    t.push_back(0.1 * k);
    q.push_back(Eigen::Vector3d(1, 1, 1) + rate * (0.1 * k));
  }
  const DriftReport r = drift_of_series(t, q, 1.0, rate);
  EXPECT_LT(r.max_relative_drift, 1e-13);
  EXPECT_LT(r.relative_rate_error, 1e-13);
  EXPECT_TRUE(r.slope_consistent);
}

TEST(Variational, DriftDetectsSecularTrend) {
  std::vector<double> t;
  std::vector<Eigen::Vector3d> q;
  for (int k = 0; k < 200; ++k) {
    t.push_back(k);
    q.push_back(Eigen::Vector3d(1e-3 * k + 1e-4 * std::sin(0.7 * k), 0.0, 0.0));
  }
  const DriftReport r = drift_of_series(t, q, 1.0, Eigen::Vector3d::Zero());
  EXPECT_FALSE(r.slope_consistent);
  EXPECT_NEAR(r.slope(0), 1e-3, 1e-5);
}

TEST(Variational, ZeroStateHasZeroMomentumForever) {
  const Grid g(6, 1.0);
  const MaterialParams m;
  const LeapfrogIntegrator it(m, g, BodySources(g), LeapfrogIntegrator::stable_step_bound(m, g));
  MicropolarState s(g);
  std::vector<ConservedTotals> h;
  it.run(s, 20, [&](const MicropolarState& x, long step) {
    h.push_back(conserved_totals(x, m, step, step * it.dt()));
  });
  for (const auto& t : h) {
    EXPECT_EQ(t.linear.norm(), 0.0);
    EXPECT_EQ(t.angular.norm(), 0.0);
  }
  EXPECT_EQ(noether_translation_check(h).max_relative_drift, 0.0);
  EXPECT_EQ(noether_rotation_check(h).max_relative_drift, 0.0);
}

TEST(Variational, TotalsCsvLayout) {
  ConservedTotals t;
  t.step = 3;
  t.linear = Eigen::Vector3d(1, 2, 3);
  t.energy = 0.5;
  const std::vector<ConservedTotals> h{t};
  const std::string csv = totals_csv(h);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "step,P1,P2,P3,L1,L2,L3,energy");
  EXPECT_NE(csv.find("\n3,1.0000000000000000e+00,2.0000000000000000e+00"), std::string::npos);
}
