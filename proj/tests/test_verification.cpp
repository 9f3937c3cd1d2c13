#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "cosserat/error.hpp"
#include "cosserat/verification.hpp"

using namespace cosserat;

TEST(Verification, ObservedOrder) {
  EXPECT_DOUBLE_EQ(observed_order(4e-2, 1e-2), 2.0);
  EXPECT_EQ(observed_order(0.0, 1e-14), kExactOrder);
  EXPECT_TRUE(std::isnan(observed_order(1e-3, 2e-3)));
  EXPECT_DOUBLE_EQ(observed_order(9.0, 1.0, 3.0), 2.0);
}

TEST(Verification, ChecksRejectNaN) {
  EXPECT_FALSE(make_check("x", std::nan(""), 1.0).pass);
  EXPECT_TRUE(make_check("x", 2.0, 1.9, Bound::at_least).pass);
  EXPECT_FALSE(make_check("x", 2.0, 1.0).pass);
  EXPECT_TRUE(make_check("x", kExactOrder, 1.9, Bound::at_least).pass);
}

TEST(Verification, ConstantFieldsReportExactOrder) {
  const std::vector<ResidualProbe> probes{
      {"constant", [](const Grid&, std::uint64_t) { return 0.0; }}};
  const std::vector<int> grids{8, 16, 32};
  const auto rows = convergence_table(probes, grids, 1.0, 0);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) EXPECT_EQ(r.order, kExactOrder);
}

TEST(Verification, ConvergenceTableValidatesGrids) {
  const auto probes = registered_residuals(MaterialParams{});
  const std::vector<int> one{16};
  const std::vector<int> small{2, 4};
  const std::vector<int> unordered{16, 8};
  EXPECT_THROW(convergence_table(probes, one, 1.0, 0), Error);
  EXPECT_THROW(convergence_table(probes, small, 1.0, 0), Error);
  EXPECT_THROW(convergence_table(probes, unordered, 1.0, 0), Error);
}

TEST(Verification, RegisteredResidualsConvergeAtSecondOrder) {
  const auto probes = registered_residuals(MaterialParams{});
  const std::vector<int> grids{16, 32};
  for (const auto& r : convergence_table(probes, grids, 1.0, 7)) {
    EXPECT_GE(r.order, 1.9) << r.residual;
    EXPECT_LE(r.order, 2.1) << r.residual;
  }
}

TEST(Verification, FirstOrderStencilIsDetected) {
  const auto probes = registered_residuals(MaterialParams{});
  const std::vector<int> grids{16, 32};
  for (const auto& r : convergence_table(probes, grids, 1.0, 7, Stencil::forward)) {
    EXPECT_NEAR(r.order, 1.0, 0.15) << r.residual;
  }
}

TEST(Verification, ExteriorSuiteRows) {
  const auto rows = exterior_suite(16, 1.0, 1);
  std::vector<std::string> names;
  for (const auto& r : rows) {
    names.push_back(r.name);
    EXPECT_TRUE(r.pass) << r.name;
  }
  EXPECT_EQ(names, (std::vector<std::string>{"dd_zero", "bianchi_1", "bianchi_2",
                                             "pure_gauge_flat"}));
}

TEST(Verification, LieRoutesAgree) {
  const LieFlowReport coarse = lie_flow_comparison(Grid(32, 1.0), 3, 0.02);
  const LieFlowReport fine = lie_flow_comparison(Grid(64, 1.0), 3, 0.02);
  EXPECT_GE(observed_order(coarse.cartan_vs_split, fine.cartan_vs_split), 1.9);
  EXPECT_GE(observed_order(coarse.cartan_vs_flow, fine.cartan_vs_flow), 1.9);
  EXPECT_NEAR(coarse.central_s_error / coarse.central_half_s_error, 4.0, 0.2);
}
