#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cosserat/error.hpp"
#include "cosserat/exterior.hpp"
#include "cosserat/fields.hpp"
#include "cosserat/grid.hpp"

using namespace cosserat;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField sample(const Grid& g, double (*f)(double, double, double)) {
  ScalarField out(static_cast<std::size_t>(g.size()));
  for (Index p = 0; p < g.size(); ++p) {
    const auto x = g.position(p);
    out[p] = f(x[0], x[1], x[2]);
  }
  return out;
}

}  // namespace

TEST(Grid, IndexAndCoordsRoundTrip) {
  const Grid g(6, 2.0);
  for (Index p = 0; p < g.size(); ++p) {
    const auto c = g.coords(p);
    EXPECT_EQ(g.index(c[0], c[1], c[2]), p);
  }
  EXPECT_EQ(g.index(1, 2, 3), 1 + 6 * (2 + 6 * 3));
  EXPECT_DOUBLE_EQ(g.position(g.index(1, 0, 0))[0], 2.0 / 6.0);
}

TEST(Grid, RejectsSmallOrBadGrids) {
  EXPECT_THROW(Grid(3, 1.0), Error);
  EXPECT_THROW(Grid(8, 0.0), Error);
  EXPECT_THROW(Grid(8, std::nan("")), Error);
}

TEST(Grid, CentralDerivativeOfSineHasDiscreteSymbol) {
  // Central differences map sin(kx) to sin(kh)/h cos(kx) exactly.
  const Grid g(12, 1.0);
  const double k = 2.0 * kPi * 3.0;
  const double h = g.spacing();
  const ScalarField f =
      sample(g, [](double x, double, double) { return std::sin(2.0 * kPi * 3.0 * x); });
  const ScalarField d = partial_derivative(g, f, 0);
  for (Index p = 0; p < g.size(); ++p) {
    const double expected = std::sin(k * h) / h * std::cos(k * g.position(p)[0]);
    EXPECT_NEAR(d[p], expected, 1e-12);
  }
  EXPECT_LT(max_abs(partial_derivative(g, f, 1)), 1e-14);
}

TEST(Grid, DerivativeIntoAndAddMatchAllocatingVersion) {
  const Grid g(8, 1.0);
  std::mt19937_64 rng(3);
  const ScalarField f = BandLimited::random(rng, 1.0, 1.0).sample(g);
  for (int axis = 0; axis < 3; ++axis) {
    const ScalarField ref = partial_derivative(g, f, axis);
    ScalarField into(f.size(), 7.0);
    partial_derivative_into(g, f, axis, into);
    ScalarField added(f.size(), 1.0);
    add_partial_derivative(g, f, axis, added);
    for (std::size_t p = 0; p < f.size(); ++p) {
      EXPECT_EQ(into[p], ref[p]);
      EXPECT_EQ(added[p], 1.0 + ref[p]);
    }
  }
}

TEST(Grid, ForwardStencilIsFirstOrder) {
  auto error = [](int n, Stencil s) {
    const Grid g(n, 1.0, s);
    const ScalarField f =
        sample(g, [](double, double y, double) { return std::sin(2.0 * kPi * y); });
    const ScalarField d = partial_derivative(g, f, 1);
    double e = 0.0;
    for (Index p = 0; p < g.size(); ++p) {
      e = std::max(e, std::abs(d[p] - 2.0 * kPi * std::cos(2.0 * kPi * g.position(p)[1])));
    }
    return e;
  };
  const double forward = std::log2(error(16, Stencil::forward) / error(32, Stencil::forward));
  const double central = std::log2(error(16, Stencil::central) / error(32, Stencil::central));
  EXPECT_NEAR(forward, 1.0, 0.1);
  EXPECT_NEAR(central, 2.0, 0.05);
}

TEST(Grid, PeriodicShiftWraps) {
  const Grid g(5, 1.0);
  ScalarField f(static_cast<std::size_t>(g.size()));
  for (Index p = 0; p < g.size(); ++p) f[p] = static_cast<double>(p);
  const ScalarField s = periodic_shift(g, f, 0, 2);
  const ScalarField back = periodic_shift(g, s, 0, -2);
  EXPECT_EQ(back, f);
  EXPECT_NE(s, f);
}

TEST(Forms, SlotBookkeeping) {
  EXPECT_EQ(slot_count(0), 1);
  EXPECT_EQ(slot_count(1), 3);
  EXPECT_EQ(slot_count(2), 3);
  EXPECT_EQ(slot_count(3), 1);
  for (int k = 0; k <= 3; ++k) {
    for (int s = 0; s < slot_count(k); ++s) EXPECT_EQ(mask_slot(slot_mask(k, s)), s);
  }
  EXPECT_EQ(so3_entry(0, 1).slot, 0);
  EXPECT_EQ(so3_entry(2, 0).slot, 1);
  EXPECT_EQ(so3_entry(2, 0).sign, -1.0);
  EXPECT_EQ(so3_entry(1, 1).sign, 0.0);
  EXPECT_EQ(value_count(ValueKind::so3), 3);
}

TEST(Forms, ArithmeticRequiresMatchingShape) {
  const Grid g(4, 1.0);
  FormField a(g, 1, ValueKind::frame);
  const FormField b(g, 2, ValueKind::frame);
  EXPECT_THROW(a += b, Error);
  EXPECT_THROW(FormField(g, 4, ValueKind::scalar), Error);
}

TEST(Exterior, DdVanishesOnRandomForms) {
  const Grid g(16, 1.0);
  std::mt19937_64 rng(11);
  for (int degree = 0; degree <= 1; ++degree) {
    for (ValueKind kind : {ValueKind::scalar, ValueKind::frame, ValueKind::so3}) {
      const FormField a = random_form(rng, g, degree, kind, 1.0);
      EXPECT_LT(max_abs(exterior_derivative(exterior_derivative(a))), 1e-12);
    }
  }
}

TEST(Exterior, WedgeOfOneFormsIsAntisymmetric) {
  const Grid g(8, 1.0);
  std::mt19937_64 rng(2);
  const FormField a = random_form(rng, g, 1, ValueKind::scalar, 1.0);
  const FormField b = random_form(rng, g, 1, ValueKind::scalar, 1.0);
  EXPECT_EQ(max_abs(wedge(a, b) + wedge(b, a)), 0.0);
  EXPECT_EQ(max_abs(wedge(a, a)), 0.0);
}

TEST(Exterior, DerivativeOfCoordinateFunctionProduct) {
  // d(f dx) for f = sin(2 pi y) is -f_y dx^dy: slot (0,1) holds -f_y.
  const Grid g(16, 1.0);
  FormField a(g, 1, ValueKind::scalar);
  const ScalarField f = sample(g, [](double, double y, double) { return std::sin(2 * kPi * y); });
  std::copy(f.begin(), f.end(), a.component(0, 0).begin());
  const FormField da = exterior_derivative(a);
  const ScalarField fy = partial_derivative(g, f, 1);
  const auto xy = da.component(0, mask_slot(0b011));
  for (Index p = 0; p < g.size(); ++p) EXPECT_NEAR(xy[p], -fy[p], 1e-13);
}

TEST(Exterior, FlatReferenceHasNoTorsionOrCurvature) {
  const Grid g(8, 1.0);
  const Coframe e = Coframe::identity(g);
  const Connection w = Connection::zero(g);
  EXPECT_EQ(max_abs(torsion(e, w)), 0.0);
  EXPECT_EQ(max_abs(curvature(w)), 0.0);
}

TEST(Exterior, DegenerateCoframeIsRejected) {
  const Grid g(4, 1.0);
  EXPECT_THROW(Coframe(FormField(g, 1, ValueKind::frame)), Error);
  EXPECT_THROW(Coframe(FormField(g, 1, ValueKind::so3)), Error);
}

TEST(Exterior, StressDualizationRoundTrips) {
  const Grid g(4, 1.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TensorField s(g);
  for (auto& c : s.c) {
    for (double& x : c) x = u(rng);
  }
  const TensorField back = dualize_stress(undualize_stress(s));
  EXPECT_EQ(max_abs(back.c[0]), max_abs(s.c[0]));
  for (int i = 0; i < 9; ++i) {
    for (Index p = 0; p < g.size(); ++p) EXPECT_DOUBLE_EQ(back.c[i][p], s.c[i][p]);
  }
}

TEST(Exterior, AxialDualRequiresSkewInput) {
  const Grid g(4, 1.0);
  TensorField t(g);
  std::fill(t.at(0, 1).begin(), t.at(0, 1).end(), 1.0);
  EXPECT_THROW(axial_dual(t), Error);
  std::fill(t.at(1, 0).begin(), t.at(1, 0).end(), -1.0);
  const VectorField a = axial_dual(t);
  // X_01 = eps_012 X_2.
  EXPECT_DOUBLE_EQ(a.c[2][0], 1.0);
  const TensorField back = axial_inverse(a);
  EXPECT_DOUBLE_EQ(back.at(0, 1)[3], 1.0);
  EXPECT_DOUBLE_EQ(back.at(1, 0)[3], -1.0);
}
