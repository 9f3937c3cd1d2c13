#include "cosserat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cosserat/error.hpp"

namespace cosserat {

Grid::Grid(int n, double length, Stencil stencil)
    : n_(n), length_(length), stencil_(stencil) {
  if (n < 4) {
    throw Error("grid.n must be >= 4, got " + std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error("grid.L must be positive and finite");
  }
}

double Grid::cell_volume() const {
  const double h = spacing();
  return h * h * h;
}

Index Grid::index(int i, int j, int k) const {
  auto wrap = [n = n_](int a) { return ((a % n) + n) % n; };
  return wrap(i) + static_cast<Index>(n_) * (wrap(j) + static_cast<Index>(n_) * wrap(k));
}

std::array<int, 3> Grid::coords(Index p) const {
  const int i = static_cast<int>(p % n_);
  const int j = static_cast<int>((p / n_) % n_);
  const int k = static_cast<int>(p / (static_cast<Index>(n_) * n_));
  return {i, j, k};
}

std::array<double, 3> Grid::position(Index p) const {
  const auto ijk = coords(p);
  const double h = spacing();
  return {ijk[0] * h, ijk[1] * h, ijk[2] * h};
}

VectorField::VectorField(const Grid& g) : grid(g) {
  for (auto& comp : c) comp.assign(static_cast<std::size_t>(g.size()), 0.0);
}

TensorField::TensorField(const Grid& g) : grid(g) {
  for (auto& comp : c) comp.assign(static_cast<std::size_t>(g.size()), 0.0);
}

namespace {

// Calls body(p, p_minus, p_plus) for every point, neighbours along axis.
template <class Body>
void sweep_axis(const Grid& grid, int axis, Body&& body) {
  const Index n = grid.n();
  const Index stride = axis == 0 ? 1 : (axis == 1 ? n : n * n);
  const Index span = stride * n;
  const Index total = grid.size();
  const Index wrap = (n - 1) * stride;
  for (Index base = 0; base < total; base += span) {
    for (Index offset = 0; offset < stride; ++offset) {
      const Index first = base + offset;
      const Index last = first + wrap;
      body(first, last, first + stride);
      for (Index p = first + stride; p < last; p += stride) body(p, p - stride, p + stride);
      body(last, last - stride, first);
    }
  }
}

}  // namespace

namespace {

template <bool Accumulate>
void apply_derivative(const Grid& grid, std::span<const double> f, int axis,
                      std::span<double> out) {
  if (axis < 0 || axis > 2) throw Error("partial_derivative: axis out of range");
  if (static_cast<Index>(f.size()) != grid.size() ||
      static_cast<Index>(out.size()) != grid.size()) {
    throw Error("partial_derivative: field size does not match grid");
  }
  auto put = [&](Index p, double v) {
    if constexpr (Accumulate) {
      out[p] += v;
    } else {
      out[p] = v;
    }
  };
  if (grid.stencil() == Stencil::central) {
    const double scale = 1.0 / (2.0 * grid.spacing());
    sweep_axis(grid, axis, [&](Index p, Index pm, Index pp) {
      put(p, (f[pp] - f[pm]) * scale);
    });
  } else {
    const double scale = 1.0 / grid.spacing();
    sweep_axis(grid, axis, [&](Index p, Index, Index pp) { put(p, (f[pp] - f[p]) * scale); });
  }
}

}  // namespace

ScalarField partial_derivative(const Grid& grid, std::span<const double> f,
                               int axis) {
  ScalarField out(f.size());
  apply_derivative<false>(grid, f, axis, out);
  return out;
}

void partial_derivative_into(const Grid& grid, std::span<const double> f, int axis,
                             std::span<double> out) {
  apply_derivative<false>(grid, f, axis, out);
}

void add_partial_derivative(const Grid& grid, std::span<const double> f, int axis,
                            std::span<double> out) {
  apply_derivative<true>(grid, f, axis, out);
}

ScalarField periodic_shift(const Grid& grid, std::span<const double> f,
                           int axis, int shift) {
  ScalarField out(f.size());
  for (Index p = 0; p < grid.size(); ++p) {
    auto ijk = grid.coords(p);
    ijk[axis] += shift;
    out[grid.index(ijk[0], ijk[1], ijk[2])] = f[p];
  }
  return out;
}

double max_abs(std::span<const double> f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

double l2_norm(const Grid& grid, std::span<const double> f) {
  double s = 0.0;
  for (double v : f) s += v * v;
  return std::sqrt(s * grid.cell_volume());
}

double max_abs(const VectorField& f) {
  double m = 0.0;
  for (const auto& comp : f.c) m = std::max(m, max_abs(comp));
  return m;
}

double max_abs(const TensorField& f) {
  double m = 0.0;
  for (const auto& comp : f.c) m = std::max(m, max_abs(comp));
  return m;
}

}  // namespace cosserat
