#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace cosserat {

using Index = std::ptrdiff_t;
using ScalarField = std::vector<double>;

//! Difference stencil used by partial_derivative. `forward` is first order
//! and exists only as a negative control for convergence studies.
enum class Stencil { central, forward };

/**
 * Uniform periodic cubic grid with n points per axis on a box of edge L.
 * Point p = i + n*(j + n*k) sits at X = (i h, j h, k h).
 */
class Grid {
 public:
  Grid(int n, double length, Stencil stencil = Stencil::central);

  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  double cell_volume() const;
  Index size() const { return static_cast<Index>(n_) * n_ * n_; }
  Stencil stencil() const { return stencil_; }

  Index index(int i, int j, int k) const;
  std::array<int, 3> coords(Index p) const;
  std::array<double, 3> position(Index p) const;

  bool operator==(const Grid&) const = default;

 private:
  int n_;
  double length_;
  Stencil stencil_;
};

//! Three Cartesian components over the grid (u, v, microrotation, ...).
struct VectorField {
  explicit VectorField(const Grid& g);

  Grid grid;
  std::array<ScalarField, 3> c;
};

//! Rank-2 tensor field stored row-major: at(i, j).
struct TensorField {
  explicit TensorField(const Grid& g);

  ScalarField& at(int i, int j) { return c[3 * i + j]; }
  const ScalarField& at(int i, int j) const { return c[3 * i + j]; }

  Grid grid;
  std::array<ScalarField, 9> c;
};

//! d f / d X^axis with periodic wraparound.
ScalarField partial_derivative(const Grid& grid, std::span<const double> f,
                               int axis);

//! partial_derivative written into `out`, or added to it; no allocation.
void partial_derivative_into(const Grid& grid, std::span<const double> f, int axis,
                             std::span<double> out);
void add_partial_derivative(const Grid& grid, std::span<const double> f, int axis,
                            std::span<double> out);

//! Circular shift by `shift` points along `axis` (translation on the torus).
ScalarField periodic_shift(const Grid& grid, std::span<const double> f,
                           int axis, int shift);

double max_abs(std::span<const double> f);
//! Discrete L2 norm with h^3 cell weights.
double l2_norm(const Grid& grid, std::span<const double> f);

double max_abs(const VectorField& f);
double max_abs(const TensorField& f);

}  // namespace cosserat
