#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "cosserat/grid.hpp"
#include "cosserat/kinematics.hpp"

namespace cosserat {

//! One term A cos(2 pi k.X / L + phase).
struct Mode {
  std::array<int, 3> k{};
  double amplitude = 0.0;
  double phase = 0.0;
};

/**
 * Smooth periodic scalar function on [0, L)^3: a short sum of cosines with
 * integer wavenumbers. Evaluates exactly anywhere, so it doubles as an
 * analytic reference for derivatives.
 */
class BandLimited {
 public:
  BandLimited() = default;
  BandLimited(std::vector<Mode> modes, double length);

  //! Up to `max_modes` modes with wavenumbers in [-max_k, max_k] (never all
  //! zero) and amplitudes uniform in [-amplitude, amplitude].
  static BandLimited random(std::mt19937_64& rng, double length, double amplitude,
                            int max_modes = 5, int max_k = 2);

  double value(const Eigen::Vector3d& x) const;
  Eigen::Vector3d gradient(const Eigen::Vector3d& x) const;
  Eigen::Matrix3d hessian(const Eigen::Vector3d& x) const;

  ScalarField sample(const Grid& grid) const;
  ScalarField sample_derivative(const Grid& grid, int axis) const;

  const std::vector<Mode>& modes() const { return modes_; }

 private:
  std::vector<Mode> modes_;
  double length_ = 1.0;
};

//! Three independent band-limited components.
struct BandLimitedVector {
  static BandLimitedVector random(std::mt19937_64& rng, double length, double amplitude,
                                  int max_modes = 5, int max_k = 2);

  Eigen::Vector3d value(const Eigen::Vector3d& x) const;
  //! Row i is the gradient of component i.
  Eigen::Matrix3d jacobian(const Eigen::Vector3d& x) const;
  VectorField sample(const Grid& grid) const;

  std::array<BandLimited, 3> c;
};

/**
 * Rotation field Q = Rz(a) Ry(b) Rx(c) with band-limited Euler angles, with
 * exact first derivatives.
 */
class AnalyticRotation {
 public:
  static AnalyticRotation random(std::mt19937_64& rng, double length, double amplitude,
                                 int max_modes = 3, int max_k = 1);

  Eigen::Matrix3d value(const Eigen::Vector3d& x) const;
  //! d Q / d X^axis.
  Eigen::Matrix3d derivative(const Eigen::Vector3d& x, int axis) const;

  RotationField sample(const Grid& grid) const;

  std::array<BandLimited, 3> angles;
};

//! Point p of the grid as an Eigen vector.
Eigen::Vector3d point(const Grid& grid, Index p);

//! Random coframe I + small band-limited perturbation (frame 1-form).
FormField random_coframe_form(std::mt19937_64& rng, const Grid& grid, double amplitude,
                              int max_k = 2);
//! Random so(3)-valued form of the given degree.
FormField random_so3_form(std::mt19937_64& rng, const Grid& grid, int degree,
                          double amplitude, int max_k = 2);
//! Random form of any degree and kind with band-limited components.
FormField random_form(std::mt19937_64& rng, const Grid& grid, int degree, ValueKind kind,
                      double amplitude, int max_k = 2);

//! Band-limited u, phi, u_dot, phi_dot; accelerations zero.
MicropolarState random_state(std::mt19937_64& rng, const Grid& grid, double amplitude,
                             int max_k = 2);

}  // namespace cosserat
