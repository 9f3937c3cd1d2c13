#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "cosserat/kinematics.hpp"
#include "cosserat/material.hpp"
#include "cosserat/solver.hpp"

namespace cosserat {

using Vector6c = Eigen::Matrix<std::complex<double>, 6, 1>;
using Matrix6c = Eigen::Matrix<std::complex<double>, 6, 6>;

/**
 * Plane-wave symbol of the balance laws for (u, phi) ~ exp(i k.X):
 * omega^2 M x = K(k) x with M = diag(rho, rho, rho, J, J, J) and K
 * Hermitian positive semi-definite.
 */
Matrix6c stiffness_symbol(const MaterialParams& material, const Eigen::Vector3d& k);

//! Branch frequency and its mode, normalised so that mode^H M mode = 1.
struct Branch {
  double omega = 0.0;
  Vector6c mode;
};

//! Six branches at wavevector k, ascending in omega.
std::array<Branch, 6> dispersion_branches(const MaterialParams& material,
                                          const Eigen::Vector3d& k);

//! Wavevector seen by the central stencil: sin(k_a h) / h per axis.
Eigen::Vector3d effective_wavevector(const Grid& grid, const Eigen::Vector3d& k);

/**
 * Superposition Re sum_b c_b mode_b exp(i (k.X - omega_b t)) at t = 0, with
 * matching velocities, so each branch travels without mixing.
 */
MicropolarState plane_wave_state(const Grid& grid, const Eigen::Vector3d& k,
                                 std::span<const Branch> branches,
                                 std::span<const std::complex<double>> amplitudes);

//! (1/N) sum_p (u, phi)(p) exp(-i k.X_p).
Vector6c fourier_coefficient(const MicropolarState& state, const Eigen::Vector3d& k);

/**
 * Angular frequency of the strongest line in a uniformly sampled complex
 * signal, positive for content exp(+i omega t). Hann window and parabolic
 * interpolation of the peak magnitude.
 */
double peak_frequency(std::span<const std::complex<double>> signal, double dt);

//! Runs the integrator and records conserved totals after every step
//! (including step 0). `observer` sees each state, e.g. for snapshots.
std::vector<ConservedTotals> record_run(
    const LeapfrogIntegrator& integrator, MicropolarState& state, long steps,
    const std::function<void(const MicropolarState&, long)>& observer = {});

/**
 * Plane-wave experiment along x with k = 2 pi / L: every branch of the
 * stencil's own symbol (effective_wavevector) is excited with amplitude
 * `amplitude`, the M-weighted projection on each mode is recorded every step
 * and its FFT peak gives the measured frequency.
 */
struct PlaneWaveRun {
  Eigen::Vector3d k = Eigen::Vector3d::Zero();
  std::array<Branch, 6> branches;  //!< at the effective wavevector
  std::array<double, 6> measured{};
  std::vector<ConservedTotals> totals;
};

PlaneWaveRun plane_wave_run(const MaterialParams& material, const Grid& grid, double dt,
                            long steps, double amplitude,
                            const std::function<void(const MicropolarState&, long)>&
                                observer = {});

//! Longitudinal twist wave along x: u = 0, phi = 0, phi_dot_x = A cos(2 pi x / L).
MicropolarState twist_wave_state(const Grid& grid, double amplitude);

//! Relative energy drift max_t |E(t) - E(0)| / E(0).
double energy_drift(std::span<const ConservedTotals> totals);

/**
 * Runs `steps` forward, flips both velocities, runs `steps` again and
 * returns max |final - mirrored initial| / max |initial| over positions and
 * velocities.
 */
double time_reversal_error(const LeapfrogIntegrator& integrator,
                           const MicropolarState& initial, long steps);

//! Measured speed of a right-moving Gaussian pulse in u_x.
struct PulseRun {
  double speed = 0.0;
  double travelled = 0.0;  //!< shift in units of L
  long steps = 0;
  double max_phi = 0.0;    //!< stays zero in the classical limit
};

/**
 * Pulse u_x = A exp(-d^2 / (2 w^2)), w = L / 8, started right-moving at
 * speed `launch_speed` and run for about half a box transit. The shift comes
 * from the peak of the circular cross-correlation of the x profile, refined
 * by a parabola through the three top samples.
 */
PulseRun pulse_speed(const MaterialParams& material, const Grid& grid, double launch_speed);

}  // namespace cosserat
