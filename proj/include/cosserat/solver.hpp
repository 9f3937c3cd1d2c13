#pragma once

#include <array>
#include <functional>

#include <Eigen/Core>

#include "cosserat/grid.hpp"
#include "cosserat/kinematics.hpp"
#include "cosserat/material.hpp"

namespace cosserat {

//! Force stress sigma(i, j) and couple stress mu(r, j); column j is the
//! divergence index.
struct Stresses {
  TensorField sigma;
  TensorField mu;
};

//! Body force f_i and body couple c_r densities.
struct BodySources {
  explicit BodySources(const Grid& grid) : force(grid), couple(grid) {}
  static BodySources uniform(const Grid& grid, const Eigen::Vector3d& force,
                             const Eigen::Vector3d& couple);

  VectorField force;
  VectorField couple;
};

Stresses constitutive(const MaterialParams& material, const StrainState& strain);

//! d_j sigma_ij + f_i - rho u_ddot_i.
VectorField linear_momentum_residual(const MicropolarState& state,
                                     const TensorField& sigma,
                                     const VectorField& force,
                                     const MaterialParams& material);

//! d_j mu_rj + eps_rij sigma_ij + c_r - J phi_ddot_r.
VectorField angular_momentum_residual(const MicropolarState& state,
                                      const TensorField& sigma,
                                      const TensorField& mu,
                                      const VectorField& couple,
                                      const MaterialParams& material);

//! Sum h^3 [1/2 rho |u_dot|^2 + 1/2 J |phi_dot|^2 + W(gamma, kappa)].
double total_energy(const MicropolarState& state, const MaterialParams& material);

/**
 * Totals tracked along a trajectory: linear momentum sum h^3 rho u_dot,
 * angular momentum sum h^3 (X x rho u_dot + J phi_dot) and energy. The
 * scales are the matching L1 magnitudes used to normalise drifts.
 */
struct ConservedTotals {
  long step = 0;
  double time = 0.0;
  Eigen::Vector3d linear = Eigen::Vector3d::Zero();
  Eigen::Vector3d angular = Eigen::Vector3d::Zero();
  double energy = 0.0;
  double linear_scale = 0.0;
  double angular_scale = 0.0;
};

ConservedTotals conserved_totals(const MicropolarState& state,
                                 const MaterialParams& material, long step,
                                 double time);

/**
 * Kick-drift-kick leapfrog for the isotropic micropolar balances
 *
 *   rho u_ddot_i = d_j sigma_ij + f_i
 *   J phi_ddot_r = d_j mu_rj + eps_rij sigma_ij + c_r.
 *
 * The time step is checked against 0.5 h / c_max at construction.
 */
class LeapfrogIntegrator {
 public:
  LeapfrogIntegrator(const MaterialParams& material, const Grid& grid,
                     BodySources sources, double dt);

  static double stable_step_bound(const MaterialParams& material, const Grid& grid);

  double dt() const { return dt_; }
  const MaterialParams& material() const { return material_; }
  const BodySources& sources() const { return sources_; }

  //! Fills u_ddot and phi_ddot from the current positions.
  void update_accelerations(MicropolarState& state) const;

  //! One step; recomputes the starting accelerations.
  MicropolarState step(const MicropolarState& state) const;

  /**
   * Advances `state` in place by `steps` steps, calling `observer(state,
   * step)` after the initial state and after every step. Throws with the
   * step index if a non-finite value appears.
   */
  void run(MicropolarState& state, long steps,
           const std::function<void(const MicropolarState&, long)>& observer = {}) const;

 private:
  void advance(MicropolarState& state) const;

  // Gradients of u and phi, then sigma and mu, reused across steps.
  struct Workspace {
    std::array<ScalarField, 18> gradient;
    std::array<ScalarField, 18> stress;
  };

  MaterialParams material_;
  Grid grid_;
  BodySources sources_;
  double dt_;
  mutable Workspace work_;
};

}  // namespace cosserat
