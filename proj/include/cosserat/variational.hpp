#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cosserat/exterior.hpp"
#include "cosserat/forms.hpp"
#include "cosserat/kinematics.hpp"
#include "cosserat/material.hpp"
#include "cosserat/solver.hpp"

namespace cosserat {

/**
 * Quadratic micropolar Lagrangian density
 *   L = 1/2 rho |u_dot|^2 + 1/2 J |phi_dot|^2 - W(gamma, kappa).
 * Construction validates the material (W >= 0).
 */
class LagrangianSpec {
 public:
  explicit LagrangianSpec(const MaterialParams& material);

  const MaterialParams& material() const { return material_; }

 private:
  MaterialParams material_;
};

/**
 * Stress and momentum forms of a linearized state:
 *   sigma    frame-valued 2-form, (Sigma_i)_ab = eps_abc sigma(i, c)
 *   couple   so3-valued 2-form whose axial dual is eps_abc mu(r, c)
 *   momentum frame-valued 3-form p_i dV, p = rho u_dot
 *   spin     so3-valued 3-form whose axial dual is J phi_dot dV
 *
 * so3 forms are indexed like the connection they pair with, i.e. the
 * (i, j) entry multiplies delta omega^i_j in the action variation.
 */
struct ConjugateForms {
  FormField sigma;
  FormField couple;
  FormField momentum;
  FormField spin;
};

ConjugateForms conjugate_forms(const LagrangianSpec& lagrangian,
                               const MicropolarState& state);

//! v_i dV as a frame-valued 3-form.
FormField volume_form(const VectorField& density);
//! Coefficients of a frame-valued 3-form as a vector field.
VectorField volume_density(const FormField& three_form);

/**
 * D Sigma_i - d_t P_i (+ F_i), a frame-valued 3-form. Its dV coefficient is
 * d_a sigma(i, a) - p_dot_i (+ f_i).
 */
FormField force_balance_residual(const ConjugateForms& cf, const Connection& omega,
                                 const FormField& momentum_rate,
                                 const FormField* body_force = nullptr);

/**
 * D M + (e^j ^ Sigma_i - e^i ^ Sigma_j) - d_t Qhat (+ C), an so3-valued
 * 3-form (entry (i, j), i < j). Its axial dual is
 * d_a mu(r, a) + eps_rij sigma_ij - q_dot_r (+ c_r).
 */
FormField moment_balance_residual(const ConjugateForms& cf, const Coframe& e,
                                  const Connection& omega, const FormField& spin_rate,
                                  const FormField* body_couple = nullptr);

/**
 * S = sum_n dt sum_x h^3 [1/2 rho |v_{n+1/2}|^2 + 1/2 J |w_{n+1/2}|^2]
 *   - sum_n w_n sum_x h^3 W(gamma_n, kappa_n)
 * with midpoint velocities from consecutive slices and trapezoidal weights
 * w_n (dt inside, dt/2 at both ends). Velocities stored in the states are
 * not used.
 */
double discrete_action(const LagrangianSpec& lagrangian,
                       std::span<const MicropolarState> trajectory, double dt);

//! Balance residuals of one time slice: force (frame 3-form) and moment
//! (so3 3-form).
struct SliceResiduals {
  FormField force;
  FormField moment;
};

//! Computes slice residuals from conjugate forms and the momentum/spin rates.
using ResidualFunction = std::function<SliceResiduals(
    const ConjugateForms&, const FormField& momentum_rate, const FormField& spin_rate)>;

//! Default: force_balance_residual and moment_balance_residual with e = dX,
//! omega = 0.
SliceResiduals default_slice_residuals(const ConjugateForms& cf,
                                       const FormField& momentum_rate,
                                       const FormField& spin_rate);

//! dS / d(u_n, phi_n) per slice, assembled from slice residuals.
struct ActionGradient {
  std::vector<VectorField> u;
  std::vector<VectorField> phi;
};

ActionGradient action_gradient(const LagrangianSpec& lagrangian,
                               std::span<const MicropolarState> trajectory, double dt,
                               const ResidualFunction& residuals = default_slice_residuals);

struct GradientCheckReport {
  double directional = 0.0;            //!< <gradient, direction>
  std::vector<double> step_sizes;
  std::vector<double> central_differences;
  std::vector<double> relative_errors;
  double min_relative_error = 0.0;
  bool passed = false;
};

/**
 * Compares <gradient, direction> with (S[x + e d] - S[x - e d]) / (2 e) for
 * each e in `step_sizes`. Passes iff the smallest relative error is at most
 * `tolerance`. Only u and phi of the direction states are used.
 */
GradientCheckReport functional_gradient_check(
    const LagrangianSpec& lagrangian, std::span<const MicropolarState> trajectory,
    std::span<const MicropolarState> direction, double dt,
    std::span<const double> step_sizes, double tolerance = 1e-6,
    const ResidualFunction& residuals = default_slice_residuals);

/**
 * Drift of a conserved (or linearly driven) total along a run:
 * max_t |Q(t) - Q(0) - rate t| / scale, plus a least-squares slope of Q(t)
 * with its standard error.
 */
struct DriftReport {
  double max_relative_drift = 0.0;
  double scale = 0.0;
  Eigen::Vector3d slope = Eigen::Vector3d::Zero();
  Eigen::Vector3d slope_stderr = Eigen::Vector3d::Zero();
  Eigen::Vector3d expected_rate = Eigen::Vector3d::Zero();
  //! max_i |slope_i - rate_i| / max(|rate|, tiny)
  double relative_rate_error = 0.0;
  //! |slope_i - rate_i| <= 1.96 stderr_i (or at roundoff level) for all i.
  bool slope_consistent = true;
};

DriftReport noether_translation_check(std::span<const ConservedTotals> history,
                                      const Eigen::Vector3d& expected_rate =
                                          Eigen::Vector3d::Zero());

DriftReport noether_rotation_check(std::span<const ConservedTotals> history,
                                   const Eigen::Vector3d& expected_rate =
                                       Eigen::Vector3d::Zero());

//! Drift of an arbitrary vector-valued series; both checks above use it.
DriftReport drift_of_series(std::span<const double> times,
                            std::span<const Eigen::Vector3d> values, double scale,
                            const Eigen::Vector3d& expected_rate);

//! CSV rows: step, P1, P2, P3, L1, L2, L3, energy.
std::string totals_csv(std::span<const ConservedTotals> history);

}  // namespace cosserat
