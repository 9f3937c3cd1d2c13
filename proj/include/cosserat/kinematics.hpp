#pragma once

#include <Eigen/Core>

#include "cosserat/exterior.hpp"
#include "cosserat/forms.hpp"
#include "cosserat/grid.hpp"

namespace cosserat {

//! Levi-Civita symbol with eps_{012} = +1.
double levi_civita(int i, int j, int k);

//! Rotation exp([a]_x) by |a| about a / |a| (Rodrigues), [a]_x b = a x b.
Eigen::Matrix3d rotation_from_axial(const Eigen::Vector3d& a);

/**
 * Sampled motion y(X) = X + w(X) with w periodic, its velocity and its
 * deformation gradient F^i_A = d_A y^i.
 */
struct MotionField {
  VectorField placement;
  VectorField velocity;
  TensorField deformation_gradient;
};

/**
 * F = I + grad w for y = X + w. Rejects placements whose displacement is not
 * periodic (e.g. a finite rigid rotation y = R X) and motions with
 * det F <= 0 anywhere.
 */
TensorField deformation_gradient(const VectorField& placement);
MotionField make_motion(const VectorField& placement, const VectorField& velocity);

//! Frame-valued 2-form with (a<b) components d_a F^i_b - d_b F^i_a.
FormField compatibility_residual(const TensorField& F);

//! Per-point rotation matrices; orthonormal with det +1 to 1e-12.
class RotationField {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit RotationField(TensorField q);

  const TensorField& matrices() const { return q_; }
  const Grid& grid() const { return q_.grid; }
  Eigen::Matrix3d at(Index p) const;
  RotationField transposed() const;

 private:
  TensorField q_;
};

/**
 * omega = Q^{-1} dQ = Q^T d_a Q dX^a, assembled with grid stencils and then
 * projected onto its skew part. The discrete product is skew only up to
 * O(h^2); if the departure exceeds `relative_tolerance` times max |omega|
 * (floor 1) the rotation field is rejected as too rough.
 */
Connection pure_gauge_connection(const RotationField& q,
                                 double relative_tolerance = 0.25);
//! Same, reporting the pre-projection asymmetry (max-abs) in `asymmetry`.
Connection pure_gauge_connection(const RotationField& q, double& asymmetry,
                                 double relative_tolerance = 0.25);

//! e^i = Q^i_k ebar^k.
Coframe compose_coframe(const RotationField& q, const Coframe& reference);

//! Torsion- and curvature-free pair built from one rotation field.
struct CosseratConfiguration {
  Coframe coframe;
  Connection connection;
};

/**
 * e = Q dX together with its compatible flat connection
 * omega = Q d(Q^{-1}) = pure_gauge_connection(Q^T).
 */
CosseratConfiguration defect_free_configuration(const RotationField& q);

/**
 * Potentials y^i = X^i + w^i with dy = e, for a closed coframe whose mean is
 * the identity. w is the trapezoidal line integral of e - dX along
 * axis-aligned paths from the origin, averaged over the six axis orderings.
 * Throws if max |de| exceeds `closure_tolerance`.
 */
VectorField poincare_reconstruct(const Coframe& e, double closure_tolerance);

//! Placement samples as the frame-valued 1-form dy.
FormField placement_differential(const VectorField& placement);

struct LieDerivative {
  FormField full;           //!< (Du)^i - phi^i_j e^j
  FormField translational;  //!< (Du)^i = du^i + omega^i_j u^j
  FormField rotational;     //!< phi^i_j = i_u omega^i_j (so3 0-form)
  FormField cartan;         //!< d(i_u e^i) + i_u(de^i)
};

/**
 * Lie derivative of a torsion-free coframe along u, in both the Cartan and
 * the translation/rotation split. Throws if max |T| > torsion_tolerance.
 */
LieDerivative lie_derivative_coframe(const VectorField& u, const Coframe& e,
                                     const Connection& omega,
                                     double torsion_tolerance);

/**
 * Linearized micropolar configuration. u is the periodic part of the
 * displacement; `mean_gradient` is an optional uniform displacement
 * gradient H so the total displacement is H X + u (affine parts are not
 * periodic and so cannot live in u). Accelerations are written by the
 * integrator and are zero otherwise.
 */
struct MicropolarState {
  explicit MicropolarState(const Grid& grid);

  const Grid& grid() const { return u.grid; }

  VectorField u;
  VectorField phi;
  VectorField u_dot;
  VectorField phi_dot;
  VectorField u_ddot;
  VectorField phi_ddot;
  Eigen::Matrix3d mean_gradient = Eigen::Matrix3d::Zero();
};

struct StrainState {
  TensorField gamma;  //!< gamma_ij = u_{i,j} - eps_ijk phi_k
  TensorField kappa;  //!< kappa_ij = phi_{i,j}
};

StrainState linearized_strain(const MicropolarState& state);

/**
 * Nonlinear coframe e(eps) = Q(eps phi) d(X + eps u), Q the exponential-map
 * rotation. Its first-order part is u^i_{,A} + eps^i_{kA} phi^k, i.e. the
 * micropolar strain gamma.
 */
Coframe linearize_coframe(const MicropolarState& state, double eps);

}  // namespace cosserat
