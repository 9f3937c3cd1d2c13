#pragma once

#include "cosserat/forms.hpp"
#include "cosserat/grid.hpp"

namespace cosserat {

/**
 * Frame-vector-valued 1-form e^i = e^i_a dX^a. Construction fails when the
 * 3x3 matrix e^i_a is (numerically) singular anywhere: det must exceed
 * kMinDeterminant at every point.
 */
class Coframe {
 public:
  static constexpr double kMinDeterminant = 1e-10;

  explicit Coframe(FormField e);
  //! e^i = dX^i.
  static Coframe identity(const Grid& grid);

  const FormField& form() const { return e_; }
  const Grid& grid() const { return e_.grid(); }
  //! Entry e^i_a at point p.
  double at(int i, int a, Index p) const { return e_.component(i, a)[p]; }

 private:
  FormField e_;
};

//! so(3)-valued 1-form omega^i_j = omega^i_{j,a} dX^a, stored skew in ij.
class Connection {
 public:
  explicit Connection(FormField omega);
  static Connection zero(const Grid& grid);

  const FormField& form() const { return omega_; }
  const Grid& grid() const { return omega_.grid(); }

 private:
  FormField omega_;
};

/**
 * out[vo] += coeff * (a[va] ^ b[vb]) for one value component of each
 * operand. Building block for every contraction over frame indices.
 */
void wedge_accumulate(const FormField& a, int va, const FormField& b, int vb,
                      double coeff, FormField& out, int vo);

/**
 * Exterior product. Supported value combinations: scalar ^ anything and
 * anything ^ scalar. Frame and so(3) contractions are assembled by callers
 * with wedge_accumulate.
 */
FormField wedge(const FormField& a, const FormField& b);

//! d on k-forms, k <= 2, applied per value component.
FormField exterior_derivative(const FormField& a);

//! i_u a, contracting the first coordinate slot; k >= 1.
FormField interior_product(const VectorField& u, const FormField& a);

/**
 * Covariant exterior derivative. Frame-valued: (D a)^i = d a^i + w^i_j ^ a^j.
 * so(3)-valued p-form: D b = d b + w ^ b - (-1)^p b ^ w (adjoint action).
 */
FormField covariant_exterior_derivative(const FormField& a,
                                        const Connection& omega);

//! T^i = d e^i + w^i_j ^ e^j.
FormField torsion(const Coframe& e, const Connection& omega);

//! W^i_j = d w^i_j + w^i_k ^ w^k_j.
FormField curvature(const Connection& omega);

//! Slot of a 2-form / so(3) pair and its complementary index r with the
//! sign eps_{r a b}: (0,1) -> (2, +1), (0,2) -> (1, -1), (1,2) -> (0, +1).
struct Complement {
  int index;
  double sign;
};
Complement complement_of_slot(int slot);

/**
 * Stress 2-forms to tensor: sigma(i, c) = 1/2 eps^{cab} (Sigma_i)_{ab}.
 * Row i is the frame index, column c the coordinate (divergence) index.
 */
TensorField dualize_stress(const FormField& sigma_form);
//! Inverse: (Sigma_i)_{ab} = eps_{abc} sigma(i, c).
FormField undualize_stress(const TensorField& sigma);

//! X_r = 1/2 eps_r^{ij} X_ij. Throws if X departs from skew by more than tol
//! (relative to max |X|, floor 1).
VectorField axial_dual(const TensorField& skew, double tol = 1e-12);
//! X_ij = eps_ijr X_r.
TensorField axial_inverse(const VectorField& axial);

//! Per-slot axial dual of an so(3)-valued form into a frame-valued form.
FormField axial_from_so3(const FormField& so3_form);
//! Inverse of axial_from_so3.
FormField so3_from_axial(const FormField& frame_form);

}  // namespace cosserat
