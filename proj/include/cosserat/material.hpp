#pragma once

#include <Eigen/Core>

namespace cosserat {

/**
 * Density, isotropic microinertia and the six isotropic micropolar moduli:
 *
 *   sigma_ij = lambda gamma_kk delta_ij + (mu_e + kappa_c) gamma_ij + mu_e gamma_ji
 *   m_ij     = alpha_t kappa_kk delta_ij + beta_t kappa_ji + gamma_t kappa_ij
 *
 * Row index i of sigma and m is the component index, column j the
 * derivative index (gamma_ij = u_{i,j} - eps_ijk phi_k).
 */
struct MaterialParams {
  double rho = 1.0;
  double J = 0.1;
  double lambda = 1.0;
  double mu_e = 1.0;
  double kappa_c = 0.5;
  double alpha_t = 0.1;
  double beta_t = 0.1;
  double gamma_t = 0.2;

  //! n = 32, L = 1 companion values used across the tools and tests.
  static MaterialParams desk_defaults() { return MaterialParams{}; }

  /**
   * Throws unless rho, J, mu_e > 0, every value is finite and the 18x18
   * quadratic energy form is positive semi-definite. Semi-definiteness
   * (not definiteness) admits the classical limit kappa_c = alpha_t =
   * beta_t = gamma_t = 0.
   */
  void validate() const;

  //! Smallest eigenvalue of the 18x18 Hessian of W(gamma, kappa).
  double min_energy_eigenvalue() const;
  bool positive_definite() const;

  //! Hessian of W over (gamma_00..gamma_22, kappa_00..kappa_22), row-major.
  Eigen::Matrix<double, 18, 18> energy_hessian() const;

  //! Largest wave speed over the acoustic and rotational branches.
  double max_wave_speed() const;
};

Eigen::Matrix3d force_stress(const MaterialParams& m, const Eigen::Matrix3d& gamma);
Eigen::Matrix3d couple_stress(const MaterialParams& m, const Eigen::Matrix3d& kappa);
//! W = 1/2 gamma : sigma(gamma) + 1/2 kappa : m(kappa).
double energy_density(const MaterialParams& m, const Eigen::Matrix3d& gamma,
                      const Eigen::Matrix3d& kappa);

}  // namespace cosserat
