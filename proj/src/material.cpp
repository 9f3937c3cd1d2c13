#include "cosserat/material.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cosserat/error.hpp"

namespace cosserat {

Eigen::Matrix<double, 18, 18> MaterialParams::energy_hessian() const {
  Eigen::Matrix<double, 18, 18> a = Eigen::Matrix<double, 18, 18>::Zero();
  auto delta = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          const int r = 3 * i + j;
          const int c = 3 * k + l;
          a(r, c) = lambda * delta(i, j) * delta(k, l) +
                    (mu_e + kappa_c) * delta(i, k) * delta(j, l) +
                    mu_e * delta(i, l) * delta(j, k);
          a(9 + r, 9 + c) = alpha_t * delta(i, j) * delta(k, l) +
                            gamma_t * delta(i, k) * delta(j, l) +
                            beta_t * delta(i, l) * delta(j, k);
        }
      }
    }
  }
  return a;
}

double MaterialParams::min_energy_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 18, 18>> solver(
      energy_hessian(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool MaterialParams::positive_definite() const { return min_energy_eigenvalue() > 0.0; }

void MaterialParams::validate() const {
  for (double v : {rho, J, lambda, mu_e, kappa_c, alpha_t, beta_t, gamma_t}) {
    if (!std::isfinite(v)) throw Error("material parameters must be finite");
  }
  if (!(rho > 0.0)) throw Error("material: rho must be > 0");
  if (!(J > 0.0)) throw Error("material: J must be > 0");
  if (!(mu_e > 0.0)) throw Error("material: mu_e must be > 0");
  const double scale = std::max({std::abs(lambda), mu_e, std::abs(kappa_c),
                                 std::abs(alpha_t), std::abs(beta_t), std::abs(gamma_t)});
  if (min_energy_eigenvalue() < -1e-12 * scale) {
    throw Error("material: quadratic energy is not positive semi-definite");
  }
}

double MaterialParams::max_wave_speed() const {
  const double branches[] = {
      (lambda + 2.0 * mu_e + kappa_c) / rho,  // longitudinal acoustic
      (mu_e + kappa_c) / rho,                 // transverse acoustic
      (alpha_t + beta_t + gamma_t) / J,       // longitudinal rotational
      (beta_t + gamma_t) / J,
      gamma_t / J,                            // transverse rotational
  };
  double c2 = 0.0;
  for (double b : branches) c2 = std::max(c2, b);
  return std::sqrt(c2);
}

Eigen::Matrix3d force_stress(const MaterialParams& m, const Eigen::Matrix3d& gamma) {
  return m.lambda * gamma.trace() * Eigen::Matrix3d::Identity() +
         (m.mu_e + m.kappa_c) * gamma + m.mu_e * gamma.transpose();
}

Eigen::Matrix3d couple_stress(const MaterialParams& m, const Eigen::Matrix3d& kappa) {
  return m.alpha_t * kappa.trace() * Eigen::Matrix3d::Identity() +
         m.beta_t * kappa.transpose() + m.gamma_t * kappa;
}

double energy_density(const MaterialParams& m, const Eigen::Matrix3d& gamma,
                      const Eigen::Matrix3d& kappa) {
  return 0.5 * (gamma.cwiseProduct(force_stress(m, gamma)).sum() +
                kappa.cwiseProduct(couple_stress(m, kappa)).sum());
}

}  // namespace cosserat
