#include "cosserat/solver.hpp"

#include <cmath>
#include <string>

#include <Eigen/Geometry>

#include "cosserat/error.hpp"

namespace cosserat {

namespace {

ScalarField divergence_row(const TensorField& t, int row) {
  const Grid& g = t.grid;
  ScalarField out(static_cast<std::size_t>(g.size()), 0.0);
  for (int j = 0; j < 3; ++j) {
    const ScalarField d = partial_derivative(g, t.at(row, j), j);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += d[n];
  }
  return out;
}

// eps_rij sigma_ij
double axial_of_skew_part(const TensorField& s, int r, Index p) {
  const int i = (r + 1) % 3;
  const int j = (r + 2) % 3;
  return s.at(i, j)[p] - s.at(j, i)[p];
}

bool all_finite(const VectorField& v) {
  for (const auto& comp : v.c) {
    for (double x : comp) {
      if (!std::isfinite(x)) return false;
    }
  }
  return true;
}

}  // namespace

BodySources BodySources::uniform(const Grid& grid, const Eigen::Vector3d& force,
                                 const Eigen::Vector3d& couple) {
  BodySources s(grid);
  for (int i = 0; i < 3; ++i) {
    s.force.c[i].assign(static_cast<std::size_t>(grid.size()), force(i));
    s.couple.c[i].assign(static_cast<std::size_t>(grid.size()), couple(i));
  }
  return s;
}

Stresses constitutive(const MaterialParams& m, const StrainState& strain) {
  const Grid& g = strain.gamma.grid;
  Stresses out{TensorField(g), TensorField(g)};
  for (Index p = 0; p < g.size(); ++p) {
    const double tr_g = strain.gamma.at(0, 0)[p] + strain.gamma.at(1, 1)[p] +
                        strain.gamma.at(2, 2)[p];
    const double tr_k = strain.kappa.at(0, 0)[p] + strain.kappa.at(1, 1)[p] +
                        strain.kappa.at(2, 2)[p];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double d = i == j ? 1.0 : 0.0;
        out.sigma.at(i, j)[p] = m.lambda * tr_g * d +
                                (m.mu_e + m.kappa_c) * strain.gamma.at(i, j)[p] +
                                m.mu_e * strain.gamma.at(j, i)[p];
        out.mu.at(i, j)[p] = m.alpha_t * tr_k * d + m.beta_t * strain.kappa.at(j, i)[p] +
                             m.gamma_t * strain.kappa.at(i, j)[p];
      }
    }
  }
  return out;
}

VectorField linear_momentum_residual(const MicropolarState& state,
                                     const TensorField& sigma,
                                     const VectorField& force,
                                     const MaterialParams& material) {
  VectorField r(state.grid());
  for (int i = 0; i < 3; ++i) {
    r.c[i] = divergence_row(sigma, i);
    for (std::size_t n = 0; n < r.c[i].size(); ++n) {
      r.c[i][n] += force.c[i][n] - material.rho * state.u_ddot.c[i][n];
    }
  }
  return r;
}

VectorField angular_momentum_residual(const MicropolarState& state,
                                      const TensorField& sigma,
                                      const TensorField& mu,
                                      const VectorField& couple,
                                      const MaterialParams& material) {
  VectorField r(state.grid());
  for (int k = 0; k < 3; ++k) {
    r.c[k] = divergence_row(mu, k);
    for (Index p = 0; p < state.grid().size(); ++p) {
      r.c[k][p] += axial_of_skew_part(sigma, k, p) + couple.c[k][p] -
                   material.J * state.phi_ddot.c[k][p];
    }
  }
  return r;
}

namespace {

// Fills grad[3 i + j] = d_j u_i + H_ij and grad[9 + 3 i + j] = d_j phi_i.
void fill_gradients(const MicropolarState& state, std::array<ScalarField, 18>& grad) {
  const Grid& g = state.grid();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      auto& du = grad[3 * i + j];
      auto& dphi = grad[9 + 3 * i + j];
      du.resize(static_cast<std::size_t>(g.size()));
      dphi.resize(static_cast<std::size_t>(g.size()));
      partial_derivative_into(g, state.u.c[i], j, du);
      partial_derivative_into(g, state.phi.c[i], j, dphi);
      const double h = state.mean_gradient(i, j);
      if (h != 0.0) {
        for (double& v : du) v += h;
      }
    }
  }
}

// Strain at p from the gradient buffers: gamma_ij = grad u_ij - eps_ijk phi_k.
void strain_at(const std::array<ScalarField, 18>& grad, const MicropolarState& state,
               Index p, Eigen::Matrix3d& gamma, Eigen::Matrix3d& kappa) {
  const double f0 = state.phi.c[0][p];
  const double f1 = state.phi.c[1][p];
  const double f2 = state.phi.c[2][p];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      gamma(i, j) = grad[3 * i + j][p];
      kappa(i, j) = grad[9 + 3 * i + j][p];
    }
  }
  gamma(0, 1) -= f2;
  gamma(1, 0) += f2;
  gamma(1, 2) -= f0;
  gamma(2, 1) += f0;
  gamma(2, 0) -= f1;
  gamma(0, 2) += f1;
}

}  // namespace

double total_energy(const MicropolarState& state, const MaterialParams& m) {
  const Grid& g = state.grid();
  thread_local std::array<ScalarField, 18> grad;
  fill_gradients(state, grad);
  double e = 0.0;
  Eigen::Matrix3d gamma, kappa;
  for (Index p = 0; p < g.size(); ++p) {
    strain_at(grad, state, p, gamma, kappa);
    double kinetic = 0.0;
    for (int i = 0; i < 3; ++i) {
      kinetic += 0.5 * m.rho * state.u_dot.c[i][p] * state.u_dot.c[i][p] +
                 0.5 * m.J * state.phi_dot.c[i][p] * state.phi_dot.c[i][p];
    }
    e += kinetic + energy_density(m, gamma, kappa);
  }
  return e * g.cell_volume();
}

ConservedTotals conserved_totals(const MicropolarState& state,
                                 const MaterialParams& m, long step, double time) {
  const Grid& g = state.grid();
  ConservedTotals t;
  t.step = step;
  t.time = time;
  for (Index p = 0; p < g.size(); ++p) {
    const auto x = g.position(p);
    const Eigen::Vector3d pos(x[0], x[1], x[2]);
    const Eigen::Vector3d momentum = m.rho * Eigen::Vector3d(state.u_dot.c[0][p],
                                                             state.u_dot.c[1][p],
                                                             state.u_dot.c[2][p]);
    const Eigen::Vector3d spin = m.J * Eigen::Vector3d(state.phi_dot.c[0][p],
                                                       state.phi_dot.c[1][p],
                                                       state.phi_dot.c[2][p]);
    const Eigen::Vector3d orbital = pos.cross(momentum);
    t.linear += momentum;
    t.angular += orbital + spin;
    t.linear_scale += momentum.norm();
    t.angular_scale += orbital.norm() + spin.norm();
  }
  const double vol = g.cell_volume();
  t.linear *= vol;
  t.angular *= vol;
  t.linear_scale *= vol;
  t.angular_scale *= vol;
  t.energy = total_energy(state, m);
  return t;
}

LeapfrogIntegrator::LeapfrogIntegrator(const MaterialParams& material, const Grid& grid,
                                       BodySources sources, double dt)
    : material_(material), grid_(grid), sources_(std::move(sources)), dt_(dt) {
  material_.validate();
  if (!(sources_.force.grid == grid_) || !(sources_.couple.grid == grid_)) {
    throw Error("integrator: source fields live on a different grid");
  }
  const double bound = stable_step_bound(material_, grid_);
  if (!(dt > 0.0) || dt > bound) {
    throw Error("integrator: dt = " + std::to_string(dt) +
                " violates the stability bound " + std::to_string(bound));
  }
}

double LeapfrogIntegrator::stable_step_bound(const MaterialParams& material,
                                             const Grid& grid) {
  return 0.5 * grid.spacing() / material.max_wave_speed();
}

void LeapfrogIntegrator::update_accelerations(MicropolarState& state) const {
  const Index size = grid_.size();
  auto& grad = work_.gradient;
  auto& stress = work_.stress;
  fill_gradients(state, grad);
  for (auto& s : stress) s.resize(static_cast<std::size_t>(size));

  Eigen::Matrix3d gamma, kappa;
  for (Index p = 0; p < size; ++p) {
    strain_at(grad, state, p, gamma, kappa);
    const Eigen::Matrix3d sigma = force_stress(material_, gamma);
    const Eigen::Matrix3d mu = couple_stress(material_, kappa);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        stress[3 * i + j][p] = sigma(i, j);
        stress[9 + 3 * i + j][p] = mu(i, j);
      }
    }
    const Eigen::Vector3d torque(sigma(1, 2) - sigma(2, 1), sigma(2, 0) - sigma(0, 2),
                                 sigma(0, 1) - sigma(1, 0));
    for (int i = 0; i < 3; ++i) {
      state.u_ddot.c[i][p] = sources_.force.c[i][p];
      state.phi_ddot.c[i][p] = torque(i) + sources_.couple.c[i][p];
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      add_partial_derivative(grid_, stress[3 * i + j], j, state.u_ddot.c[i]);
      add_partial_derivative(grid_, stress[9 + 3 * i + j], j, state.phi_ddot.c[i]);
    }
  }
  const double inv_rho = 1.0 / material_.rho;
  const double inv_j = 1.0 / material_.J;
  for (int i = 0; i < 3; ++i) {
    for (double& a : state.u_ddot.c[i]) a *= inv_rho;
    for (double& b : state.phi_ddot.c[i]) b *= inv_j;
  }
}

void LeapfrogIntegrator::advance(MicropolarState& state) const {
  const double half = 0.5 * dt_;
  for (int i = 0; i < 3; ++i) {
    for (Index p = 0; p < grid_.size(); ++p) {
      state.u_dot.c[i][p] += half * state.u_ddot.c[i][p];
      state.phi_dot.c[i][p] += half * state.phi_ddot.c[i][p];
      state.u.c[i][p] += dt_ * state.u_dot.c[i][p];
      state.phi.c[i][p] += dt_ * state.phi_dot.c[i][p];
    }
  }
  update_accelerations(state);
  for (int i = 0; i < 3; ++i) {
    for (Index p = 0; p < grid_.size(); ++p) {
      state.u_dot.c[i][p] += half * state.u_ddot.c[i][p];
      state.phi_dot.c[i][p] += half * state.phi_ddot.c[i][p];
    }
  }
}

MicropolarState LeapfrogIntegrator::step(const MicropolarState& state) const {
  if (!(state.grid() == grid_)) throw Error("integrator: state lives on a different grid");
  MicropolarState next = state;
  update_accelerations(next);
  advance(next);
  if (!all_finite(next.u) || !all_finite(next.phi) || !all_finite(next.u_dot) ||
      !all_finite(next.phi_dot)) {
    throw Error("integrator: non-finite value after step");
  }
  return next;
}

void LeapfrogIntegrator::run(
    MicropolarState& state, long steps,
    const std::function<void(const MicropolarState&, long)>& observer) const {
  if (!(state.grid() == grid_)) throw Error("integrator: state lives on a different grid");
  update_accelerations(state);
  if (observer) observer(state, 0);
  for (long s = 1; s <= steps; ++s) {
    advance(state);
    if (!all_finite(state.u) || !all_finite(state.phi) || !all_finite(state.u_ddot) ||
        !all_finite(state.phi_ddot)) {
      throw Error("integrator: non-finite value at step " + std::to_string(s));
    }
    if (observer) observer(state, s);
  }
}

}  // namespace cosserat
