#include "cosserat/variational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cosserat/error.hpp"

namespace cosserat {

namespace {

std::vector<double> slice_weights(std::size_t slices, double dt) {
  std::vector<double> w(slices, dt);
  w.front() = 0.5 * dt;
  w.back() = 0.5 * dt;
  return w;
}

void require_trajectory(std::span<const MicropolarState> trajectory, double dt) {
  if (trajectory.size() < 2) throw Error("trajectory needs at least two time slices");
  if (!(dt > 0.0)) throw Error("trajectory time step must be positive");
  for (const auto& s : trajectory) {
    if (!(s.grid() == trajectory.front().grid())) {
      throw Error("trajectory slices live on different grids");
    }
  }
}

double strain_energy(const MaterialParams& m, const MicropolarState& state) {
  const Grid& g = state.grid();
  const StrainState strain = linearized_strain(state);
  double w = 0.0;
  for (Index p = 0; p < g.size(); ++p) {
    Eigen::Matrix3d gamma, kappa;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        gamma(i, j) = strain.gamma.at(i, j)[p];
        kappa(i, j) = strain.kappa.at(i, j)[p];
      }
    }
    w += energy_density(m, gamma, kappa);
  }
  return w * g.cell_volume();
}

}  // namespace

LagrangianSpec::LagrangianSpec(const MaterialParams& material) : material_(material) {
  material_.validate();
}

FormField volume_form(const VectorField& density) {
  FormField out(density.grid, 3, ValueKind::frame);
  for (int i = 0; i < 3; ++i) {
    std::copy(density.c[i].begin(), density.c[i].end(), out.component(i, 0).begin());
  }
  return out;
}

VectorField volume_density(const FormField& three_form) {
  if (three_form.degree() != 3 || three_form.kind() != ValueKind::frame) {
    throw Error("volume_density: expected a frame-valued 3-form");
  }
  VectorField out(three_form.grid());
  for (int i = 0; i < 3; ++i) {
    const auto src = three_form.component(i, 0);
    out.c[i].assign(src.begin(), src.end());
  }
  return out;
}

ConjugateForms conjugate_forms(const LagrangianSpec& lagrangian,
                               const MicropolarState& state) {
  const MaterialParams& m = lagrangian.material();
  const Stresses s = constitutive(m, linearized_strain(state));
  VectorField momentum(state.grid());
  VectorField spin(state.grid());
  for (int i = 0; i < 3; ++i) {
    for (std::size_t n = 0; n < momentum.c[i].size(); ++n) {
      momentum.c[i][n] = m.rho * state.u_dot.c[i][n];
      spin.c[i][n] = m.J * state.phi_dot.c[i][n];
    }
  }
  return ConjugateForms{undualize_stress(s.sigma), so3_from_axial(undualize_stress(s.mu)),
                        volume_form(momentum), so3_from_axial(volume_form(spin))};
}

FormField force_balance_residual(const ConjugateForms& cf, const Connection& omega,
                                 const FormField& momentum_rate,
                                 const FormField* body_force) {
  FormField r = covariant_exterior_derivative(cf.sigma, omega);
  r -= momentum_rate;
  if (body_force != nullptr) r += *body_force;
  return r;
}

FormField moment_balance_residual(const ConjugateForms& cf, const Coframe& e,
                                  const Connection& omega, const FormField& spin_rate,
                                  const FormField* body_couple) {
  FormField r = covariant_exterior_derivative(cf.couple, omega);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const int slot = so3_entry(i, j).slot;
      wedge_accumulate(e.form(), j, cf.sigma, i, 1.0, r, slot);
      wedge_accumulate(e.form(), i, cf.sigma, j, -1.0, r, slot);
    }
  }
  r -= spin_rate;
  if (body_couple != nullptr) r += *body_couple;
  return r;
}

double discrete_action(const LagrangianSpec& lagrangian,
                       std::span<const MicropolarState> trajectory, double dt) {
  require_trajectory(trajectory, dt);
  const MaterialParams& m = lagrangian.material();
  const Grid& g = trajectory.front().grid();
  const std::vector<double> w = slice_weights(trajectory.size(), dt);
  double kinetic = 0.0;
  for (std::size_t n = 0; n + 1 < trajectory.size(); ++n) {
    const auto& a = trajectory[n];
    const auto& b = trajectory[n + 1];
    double k = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (Index p = 0; p < g.size(); ++p) {
        const double v = (b.u.c[i][p] - a.u.c[i][p]) / dt;
        const double r = (b.phi.c[i][p] - a.phi.c[i][p]) / dt;
        k += 0.5 * m.rho * v * v + 0.5 * m.J * r * r;
      }
    }
    kinetic += dt * k * g.cell_volume();
  }
  double potential = 0.0;
  for (std::size_t n = 0; n < trajectory.size(); ++n) {
    potential += w[n] * strain_energy(m, trajectory[n]);
  }
  return kinetic - potential;
}

SliceResiduals default_slice_residuals(const ConjugateForms& cf,
                                       const FormField& momentum_rate,
                                       const FormField& spin_rate) {
  const Grid& g = cf.sigma.grid();
  const Connection flat = Connection::zero(g);
  return SliceResiduals{
      force_balance_residual(cf, flat, momentum_rate),
      moment_balance_residual(cf, Coframe::identity(g), flat, spin_rate)};
}

ActionGradient action_gradient(const LagrangianSpec& lagrangian,
                               std::span<const MicropolarState> trajectory, double dt,
                               const ResidualFunction& residuals) {
  require_trajectory(trajectory, dt);
  const MaterialParams& m = lagrangian.material();
  const Grid& g = trajectory.front().grid();
  const std::size_t slices = trajectory.size();
  const std::vector<double> w = slice_weights(slices, dt);

  // Half-step momentum and spin densities; zero outside the trajectory.
  auto half_step = [&](std::size_t n, bool rotational) {
    VectorField out(g);
    if (n + 1 >= slices + 1 || n == 0) return out;
    const auto& a = trajectory[n - 1];
    const auto& b = trajectory[n];
    const double coeff = rotational ? m.J : m.rho;
    for (int i = 0; i < 3; ++i) {
      const auto& xa = rotational ? a.phi.c[i] : a.u.c[i];
      const auto& xb = rotational ? b.phi.c[i] : b.u.c[i];
      for (Index p = 0; p < g.size(); ++p) out.c[i][p] = coeff * (xb[p] - xa[p]) / dt;
    }
    return out;
  };

  ActionGradient grad;
  const double vol = g.cell_volume();
  for (std::size_t n = 0; n < slices; ++n) {
    // Index k of half_step(k) is the interval (k-1, k); k = 0 and
    // k = slices fall outside the trajectory.
    const VectorField p_before = half_step(n, false);
    const VectorField p_after = half_step(n + 1, false);
    const VectorField q_before = half_step(n, true);
    const VectorField q_after = half_step(n + 1, true);
    VectorField p_rate(g), q_rate(g);
    for (int i = 0; i < 3; ++i) {
      for (Index p = 0; p < g.size(); ++p) {
        p_rate.c[i][p] = (p_after.c[i][p] - p_before.c[i][p]) / w[n];
        q_rate.c[i][p] = (q_after.c[i][p] - q_before.c[i][p]) / w[n];
      }
    }
    const ConjugateForms cf = conjugate_forms(lagrangian, trajectory[n]);
    const SliceResiduals r =
        residuals(cf, volume_form(p_rate), so3_from_axial(volume_form(q_rate)));
    VectorField gu = volume_density(r.force);
    VectorField gp = volume_density(axial_from_so3(r.moment));
    for (int i = 0; i < 3; ++i) {
      for (Index p = 0; p < g.size(); ++p) {
        gu.c[i][p] *= vol * w[n];
        gp.c[i][p] *= vol * w[n];
      }
    }
    grad.u.push_back(std::move(gu));
    grad.phi.push_back(std::move(gp));
  }
  return grad;
}

GradientCheckReport functional_gradient_check(
    const LagrangianSpec& lagrangian, std::span<const MicropolarState> trajectory,
    std::span<const MicropolarState> direction, double dt,
    std::span<const double> step_sizes, double tolerance,
    const ResidualFunction& residuals) {
  require_trajectory(trajectory, dt);
  if (direction.size() != trajectory.size()) {
    throw Error("functional_gradient_check: direction and trajectory differ in length");
  }
  if (step_sizes.empty()) throw Error("functional_gradient_check: no step sizes");

  const ActionGradient grad = action_gradient(lagrangian, trajectory, dt, residuals);
  GradientCheckReport report;
  for (std::size_t n = 0; n < trajectory.size(); ++n) {
    for (int i = 0; i < 3; ++i) {
      for (std::size_t p = 0; p < grad.u[n].c[i].size(); ++p) {
        report.directional += grad.u[n].c[i][p] * direction[n].u.c[i][p] +
                              grad.phi[n].c[i][p] * direction[n].phi.c[i][p];
      }
    }
  }

  auto shifted = [&](double s) {
    std::vector<MicropolarState> out(trajectory.begin(), trajectory.end());
    for (std::size_t n = 0; n < out.size(); ++n) {
      for (int i = 0; i < 3; ++i) {
        for (std::size_t p = 0; p < out[n].u.c[i].size(); ++p) {
          out[n].u.c[i][p] += s * direction[n].u.c[i][p];
          out[n].phi.c[i][p] += s * direction[n].phi.c[i][p];
        }
      }
    }
    return out;
  };

  report.min_relative_error = std::numeric_limits<double>::infinity();
  for (double s : step_sizes) {
    const auto plus = shifted(s);
    const auto minus = shifted(-s);
    const double fd =
        (discrete_action(lagrangian, plus, dt) - discrete_action(lagrangian, minus, dt)) /
        (2.0 * s);
    const double denom = std::max(std::abs(fd), std::abs(report.directional));
    const double err = denom == 0.0 ? 0.0 : std::abs(fd - report.directional) / denom;
    report.step_sizes.push_back(s);
    report.central_differences.push_back(fd);
    report.relative_errors.push_back(err);
    report.min_relative_error = std::min(report.min_relative_error, err);
  }
  report.passed = report.min_relative_error <= tolerance;
  return report;
}

DriftReport drift_of_series(std::span<const double> times,
                            std::span<const Eigen::Vector3d> values, double scale,
                            const Eigen::Vector3d& expected_rate) {
  if (times.size() != values.size() || times.empty()) {
    throw Error("drift: empty or mismatched series");
  }
  DriftReport r;
  r.scale = scale;
  r.expected_rate = expected_rate;
  const Eigen::Vector3d q0 = values.front();
  const double t0 = times.front();
  double max_dev = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Eigen::Vector3d dev = values[k] - q0 - expected_rate * (times[k] - t0);
    max_dev = std::max(max_dev, dev.cwiseAbs().maxCoeff());
  }
  if (max_dev == 0.0) {
    r.max_relative_drift = 0.0;
  } else {
    r.max_relative_drift = scale > 0.0 ? max_dev / scale
                                       : std::numeric_limits<double>::infinity();
  }

  const std::size_t count = times.size();
  if (count >= 3) {
    double tm = 0.0;
    for (double t : times) tm += t;
    tm /= static_cast<double>(count);
    double stt = 0.0;
    for (double t : times) stt += (t - tm) * (t - tm);
    for (int i = 0; i < 3; ++i) {
      double qm = 0.0;
      for (const auto& v : values) qm += v(i);
      qm /= static_cast<double>(count);
      double stq = 0.0;
      for (std::size_t k = 0; k < count; ++k) stq += (times[k] - tm) * (values[k](i) - qm);
      const double slope = stt > 0.0 ? stq / stt : 0.0;
      double sse = 0.0;
      for (std::size_t k = 0; k < count; ++k) {
        const double fit = qm + slope * (times[k] - tm);
        sse += (values[k](i) - fit) * (values[k](i) - fit);
      }
      const double stderr_i =
          stt > 0.0 ? std::sqrt(sse / static_cast<double>(count - 2) / stt) : 0.0;
      r.slope(i) = slope;
      r.slope_stderr(i) = stderr_i;
    }
    const double duration = times.back() - times.front();
    const double rate_scale = expected_rate.cwiseAbs().maxCoeff();
    const double roundoff =
        duration > 0.0 ? 64.0 * std::numeric_limits<double>::epsilon() * scale / duration
                       : 0.0;
    for (int i = 0; i < 3; ++i) {
      const double miss = std::abs(r.slope(i) - expected_rate(i));
      if (miss > 1.96 * r.slope_stderr(i) && miss > roundoff) r.slope_consistent = false;
      if (rate_scale > 0.0) {
        r.relative_rate_error = std::max(r.relative_rate_error, miss / rate_scale);
      }
    }
  }
  return r;
}

DriftReport noether_translation_check(std::span<const ConservedTotals> history,
                                      const Eigen::Vector3d& expected_rate) {
  std::vector<double> times;
  std::vector<Eigen::Vector3d> values;
  double scale = 0.0;
  for (const auto& t : history) {
    times.push_back(t.time);
    values.push_back(t.linear);
    scale = std::max(scale, t.linear_scale);
  }
  return drift_of_series(times, values, scale, expected_rate);
}

DriftReport noether_rotation_check(std::span<const ConservedTotals> history,
                                   const Eigen::Vector3d& expected_rate) {
  std::vector<double> times;
  std::vector<Eigen::Vector3d> values;
  double scale = 0.0;
  for (const auto& t : history) {
    times.push_back(t.time);
    values.push_back(t.angular);
    scale = std::max(scale, t.angular_scale);
  }
  return drift_of_series(times, values, scale, expected_rate);
}

std::string totals_csv(std::span<const ConservedTotals> history) {
  std::string out = "step,P1,P2,P3,L1,L2,L3,energy\n";
  char buf[512];
  for (const auto& t : history) {
    std::snprintf(buf, sizeof(buf),
                  "%ld,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e\n", t.step,
                  t.linear(0), t.linear(1), t.linear(2), t.angular(0), t.angular(1),
                  t.angular(2), t.energy);
    out += buf;
  }
  return out;
}

}  // namespace cosserat
