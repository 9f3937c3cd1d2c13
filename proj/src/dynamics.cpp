#include "cosserat/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <Eigen/Eigenvalues>
#include <fftw3.h>

#include "cosserat/error.hpp"

namespace cosserat {

namespace {

using cd = std::complex<double>;

// Constitutive maps applied to complex strains by linearity.
Eigen::Matrix3cd complex_force_stress(const MaterialParams& m, const Eigen::Matrix3cd& g) {
  return force_stress(m, g.real()).cast<cd>() + cd(0, 1) * force_stress(m, g.imag()).cast<cd>();
}

Eigen::Matrix3cd complex_couple_stress(const MaterialParams& m, const Eigen::Matrix3cd& k) {
  return couple_stress(m, k.real()).cast<cd>() +
         cd(0, 1) * couple_stress(m, k.imag()).cast<cd>();
}

}  // namespace

Matrix6c stiffness_symbol(const MaterialParams& m, const Eigen::Vector3d& k) {
  const cd ik(0.0, 1.0);
  Matrix6c K;
  for (int col = 0; col < 6; ++col) {
    Vector6c x = Vector6c::Zero();
    x(col) = 1.0;
    Eigen::Matrix3cd gamma, kappa;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        gamma(i, j) = ik * k(j) * x(i);
        kappa(i, j) = ik * k(j) * x(3 + i);
        for (int l = 0; l < 3; ++l) gamma(i, j) -= levi_civita(i, j, l) * x(3 + l);
      }
    }
    const Eigen::Matrix3cd sigma = complex_force_stress(m, gamma);
    const Eigen::Matrix3cd mu = complex_couple_stress(m, kappa);
    // Right-hand sides of rho u_ddot = div sigma and J phi_ddot = div mu + eps sigma.
    Vector6c rhs = Vector6c::Zero();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        rhs(i) += ik * k(j) * sigma(i, j);
        rhs(3 + i) += ik * k(j) * mu(i, j);
        for (int l = 0; l < 3; ++l) rhs(3 + i) += levi_civita(i, j, l) * sigma(j, l);
      }
    }
    K.col(col) = -rhs;
  }
  return K;
}

std::array<Branch, 6> dispersion_branches(const MaterialParams& m, const Eigen::Vector3d& k) {
  const Matrix6c K = stiffness_symbol(m, k);
  Eigen::Matrix<double, 6, 1> inv_sqrt_mass;
  for (int i = 0; i < 6; ++i) inv_sqrt_mass(i) = 1.0 / std::sqrt(i < 3 ? m.rho : m.J);
  Matrix6c scaled = inv_sqrt_mass.cast<cd>().asDiagonal() * K *
                    inv_sqrt_mass.cast<cd>().asDiagonal();
  scaled = 0.5 * (scaled + scaled.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix6c> solver(scaled);
  if (solver.info() != Eigen::Success) throw Error("dispersion: eigen solver failed");
  std::array<Branch, 6> out;
  for (int b = 0; b < 6; ++b) {
    out[b].omega = std::sqrt(std::max(0.0, solver.eigenvalues()(b)));
    out[b].mode = inv_sqrt_mass.cast<cd>().asDiagonal() * solver.eigenvectors().col(b);
  }
  return out;
}

Eigen::Vector3d effective_wavevector(const Grid& grid, const Eigen::Vector3d& k) {
  const double h = grid.spacing();
  return {std::sin(k(0) * h) / h, std::sin(k(1) * h) / h, std::sin(k(2) * h) / h};
}

MicropolarState plane_wave_state(const Grid& grid, const Eigen::Vector3d& k,
                                 std::span<const Branch> branches,
                                 std::span<const cd> amplitudes) {
  if (branches.size() != amplitudes.size()) {
    throw Error("plane_wave_state: one amplitude per branch required");
  }
  MicropolarState s(grid);
  for (Index p = 0; p < grid.size(); ++p) {
    const auto x = grid.position(p);
    const cd phase = std::exp(cd(0.0, k(0) * x[0] + k(1) * x[1] + k(2) * x[2]));
    for (std::size_t b = 0; b < branches.size(); ++b) {
      const Vector6c disp = amplitudes[b] * phase * branches[b].mode;
      const Vector6c vel = cd(0.0, -branches[b].omega) * disp;
      for (int i = 0; i < 3; ++i) {
        s.u.c[i][p] += disp(i).real();
        s.phi.c[i][p] += disp(3 + i).real();
        s.u_dot.c[i][p] += vel(i).real();
        s.phi_dot.c[i][p] += vel(3 + i).real();
      }
    }
  }
  return s;
}

Vector6c fourier_coefficient(const MicropolarState& state, const Eigen::Vector3d& k) {
  const Grid& g = state.grid();
  Vector6c acc = Vector6c::Zero();
  for (Index p = 0; p < g.size(); ++p) {
    const auto x = g.position(p);
    const cd phase = std::exp(cd(0.0, -(k(0) * x[0] + k(1) * x[1] + k(2) * x[2])));
    for (int i = 0; i < 3; ++i) {
      acc(i) += state.u.c[i][p] * phase;
      acc(3 + i) += state.phi.c[i][p] * phase;
    }
  }
  return acc / static_cast<double>(g.size());
}

double peak_frequency(std::span<const cd> signal, double dt) {
  const int n = static_cast<int>(signal.size());
  if (n < 8) throw Error("peak_frequency: signal too short");
  fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(n));
  fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n));
  fftw_plan plan = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  for (int j = 0; j < n; ++j) {
    const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * j / (n - 1)));
    in[j][0] = w * signal[j].real();
    in[j][1] = w * signal[j].imag();
  }
  fftw_execute(plan);
  std::vector<double> mag(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) mag[j] = std::hypot(out[j][0], out[j][1]);
  fftw_destroy_plan(plan);
  fftw_free(in);
  fftw_free(out);

  const int peak = static_cast<int>(std::max_element(mag.begin(), mag.end()) - mag.begin());
  const double a = mag[(peak - 1 + n) % n];
  const double b = mag[peak];
  const double c = mag[(peak + 1) % n];
  const double denom = a - 2.0 * b + c;
  const double delta = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
  double bin = peak + delta;
  if (bin > 0.5 * n) bin -= n;
  return 2.0 * std::numbers::pi * bin / (n * dt);
}

std::vector<ConservedTotals> record_run(
    const LeapfrogIntegrator& integrator, MicropolarState& state, long steps,
    const std::function<void(const MicropolarState&, long)>& observer) {
  std::vector<ConservedTotals> totals;
  totals.reserve(static_cast<std::size_t>(steps + 1));
  const double dt = integrator.dt();
  integrator.run(state, steps, [&](const MicropolarState& s, long step) {
    totals.push_back(conserved_totals(s, integrator.material(), step, step * dt));
    if (observer) observer(s, step);
  });
  return totals;
}

PlaneWaveRun plane_wave_run(const MaterialParams& material, const Grid& grid, double dt,
                            long steps, double amplitude,
                            const std::function<void(const MicropolarState&, long)>& observer) {
  PlaneWaveRun run;
  run.k = Eigen::Vector3d(2.0 * std::numbers::pi / grid.length(), 0.0, 0.0);
  run.branches = dispersion_branches(material, effective_wavevector(grid, run.k));
  const std::vector<cd> amps(6, cd(amplitude, 0.0));
  MicropolarState state = plane_wave_state(grid, run.k, run.branches, amps);

  std::array<Vector6c, 6> weighted;
  for (int b = 0; b < 6; ++b) {
    weighted[b] = run.branches[b].mode;
    for (int i = 0; i < 6; ++i) weighted[b](i) *= i < 3 ? material.rho : material.J;
  }
  std::array<std::vector<cd>, 6> signal;
  for (auto& s : signal) s.reserve(static_cast<std::size_t>(steps + 1));

  LeapfrogIntegrator integrator(material, grid, BodySources(grid), dt);
  run.totals = record_run(integrator, state, steps, [&](const MicropolarState& s, long step) {
    const Vector6c f = fourier_coefficient(s, run.k);
    // mode^H M s_hat ~ exp(-i omega t); conjugated so the peak is at +omega.
    for (int b = 0; b < 6; ++b) signal[b].push_back(std::conj(weighted[b].dot(f)));
    if (observer) observer(s, step);
  });
  for (int b = 0; b < 6; ++b) run.measured[b] = std::abs(peak_frequency(signal[b], dt));
  return run;
}

MicropolarState twist_wave_state(const Grid& grid, double amplitude) {
  MicropolarState s(grid);
  const double k = 2.0 * std::numbers::pi / grid.length();
  for (Index p = 0; p < grid.size(); ++p) {
    s.phi_dot.c[0][p] = amplitude * std::cos(k * grid.position(p)[0]);
  }
  return s;
}

double energy_drift(std::span<const ConservedTotals> totals) {
  if (totals.empty()) return 0.0;
  const double e0 = totals.front().energy;
  double worst = 0.0;
  for (const auto& t : totals) worst = std::max(worst, std::abs(t.energy - e0));
  if (worst == 0.0) return 0.0;
  return e0 > 0.0 ? worst / e0 : std::numeric_limits<double>::infinity();
}

double time_reversal_error(const LeapfrogIntegrator& integrator,
                           const MicropolarState& initial, long steps) {
  MicropolarState s = initial;
  auto flip = [](MicropolarState& x) {
    for (int i = 0; i < 3; ++i) {
      for (double& v : x.u_dot.c[i]) v = -v;
      for (double& v : x.phi_dot.c[i]) v = -v;
    }
  };
  integrator.run(s, steps);
  flip(s);
  integrator.run(s, steps);
  flip(s);
  double diff = 0.0;
  double size = 0.0;
  const std::array<std::pair<const VectorField*, const VectorField*>, 4> pairs{{
      {&s.u, &initial.u},
      {&s.phi, &initial.phi},
      {&s.u_dot, &initial.u_dot},
      {&s.phi_dot, &initial.phi_dot},
  }};
  for (const auto& [now, then] : pairs) {
    for (int i = 0; i < 3; ++i) {
      for (std::size_t p = 0; p < now->c[i].size(); ++p) {
        diff = std::max(diff, std::abs(now->c[i][p] - then->c[i][p]));
        size = std::max(size, std::abs(then->c[i][p]));
      }
    }
  }
  if (diff == 0.0) return 0.0;
  return size > 0.0 ? diff / size : std::numeric_limits<double>::infinity();
}

PulseRun pulse_speed(const MaterialParams& material, const Grid& grid, double launch_speed) {
  const int n = grid.n();
  const double L = grid.length();
  const double w = L / 8.0;
  const double x0 = L / 4.0;
  const double amplitude = 1e-3;
  MicropolarState s(grid);
  for (Index p = 0; p < grid.size(); ++p) {
    double d = grid.position(p)[0] - x0;
    d -= L * std::round(d / L);
    const double u = amplitude * std::exp(-d * d / (2.0 * w * w));
    s.u.c[0][p] = u;
    s.u_dot.c[0][p] = launch_speed * u * d / (w * w);
  }
  auto profile = [&](const MicropolarState& x) {
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) row[i] = x.u.c[0][grid.index(i, 0, 0)];
    return row;
  };
  const std::vector<double> before = profile(s);

  const double dt = 0.9 * LeapfrogIntegrator::stable_step_bound(material, grid);
  PulseRun run;
  run.steps = std::max(1L, std::lround(0.5 * L / launch_speed / dt));
  LeapfrogIntegrator integrator(material, grid, BodySources(grid), dt);
  integrator.run(s, run.steps);
  const std::vector<double> after = profile(s);

  std::vector<double> corr(static_cast<std::size_t>(n), 0.0);
  for (int shift = 0; shift < n; ++shift) {
    for (int i = 0; i < n; ++i) corr[shift] += after[(i + shift) % n] * before[i];
  }
  const int best = static_cast<int>(std::max_element(corr.begin(), corr.end()) - corr.begin());
  const double a = corr[(best - 1 + n) % n];
  const double b = corr[best];
  const double c = corr[(best + 1) % n];
  const double denom = a - 2.0 * b + c;
  const double delta = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
  run.travelled = (best + delta) / n;
  run.speed = run.travelled * L / (static_cast<double>(run.steps) * dt);
  run.max_phi = max_abs(s.phi);
  return run;
}

}  // namespace cosserat
