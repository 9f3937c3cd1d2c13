#include "cosserat/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>

#include "cosserat/dynamics.hpp"
#include "cosserat/fields.hpp"
#include "cosserat/output.hpp"
#include "cosserat/variational.hpp"

namespace cosserat {

namespace {

// Wavenumber cap for random initial data; see the order probes.
constexpr int kSmoothK = 1;

double auto_dt(const MaterialParams& m, const Grid& g) {
  return 0.9 * LeapfrogIntegrator::stable_step_bound(m, g);
}

void append(std::vector<CheckResult>& to, const std::vector<CheckResult>& rows,
            const std::string& prefix = {}) {
  for (auto r : rows) {
    if (!prefix.empty()) r.name = prefix + "." + r.name;
    to.push_back(std::move(r));
  }
}

// Orders over n, 2n, 4n of the manufactured static residual.
std::vector<CheckResult> manufactured_checks(int n, double length, const MaterialParams& m,
                                             std::vector<OrderRow>* rows) {
  const std::vector<ResidualProbe> probe{
      {"manufactured_static",
       [m](const Grid& g, std::uint64_t) { return manufactured_static_defect(g, m); }}};
  const std::vector<int> grids{n, 2 * n, 4 * n};
  const auto table = convergence_table(probe, grids, length, 0);
  std::vector<CheckResult> out;
  for (const auto& r : table) {
    out.push_back(make_check("manufactured_order_" + std::to_string(r.n_coarse) + "_" +
                                 std::to_string(r.n_fine),
                             r.order, 1.9, Bound::at_least));
  }
  if (rows) *rows = table;
  return out;
}

std::vector<CheckResult> spin_wave_checks(std::span<const ConservedTotals> totals) {
  const DriftReport linear = noether_translation_check(totals);
  const DriftReport angular = noether_rotation_check(totals);
  return {
      make_check("linear_momentum_drift", linear.max_relative_drift, 1e-10),
      make_check("angular_momentum_drift", angular.max_relative_drift, 1e-4),
      make_check("angular_slope_consistent", angular.slope_consistent ? 1.0 : 0.0, 1.0,
                 Bound::at_least),
  };
}

std::vector<CheckResult> plane_wave_checks(const PlaneWaveRun& run, const MaterialParams& m,
                                           const Grid& g) {
  std::vector<CheckResult> out;
  const auto continuum = dispersion_branches(m, run.k);
  // The continuum oracle applies once a wavelength spans 32 points.
  const bool resolved = g.n() >= 32;
  for (int b = 0; b < 6; ++b) {
    const std::string tag = "branch_" + std::to_string(b);
    out.push_back(make_check(tag + "_vs_stencil_symbol",
                             std::abs(run.measured[b] / run.branches[b].omega - 1.0), 1e-2));
    if (resolved) {
      out.push_back(make_check(tag + "_vs_continuum_symbol",
                               std::abs(run.measured[b] / continuum[b].omega - 1.0), 1e-2));
    }
  }
  out.push_back(make_check("energy_drift", energy_drift(run.totals), 1e-4));
  out.push_back(make_check("linear_momentum_drift",
                           noether_translation_check(run.totals).max_relative_drift, 1e-10));
  return out;
}

std::function<void(const MicropolarState&, long)> snapshot_writer(
    const ScenarioConfig& c, const std::filesystem::path& out) {
  if (c.output_every <= 0) return {};
  return [&c, out](const MicropolarState& s, long step) {
    if (step % c.output_every != 0) return;
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_%06ld.vtk", step);
    write_text_file(out / name, vtk_snapshot(s, std::string(scenario_name(c.scenario)) +
                                                    " step " + std::to_string(step)));
  };
}

void write_summary(const std::filesystem::path& out, const ScenarioResult& r) {
  write_text_file(out / "summary.csv", summary_csv(r.checks));
}

}  // namespace

std::filesystem::path output_directory(const std::string& configured) {
  const char* env = std::getenv("COSSERAT_OUTPUT_DIR");
  if (env != nullptr && *env != '\0') return env;
  return configured;
}

std::vector<CheckResult> noether_suite(int n, double length, const MaterialParams& m,
                                       std::uint64_t seed) {
  const Grid g(n, length);
  const long steps = 1000;
  const double dt = auto_dt(m, g);
  std::vector<CheckResult> out;

  std::mt19937_64 rng(seed);
  MicropolarState s = random_state(rng, g, 0.05, kSmoothK);
  LeapfrogIntegrator free_run(m, g, BodySources(g), dt);
  const auto free_totals = record_run(free_run, s, steps);
  out.push_back(make_check("linear_momentum_drift",
                           noether_translation_check(free_totals).max_relative_drift, 1e-10));

  MicropolarState twist = twist_wave_state(g, 0.1);
  const auto twist_totals = record_run(free_run, twist, steps);
  const DriftReport spin = noether_rotation_check(twist_totals);
  out.push_back(make_check("angular_momentum_drift", spin.max_relative_drift, 1e-4));
  out.push_back(make_check("angular_slope_consistent", spin.slope_consistent ? 1.0 : 0.0, 1.0,
                           Bound::at_least));

  const Eigen::Vector3d f(0.3, -0.2, 0.1);
  MicropolarState forced = random_state(rng, g, 0.05, kSmoothK);
  LeapfrogIntegrator force_run(m, g, BodySources::uniform(g, f, Eigen::Vector3d::Zero()), dt);
  const double volume = std::pow(length, 3);
  const auto force_totals = record_run(force_run, forced, steps);
  out.push_back(make_check("force_impulse_rate",
                           noether_translation_check(force_totals, f * volume)
                               .relative_rate_error,
                           1e-8));

  // A uniform spin feels the lattice torque -2 kappa_c phi; without it the
  // spin grows exactly at c Vol.
  MaterialParams free_spin = m;
  free_spin.kappa_c = 0.0;
  const Eigen::Vector3d c(0.05, 0.1, -0.2);
  MicropolarState torqued = twist_wave_state(g, 0.1);
  LeapfrogIntegrator couple_run(free_spin, g,
                                BodySources::uniform(g, Eigen::Vector3d::Zero(), c),
                                auto_dt(free_spin, g));
  const auto couple_totals = record_run(couple_run, torqued, steps);
  out.push_back(make_check("couple_impulse_rate",
                           noether_rotation_check(couple_totals, c * volume)
                               .relative_rate_error,
                           1e-6));
  return out;
}

std::vector<CheckResult> solver_suite(int n, double length, const MaterialParams& m,
                                      std::uint64_t seed) {
  const Grid g(n, length);
  const double bound = LeapfrogIntegrator::stable_step_bound(m, g);
  std::vector<CheckResult> out;

  std::mt19937_64 rng(seed);
  const MicropolarState smooth = random_state(rng, g, 0.05, kSmoothK);
  auto drift_at = [&](double dt) {
    MicropolarState s = smooth;
    return energy_drift(record_run(LeapfrogIntegrator(m, g, BodySources(g), dt), s, 1000));
  };
  const double drift = drift_at(0.05 * bound);
  const double drift_half = drift_at(0.025 * bound);
  out.push_back(make_check("energy_drift", drift, 1e-4));
  out.push_back(make_check("energy_drift_dt_ratio_min", drift / drift_half, 3.5,
                           Bound::at_least));
  out.push_back(make_check("energy_drift_dt_ratio_max", drift / drift_half, 4.5));

  const LeapfrogIntegrator fast(m, g, BodySources(g), 0.9 * bound);
  out.push_back(make_check("time_reversal", time_reversal_error(fast, smooth, 1000), 1e-10));

  // Matched infinitesimal rigid motion: uniform phi with grad u = eps phi.
  MicropolarState rigid(g);
  const Eigen::Vector3d phi(0.02, -0.03, 0.05);
  for (int i = 0; i < 3; ++i) {
    std::fill(rigid.phi.c[i].begin(), rigid.phi.c[i].end(), phi(i));
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) rigid.mean_gradient(i, j) += levi_civita(i, j, k) * phi(k);
    }
  }
  MicropolarState moved = rigid;
  fast.run(moved, 100);
  double motion = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (Index p = 0; p < g.size(); ++p) {
      motion = std::max({motion, std::abs(moved.u.c[i][p] - rigid.u.c[i][p]),
                         std::abs(moved.phi.c[i][p] - rigid.phi.c[i][p]),
                         std::abs(moved.u_dot.c[i][p]), std::abs(moved.phi_dot.c[i][p])});
    }
  }
  out.push_back(make_check("rigid_motion_static", motion, 1e-12));

  double refused = 0.0;
  try {
    LeapfrogIntegrator(m, g, BodySources(g), 1.01 * bound);
  } catch (const Error&) {
    refused = 1.0;
  }
  out.push_back(make_check("cfl_guard_refuses", refused, 1.0, Bound::at_least));

  MicropolarState longrun = smooth;
  double finite = 1.0;
  try {
    fast.run(longrun, 4096);
  } catch (const Error&) {
    finite = 0.0;
  }
  out.push_back(make_check("cfl_run_4096_finite", finite, 1.0, Bound::at_least));
  return out;
}

ScenarioResult run_scenario(const ScenarioConfig& c, const std::filesystem::path& out) {
  write_text_file(out / "effective.cfg", serialize(c));
  ScenarioResult r;
  const Grid g(c.n, c.length);
  switch (c.scenario) {
    case Scenario::verify_exterior:
      r.checks = exterior_suite(c.n, c.length, c.seed);
      break;
    case Scenario::verify_kinematics:
      r.checks = kinematics_suite(c.n, c.length, c.seed);
      break;
    case Scenario::verify_variational:
      r.checks = variational_suite(c.n, c.length, c.material, c.seed);
      append(r.checks, noether_suite(c.n, c.length, c.material, c.seed));
      break;
    case Scenario::convergence: {
      const std::vector<int> grids{c.n, 2 * c.n, 4 * c.n};
      return run_convergence(c, grids, out);
    }
    case Scenario::manufactured_static: {
      std::vector<OrderRow> rows;
      r.checks = manufactured_checks(c.n, c.length, c.material, &rows);
      write_text_file(out / "orders.csv", orders_csv(rows));
      break;
    }
    case Scenario::plane_wave: {
      const double dt = c.dt.value_or(auto_dt(c.material, g));
      const PlaneWaveRun run =
          plane_wave_run(c.material, g, dt, c.steps, 0.01, snapshot_writer(c, out));
      write_text_file(out / "timeseries.csv", totals_csv(run.totals));
      r.checks = plane_wave_checks(run, c.material, g);
      break;
    }
    case Scenario::spin_wave: {
      const double dt = c.dt.value_or(auto_dt(c.material, g));
      LeapfrogIntegrator integrator(c.material, g, BodySources(g), dt);
      MicropolarState s = twist_wave_state(g, 0.1);
      const auto totals = record_run(integrator, s, c.steps, snapshot_writer(c, out));
      write_text_file(out / "timeseries.csv", totals_csv(totals));
      r.checks = spin_wave_checks(totals);
      break;
    }
  }
  write_summary(out, r);
  return r;
}

ScenarioResult run_convergence(const ScenarioConfig& c, std::span<const int> grids,
                               const std::filesystem::path& out, Stencil stencil) {
  if (grids.size() < 3) throw Error("convergence: at least three grids required");
  const auto probes = registered_residuals(c.material);
  const auto table = convergence_table(probes, grids, c.length, c.seed, stencil);
  ScenarioResult r;
  for (const auto& row : table) {
    r.checks.push_back(make_check(row.residual + "_" + std::to_string(row.n_coarse) + "_" +
                                      std::to_string(row.n_fine),
                                  row.order, 1.9, Bound::at_least));
  }
  write_text_file(out / "orders.csv", orders_csv(table));
  write_summary(out, r);
  return r;
}

ScenarioResult verify_all(int n, const std::filesystem::path& out) {
  if (n < 4) throw Error("verify-all: n must be ≥ 4");
  const double L = 1.0;
  const std::uint64_t seed = 1;
  const MaterialParams m = MaterialParams::desk_defaults();
  const Grid g(n, L);
  ScenarioResult r;
  append(r.checks, exterior_suite(n, L, seed), "exterior");
  append(r.checks, kinematics_suite(n, L, seed), "kinematics");
  append(r.checks, variational_suite(n, L, m, seed), "variational");
  append(r.checks, noether_suite(n, L, m, seed), "noether");
  append(r.checks, solver_suite(n, L, m, seed), "solver");
  append(r.checks, manufactured_checks(n, L, m, nullptr), "manufactured");

  MicropolarState twist = twist_wave_state(g, 0.1);
  const auto totals =
      record_run(LeapfrogIntegrator(m, g, BodySources(g), auto_dt(m, g)), twist, 1000);
  append(r.checks, spin_wave_checks(totals), "spin_wave");

  const PlaneWaveRun wave = plane_wave_run(m, g, auto_dt(m, g), 4096, 0.01);
  append(r.checks, plane_wave_checks(wave, m, g), "plane_wave");
  write_summary(out, r);
  return r;
}

}  // namespace cosserat
