#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cosserat/config.hpp"
#include "cosserat/verification.hpp"

namespace cosserat {

struct ScenarioResult {
  std::vector<CheckResult> checks;
  bool pass() const { return all_pass(checks); }
};

//! COSSERAT_OUTPUT_DIR if set and non-empty, otherwise `configured`.
std::filesystem::path output_directory(const std::string& configured);

/**
 * Noether checks on solver trajectories at grid n: force-free linear
 * momentum, couple-free angular momentum of a twist wave, and the impulse
 * slopes under a uniform body force and (with kappa_c = 0) a uniform body
 * couple. 1000 steps each.
 */
std::vector<CheckResult> noether_suite(int n, double length, const MaterialParams& material,
                                       std::uint64_t seed);

/**
 * Integrator properties: energy drift on random smooth data at dt = 0.05 of
 * the bound, its dt^2 scaling, time reversal, rigid-motion statics, the CFL
 * guard and a 4096-step run at 0.9 of the bound.
 */
std::vector<CheckResult> solver_suite(int n, double length, const MaterialParams& material,
                                      std::uint64_t seed);

//! Runs the configured scenario and writes its artifacts into `out`.
ScenarioResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out);

/**
 * Orders of every registered residual over `grids` (>= 3 values, strictly
 * increasing, each >= 4); writes orders.csv and summary.csv.
 */
ScenarioResult run_convergence(const ScenarioConfig& config, std::span<const int> grids,
                               const std::filesystem::path& out,
                               Stencil stencil = Stencil::central);

//! Every suite at grid n with desk defaults; rows are prefixed by group.
ScenarioResult verify_all(int n, const std::filesystem::path& out);

}  // namespace cosserat
