#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cosserat/error.hpp"
#include "cosserat/material.hpp"

namespace cosserat {

enum class Scenario {
  verify_exterior,
  verify_kinematics,
  verify_variational,
  convergence,
  plane_wave,
  spin_wave,
  manufactured_static,
};

std::string_view scenario_name(Scenario s);
std::optional<Scenario> scenario_from_name(std::string_view name);

//! Which optional key groups a scenario reads. Keys outside these groups
//! are rejected for that scenario.
bool uses_material(Scenario s);
bool uses_run(Scenario s);
bool uses_seed(Scenario s);

/**
 * Validated scenario configuration. `dt` empty means "auto" (0.9 of the
 * stability bound); `output_every` 0 means no snapshots.
 */
struct ScenarioConfig {
  Scenario scenario = Scenario::verify_exterior;
  int n = 32;
  double length = 1.0;
  MaterialParams material;
  std::optional<double> dt;
  long steps = 0;
  long output_every = 0;
  std::uint64_t seed = 1;
  std::string output = "out";
};

//! Default step count of the time scenarios (0 for the others).
long default_steps(Scenario s);

//! Every violation found in a config, one per line of what().
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/**
 * Parses `key = value` lines with dotted keys; '#' starts a comment. Keys:
 *
 *   scenario, grid.n, grid.L, seed, output,
 *   material.{rho, J, lambda, mu_e, kappa_c, alpha_t, beta_t, gamma_t},
 *   run.dt (number or auto), run.steps, run.outputEvery.
 *
 * Unknown, duplicate or scenario-irrelevant keys and invalid values are
 * collected and thrown together as a ConfigError.
 */
ScenarioConfig parse_config(std::string_view text);

//! Canonical text: every key the scenario reads, in a fixed order, with
//! shortest round-trip numbers. parse_config(serialize(c)) == c.
std::string serialize(const ScenarioConfig& config);

}  // namespace cosserat
