#include "cosserat/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <type_traits>
#include <utility>

namespace cosserat {

namespace {

constexpr std::array<std::pair<Scenario, std::string_view>, 7> kScenarios{{
    {Scenario::verify_exterior, "verify-exterior"},
    {Scenario::verify_kinematics, "verify-kinematics"},
    {Scenario::verify_variational, "verify-variational"},
    {Scenario::convergence, "convergence"},
    {Scenario::plane_wave, "plane-wave"},
    {Scenario::spin_wave, "spin-wave"},
    {Scenario::manufactured_static, "manufactured-static"},
}};

struct MaterialKey {
  std::string_view key;
  double MaterialParams::*field;
};

constexpr std::array<MaterialKey, 8> kMaterialKeys{{
    {"material.rho", &MaterialParams::rho},
    {"material.J", &MaterialParams::J},
    {"material.lambda", &MaterialParams::lambda},
    {"material.mu_e", &MaterialParams::mu_e},
    {"material.kappa_c", &MaterialParams::kappa_c},
    {"material.alpha_t", &MaterialParams::alpha_t},
    {"material.beta_t", &MaterialParams::beta_t},
    {"material.gamma_t", &MaterialParams::gamma_t},
}};

constexpr std::array<std::string_view, 3> kRunKeys{"run.dt", "run.steps", "run.outputEvery"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) return std::nullopt;
  }
  return value;
}

bool is_material_key(std::string_view key) {
  for (const auto& m : kMaterialKeys) {
    if (m.key == key) return true;
  }
  return false;
}

bool is_run_key(std::string_view key) {
  for (auto k : kRunKeys) {
    if (k == key) return true;
  }
  return false;
}

bool is_known_key(std::string_view key) {
  return key == "scenario" || key == "grid.n" || key == "grid.L" || key == "seed" ||
         key == "output" || is_material_key(key) || is_run_key(key);
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

}  // namespace

std::string_view scenario_name(Scenario s) {
  for (const auto& [id, name] : kScenarios) {
    if (id == s) return name;
  }
  return "unknown";
}

std::optional<Scenario> scenario_from_name(std::string_view name) {
  for (const auto& [id, n] : kScenarios) {
    if (n == name) return id;
  }
  return std::nullopt;
}

bool uses_material(Scenario s) {
  return s != Scenario::verify_exterior && s != Scenario::verify_kinematics;
}

bool uses_run(Scenario s) { return s == Scenario::plane_wave || s == Scenario::spin_wave; }

bool uses_seed(Scenario s) {
  return s == Scenario::verify_exterior || s == Scenario::verify_kinematics ||
         s == Scenario::verify_variational || s == Scenario::convergence;
}

long default_steps(Scenario s) {
  switch (s) {
    case Scenario::plane_wave:
      return 4096;
    case Scenario::spin_wave:
      return 1000;
    default:
      return 0;
  }
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error([&] {
        std::string msg = "invalid config:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

ScenarioConfig parse_config(std::string_view text) {
  std::vector<std::string> problems;
  std::map<std::string, std::pair<std::string, int>, std::less<>> entries;

  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      problems.push_back("line " + std::to_string(line_no) + ": empty key or value");
      continue;
    }
    if (!is_known_key(key)) {
      problems.push_back("unknown key " + key);
      continue;
    }
    if (!entries.emplace(key, std::make_pair(value, line_no)).second) {
      problems.push_back("duplicate key " + key);
    }
  }

  ScenarioConfig cfg;
  std::optional<Scenario> scenario;
  if (auto it = entries.find("scenario"); it == entries.end()) {
    problems.push_back("scenario is required");
  } else {
    scenario = scenario_from_name(it->second.first);
    if (!scenario) problems.push_back("unknown scenario " + it->second.first);
  }
  if (scenario) {
    cfg.scenario = *scenario;
    cfg.steps = default_steps(*scenario);
    for (const auto& [key, entry] : entries) {
      const bool relevant = (is_material_key(key) && uses_material(*scenario)) ||
                            (is_run_key(key) && uses_run(*scenario)) ||
                            (key == "seed" && uses_seed(*scenario)) ||
                            (!is_material_key(key) && !is_run_key(key) && key != "seed");
      if (!relevant) {
        problems.push_back("key " + key + " is not used by scenario " +
                           std::string(scenario_name(*scenario)));
      }
    }
  }

  auto value_of = [&](std::string_view key) -> const std::string* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second.first;
  };

  if (const auto* v = value_of("grid.n")) {
    const auto n = parse_number<int>(*v);
    if (!n) {
      problems.push_back("grid.n must be an integer");
    } else if (*n < 4) {
      problems.push_back("grid.n must be ≥ 4");
    } else {
      cfg.n = *n;
    }
  }
  if (const auto* v = value_of("grid.L")) {
    const auto L = parse_number<double>(*v);
    if (!L || *L <= 0.0) {
      problems.push_back("grid.L must be a positive number");
    } else {
      cfg.length = *L;
    }
  }
  if (const auto* v = value_of("seed")) {
    const auto seed = parse_number<std::uint64_t>(*v);
    if (!seed) {
      problems.push_back("seed must be a non-negative integer");
    } else {
      cfg.seed = *seed;
    }
  }
  if (const auto* v = value_of("output")) cfg.output = *v;

  bool material_ok = true;
  for (const auto& m : kMaterialKeys) {
    if (const auto* v = value_of(m.key)) {
      const auto x = parse_number<double>(*v);
      if (!x) {
        problems.push_back(std::string(m.key) + " must be a finite number");
        material_ok = false;
      } else {
        cfg.material.*m.field = *x;
      }
    }
  }
  if (material_ok && (!scenario || uses_material(*scenario))) {
    try {
      cfg.material.validate();
    } catch (const Error& e) {
      problems.push_back(e.what());
    }
  }

  if (const auto* v = value_of("run.dt"); v && *v != "auto") {
    const auto dt = parse_number<double>(*v);
    if (!dt || *dt <= 0.0) {
      problems.push_back("run.dt must be a positive number or auto");
    } else {
      cfg.dt = *dt;
    }
  }
  if (const auto* v = value_of("run.steps")) {
    const auto steps = parse_number<long>(*v);
    if (!steps || *steps < 1) {
      problems.push_back("run.steps must be a positive integer");
    } else {
      cfg.steps = *steps;
    }
  }
  if (const auto* v = value_of("run.outputEvery")) {
    const auto every = parse_number<long>(*v);
    if (!every || *every < 1) {
      problems.push_back("run.outputEvery must be a positive integer");
    } else {
      cfg.output_every = *every;
    }
  }

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

std::string serialize(const ScenarioConfig& c) {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  line("scenario", std::string(scenario_name(c.scenario)));
  line("grid.n", std::to_string(c.n));
  line("grid.L", format_double(c.length));
  if (uses_material(c.scenario)) {
    for (const auto& m : kMaterialKeys) line(m.key, format_double(c.material.*m.field));
  }
  if (uses_run(c.scenario)) {
    line("run.dt", c.dt ? format_double(*c.dt) : "auto");
    line("run.steps", std::to_string(c.steps));
    if (c.output_every > 0) line("run.outputEvery", std::to_string(c.output_every));
  }
  if (uses_seed(c.scenario)) line("seed", std::to_string(c.seed));
  line("output", c.output);
  return out;
}

}  // namespace cosserat
