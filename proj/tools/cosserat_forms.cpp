// cosserat-forms: scenario runner and verification driver.
//
//   cosserat-forms run <config>
//   cosserat-forms verify-all [--n N] [--output DIR]
//   cosserat-forms convergence <config> [--grids 16,32,64]
//
// Exit status: 0 all checks pass, 1 a check failed or the input was
// rejected, 2 file system failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cosserat/config.hpp"
#include "cosserat/output.hpp"
#include "cosserat/scenarios.hpp"

namespace {

using namespace cosserat;

#ifdef COSSERAT_FIRST_ORDER_CONTROL
constexpr Stencil kStudyStencil = Stencil::forward;
#else
constexpr Stencil kStudyStencil = Stencil::central;
#endif

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

int report(const ScenarioResult& r, const std::filesystem::path& out, double seconds) {
  int failed = 0;
  for (const auto& c : r.checks) {
    if (c.pass) continue;
    ++failed;
    std::fprintf(stderr, "FAIL %s measured %s tolerance %s\n", c.name.c_str(),
                 format_value(c.measured, c.bound == Bound::at_least).c_str(),
                 format_value(c.tolerance).c_str());
  }
  std::printf("%zu checks, %d failed, %.1f s, summary in %s\n", r.checks.size(), failed,
              seconds, (out / "summary.csv").string().c_str());
  return failed == 0 ? 0 : 1;
}

std::vector<int> parse_grids(const std::string& text) {
  std::vector<int> grids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error("--grids: bad entry '" + item + "'");
    grids.push_back(n);
  }
  if (grids.size() < 3) throw Error("--grids: need at least three values");
  for (std::size_t i = 0; i < grids.size(); ++i) {
    if (grids[i] < 4) throw Error("--grids: every n must be ≥ 4");
    if (i > 0 && grids[i] <= grids[i - 1]) throw Error("--grids: must be strictly increasing");
  }
  return grids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential-form Cosserat elasticity: verification and simulation"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run the scenario described by a config file");
  run->add_option("config", config_path, "key = value config file")->required();

  int verify_n = 16;
  std::string verify_output = "verify-all";
  auto* verify = app.add_subcommand("verify-all", "run every verification suite");
  verify->add_option("--n", verify_n, "grid points per axis")->capture_default_str();
  verify->add_option("--output", verify_output, "output directory")->capture_default_str();

  std::string grids_text = "16,32,64";
  auto* conv = app.add_subcommand("convergence", "observed orders of every residual");
  conv->add_option("config", config_path, "key = value config file")->required();
  conv->add_option("--grids", grids_text, "comma-separated grid sizes")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    if (*run) {
      const ScenarioConfig cfg = load_config(config_path);
      const auto out = output_directory(cfg.output);
      const ScenarioResult r = run_scenario(cfg, out);
      return report(r, out, elapsed());
    }
    if (*verify) {
      const auto out = output_directory(verify_output);
      const ScenarioResult r = verify_all(verify_n, out);
      return report(r, out, elapsed());
    }
    if (*conv) {
      const ScenarioConfig cfg = load_config(config_path);
      const std::vector<int> grids = parse_grids(grids_text);
      const auto out = output_directory(cfg.output);
      const ScenarioResult r = run_convergence(cfg, grids, out, kStudyStencil);
      return report(r, out, elapsed());
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
