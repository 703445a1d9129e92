// Scenario-driven command line for the chiral ring simulator.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical
// non-convergence, 4 I/O failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chiralq/runner.hpp"
#include "chiralq/scenario.hpp"
#include "chiralq/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerics = 3;
constexpr int kExitIo = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw chiralq::IoError("cannot read config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chiralq: chiral ring-qubit simulator"};
  app.set_version_flag("--version", std::string(chiralq::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int jobs = 1;
  long seed = 0;
  bool seed_set = false;

  auto* simulate = app.add_subcommand("simulate", "run a scenario config file");
  simulate->add_option("config", config_path, "path to the scenario config")->required();
  simulate->add_option("--out", out_dir, "output directory (default: current)");
  simulate->add_option("--jobs", jobs, "parallel workers for grid scans")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "override the scenario seed")
      ->each([&seed_set](const std::string&) { seed_set = true; });

  std::string kind;
  auto* describe = app.add_subcommand("describe", "print the schema of a scenario kind");
  describe->add_option("kind", kind, "scenario kind name")->required();

  auto* list = app.add_subcommand("list", "list the supported scenario kinds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& name : chiralq::list_scenarios()) std::cout << name << "\n";
      return kExitOk;
    }
    if (describe->parsed()) {
      std::cout << chiralq::describe(kind);
      return kExitOk;
    }

    const std::string text = read_file(config_path);
    chiralq::Scenario scenario = chiralq::parse_config(text);
    chiralq::RunOptions options;
    options.out_dir = out_dir;
    options.jobs = jobs;
    if (seed_set) options.seed_override = seed;
    chiralq::RunManifest manifest = chiralq::run_scenario(scenario, options);
    return manifest.converged ? kExitOk : kExitNumerics;
  } catch (const chiralq::ConfigException& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const chiralq::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerics;
  }
}
