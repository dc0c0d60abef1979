#pragma once

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "sps/cli/config.hpp"
#include "sps/cli/runs.hpp"
#include "sps/errors.hpp"

namespace sps::cli {

/// Entry point of the `sps` tool; returns the process exit code.
inline int main(int argc, char** argv) {
  CLI::App app{"Ground states and dynamics of the spherically symmetric Schroedinger-Poisson-Slater system"};
  std::string mode, config_path, out_dir, prefix;
  std::vector<std::string> overrides;
  app.add_option("--mode", mode, "groundstate | evolve | sweep")
      ->check(CLI::IsMember({"groundstate", "evolve", "sweep"}));
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--set", overrides, "override one setting, key=value (repeatable)")->allow_extra_args(false);
  app.add_option("--out-dir", out_dir, "directory for output files");
  app.add_option("--prefix", prefix, "file name prefix for outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  if (!mode.empty()) overrides.push_back("mode=" + mode);
  if (!out_dir.empty()) overrides.push_back("out_dir=" + out_dir);
  if (!prefix.empty()) overrides.push_back("prefix=" + prefix);

  try {
    const RunConfig cfg = parse_config(config_path, overrides);
    return run(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return exit_config;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver did not converge: " << e.what() << '\n';
    return exit_unconverged;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_numerical;
  }
}

}  // namespace sps::cli
