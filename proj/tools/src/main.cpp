// Copyright 2026 The demon-fridge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// main.cpp — demon-fridge command-line entry point

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "demon_cli/commands.hpp"
#include "demon_cli/config.hpp"

int main(int argc, char** argv) {
  using namespace demon::cli;
  CLI::App app{"Quantum-trajectory simulator for a two-reservoir memory"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"steady", "Steady state and its truncation diagnostics (JSON)"},
      {"ft-check", "Exact fluctuation-theorem checks plus a Monte Carlo estimate (JSON)"},
      {"sweep", "Squeezing enhancements over a parameter grid (CSV)"},
      {"trajectories", "Per-trajectory entropy ledger (CSV) and ensemble summary (JSON)"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "Override a configuration key (key=value)");
    sub->add_option("--out", out, "Output path (default: output_path from the config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  ExperimentConfig config;
  try {
    auto json = load_config_file(config_path);
    for (const std::string& o : overrides) apply_override(json, o);
    config = parse_config(json);
  } catch (const ConfigError& e) {
    std::cerr << "ConfigError: " << e.what() << "\n";
    return kConfigError;
  }
  if (out.empty()) out = config.output_path;
  if (out.empty()) {
    std::cerr << "ConfigError: no output path (--out or output_path)\n";
    return kConfigError;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  return run_command(name, config, out, std::cerr, std::cerr);
}
