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

// commands.hpp — the four front-end commands

#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "demon_cli/config.hpp"

namespace demon::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  kConfigError = 2,
  kVerificationFailure = 3,
};

// JSON report: mu or mu*, Z, <N>, S(pi), fixed-point residual, truncation.
int cmd_steady(const ExperimentConfig& config, const std::filesystem::path& out,
               std::ostream& log);

// Oracle enumeration (detailed and integral FT, na/ad split) plus a Monte
// Carlo integral-FT estimate. Exit 3 when any oracle residual exceeds the
// tolerance.
int cmd_ft_check(const ExperimentConfig& config, const std::filesystem::path& out,
                 std::ostream& log);

// One CSV row per grid point of the configured sweep.
int cmd_sweep(const ExperimentConfig& config, const std::filesystem::path& out,
              std::ostream& log);

// Per-trajectory CSV at `out` and the ensemble summary next to it (see
// summary_path).
int cmd_trajectories(const ExperimentConfig& config, const std::filesystem::path& out,
                     std::ostream& log);

// out.csv -> out.json; anything else gets ".summary.json" appended.
std::filesystem::path summary_path(const std::filesystem::path& out);

// Dispatches by name and maps exceptions to exit codes, writing the message
// to `err`.
int run_command(const std::string& name, const ExperimentConfig& config,
                const std::filesystem::path& out, std::ostream& log, std::ostream& err);

}  // namespace demon::cli
