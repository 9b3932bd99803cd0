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

// config.hpp — experiment configuration: JSON file plus key=value overrides

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "demon/dynamics.hpp"
#include "demon/reservoir.hpp"

namespace demon::cli {

// Malformed or out-of-range configuration. Maps to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class InitialKind { vacuum, maximally_mixed, gibbs, steady };

struct InitialState {
  InitialKind kind = InitialKind::steady;
  int levels = 0;    // maximally_mixed
  double mu0 = 0.0;  // gibbs
};

struct SweepConfig {
  std::string parameter;  // r1 | r2 | beta1 | beta2
  std::vector<double> values;
};

struct ExperimentConfig {
  Mode mode = Mode::thermal;
  ReservoirSpec reservoir;
  MomentConvention convention;
  int n_max = 0;  // 0: adequacy rule from the steady state
  double dt = 0.01;
  double tau = 2.0;
  long steps = 200;  // tau / dt
  std::size_t ensemble_size = 1000;
  std::uint64_t master_seed = 1;
  unsigned workers = 0;  // 0: DEMON_FRIDGE_WORKERS or the hardware count
  Normalization normalization = Normalization::exact;
  InitialState initial_state;
  std::string output_path;
  bool fault_injection = false;
  std::optional<double> tolerance;  // ft-check; default 1e-10 thermal, 1e-8 squeezed
  std::optional<SweepConfig> sweep;
};

inline constexpr const char* kWorkersEnv = "DEMON_FRIDGE_WORKERS";

nlohmann::ordered_json load_config_file(const std::filesystem::path& path);

// "key=value" with a dotted key path; the value is parsed as JSON when
// possible and taken as a string otherwise.
void apply_override(nlohmann::ordered_json& config, const std::string& assignment);

// Validates and resolves defaults (steps from tau/dt, sweep presets).
ExperimentConfig parse_config(const nlohmann::ordered_json& config);

// The configured count, else DEMON_FRIDGE_WORKERS, else the hardware count.
unsigned resolve_workers(const ExperimentConfig& config);

// The configured n_max, else adequate_n_max for the steady state of the
// configured mode. Throws DegenerateError when mu_eff vanishes.
int resolve_n_max(const ExperimentConfig& config);

std::string to_string(const InitialState& s);

}  // namespace demon::cli
