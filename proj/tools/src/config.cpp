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

#include "demon_cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "demon/errors.hpp"
#include "demon/fock.hpp"

namespace demon::cli {

using nlohmann::ordered_json;

namespace {

const std::set<std::string> kKnownKeys = {
    "mode",     "beta1",          "beta2",         "omega",         "gamma",
    "r1",       "r2",             "theta",         "n_max",         "dt",
    "tau",      "steps",          "ensemble_size", "master_seed",   "workers",
    "normalization", "initial_state", "output_path", "fault_injection", "tolerance",
    "sweep",    "moment_convention"};

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

double number(const ordered_json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) fail(std::string(key) + " must be a number");
  return v.get<double>();
}

double positive(const ordered_json& j, const char* key) {
  const double x = number(j, key);
  if (!(x > 0.0) || !std::isfinite(x)) fail(std::string(key) + " must be positive");
  return x;
}

long long integer(const ordered_json& j, const char* key, long long min) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) fail(std::string(key) + " must be an integer");
  const long long x = v.get<long long>();
  if (x < min) fail(std::string(key) + " must be >= " + std::to_string(min));
  return x;
}

std::string string(const ordered_json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_string()) fail(std::string(key) + " must be a string");
  return v.get<std::string>();
}

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double x = count == 1 ? a : a + (b - a) * i / (count - 1);
    // Snap to the intended decimal grid point.
    out.push_back(std::round(x * 1e12) / 1e12);
  }
  return out;
}

InitialState parse_initial(const ordered_json& v) {
  InitialState s;
  std::string name;
  std::string arg;
  if (v.is_string()) {
    name = v.get<std::string>();
    if (const auto colon = name.find(':'); colon != std::string::npos) {
      arg = name.substr(colon + 1);
      name = name.substr(0, colon);
    }
  } else if (v.is_object() && v.size() == 1) {
    name = v.begin().key();
    arg = v.begin().value().dump();
  } else {
    fail("initial_state must be a string or a one-key object");
  }
  auto numeric_arg = [&]() {
    try {
      std::size_t used = 0;
      const double x = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return x;
    } catch (const std::exception&) {
      fail("initial_state " + name + " needs a numeric argument");
    }
  };
  if (name == "vacuum") {
    s.kind = InitialKind::vacuum;
  } else if (name == "steady") {
    s.kind = InitialKind::steady;
  } else if (name == "maximally_mixed") {
    s.kind = InitialKind::maximally_mixed;
    const double k = numeric_arg();
    if (k < 1 || k != std::floor(k)) fail("maximally_mixed needs a positive integer level count");
    s.levels = static_cast<int>(k);
  } else if (name == "gibbs") {
    s.kind = InitialKind::gibbs;
    s.mu0 = numeric_arg();
    if (!(s.mu0 > 0.0)) fail("gibbs needs mu0 > 0");
  } else {
    fail("unknown initial_state '" + name + "'");
  }
  return s;
}

SweepConfig parse_sweep(const ordered_json& v, ordered_json& effective) {
  ordered_json spec = v.is_string() ? ordered_json{{"preset", v}} : v;
  if (!spec.is_object()) fail("sweep must be a preset name or an object");
  SweepConfig s;
  if (spec.contains("preset")) {
    const std::string preset = string(spec, "preset");
    if (preset == "panel_a") {
      effective["r1"] = 0.0;
      s.parameter = "r2";
      s.values = linspace(0.0, 1.0, 21);
    } else if (preset == "panel_b") {
      effective["r2"] = 0.5;
      s.parameter = "r1";
      s.values = linspace(0.0, 0.6, 13);
    } else {
      fail("unknown sweep preset '" + preset + "'");
    }
  }
  if (spec.contains("parameter")) s.parameter = string(spec, "parameter");
  if (spec.contains("values")) {
    s.values.clear();
    for (const auto& x : spec.at("values")) {
      if (!x.is_number()) fail("sweep values must be numbers");
      s.values.push_back(x.get<double>());
    }
  } else if (spec.contains("start") || spec.contains("stop") || spec.contains("count")) {
    s.values = linspace(number(spec, "start"), number(spec, "stop"),
                        static_cast<int>(integer(spec, "count", 1)));
  }
  static const std::set<std::string> params = {"r1", "r2", "beta1", "beta2"};
  if (!params.count(s.parameter)) fail("sweep parameter must be one of r1, r2, beta1, beta2");
  if (s.values.empty()) fail("sweep grid is empty");
  return s;
}

}  // namespace

ordered_json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(path.string() + ": " + e.what());
  }
}

void apply_override(ordered_json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) fail("--set expects key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  ordered_json value;
  try {
    value = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    value = text;
  }
  ordered_json* node = &config;
  std::stringstream path(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(path, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    ordered_json& next = (*node)[parts[i]];
    if (!next.is_object()) next = ordered_json::object();
    node = &next;
  }
  (*node)[parts.back()] = value;
}

ExperimentConfig parse_config(const ordered_json& input) {
  if (!input.is_object()) fail("top level must be an object");
  for (const auto& [key, _] : input.items()) {
    if (!kKnownKeys.count(key)) fail("unknown key '" + key + "'");
  }
  ordered_json j = input;
  ExperimentConfig c;
  if (j.contains("sweep")) c.sweep = parse_sweep(j.at("sweep"), j);

  if (j.contains("mode")) {
    const std::string m = string(j, "mode");
    if (m == "thermal") c.mode = Mode::thermal;
    else if (m == "squeezed") c.mode = Mode::squeezed;
    else fail("mode must be thermal or squeezed");
  }
  ReservoirSpec& r = c.reservoir;
  if (j.contains("beta1")) r.beta1 = positive(j, "beta1");
  if (j.contains("beta2")) r.beta2 = positive(j, "beta2");
  if (j.contains("omega")) r.omega = positive(j, "omega");
  if (j.contains("gamma")) r.gamma = positive(j, "gamma");
  if (j.contains("r1")) r.r1 = number(j, "r1");
  if (j.contains("r2")) r.r2 = number(j, "r2");
  if (j.contains("theta")) r.theta = number(j, "theta");
  if (r.r1 < 0.0 || r.r2 < 0.0) fail("squeezing amplitudes must be >= 0");
  if (j.contains("moment_convention")) {
    const std::string m = string(j, "moment_convention");
    if (m == "standard") c.convention.linear_sinh_shift = false;
    else if (m == "linear_sinh") c.convention.linear_sinh_shift = true;
    else fail("moment_convention must be standard or linear_sinh");
  }

  if (j.contains("n_max")) c.n_max = static_cast<int>(integer(j, "n_max", 1));
  if (j.contains("dt")) c.dt = positive(j, "dt");
  const bool has_tau = j.contains("tau");
  const bool has_steps = j.contains("steps");
  if (has_tau) c.tau = positive(j, "tau");
  if (has_steps) c.steps = static_cast<long>(integer(j, "steps", 1));
  if (has_steps && !has_tau) {
    c.tau = static_cast<double>(c.steps) * c.dt;
  } else {
    const double ratio = c.tau / c.dt;
    const long rounded = std::lround(ratio);
    if (rounded < 1 || std::abs(ratio - static_cast<double>(rounded)) > 1e-9 * ratio) {
      fail("tau / dt must be a positive integer");
    }
    if (has_steps && rounded != c.steps) fail("steps disagrees with tau / dt");
    c.steps = rounded;
  }

  if (j.contains("ensemble_size")) {
    c.ensemble_size = static_cast<std::size_t>(integer(j, "ensemble_size", 1));
  }
  if (j.contains("master_seed")) {
    const auto& v = j.at("master_seed");
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                   v.get<long long>() < 0)) {
      fail("master_seed must be a non-negative integer");
    }
    c.master_seed = v.get<std::uint64_t>();
  }
  if (j.contains("workers")) c.workers = static_cast<unsigned>(integer(j, "workers", 0));
  if (j.contains("normalization")) {
    const std::string n = string(j, "normalization");
    if (n == "exact") c.normalization = Normalization::exact;
    else if (n == "first_order") c.normalization = Normalization::first_order;
    else fail("normalization must be exact or first_order");
  }
  if (j.contains("initial_state")) c.initial_state = parse_initial(j.at("initial_state"));
  if (j.contains("output_path")) c.output_path = string(j, "output_path");
  if (j.contains("fault_injection")) {
    if (!j.at("fault_injection").is_boolean()) fail("fault_injection must be a boolean");
    c.fault_injection = j.at("fault_injection").get<bool>();
  }
  if (j.contains("tolerance")) c.tolerance = positive(j, "tolerance");
  return c;
}

unsigned resolve_workers(const ExperimentConfig& config) {
  if (config.workers > 0) return config.workers;
  if (const char* env = std::getenv(kWorkersEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) fail(std::string(kWorkersEnv) + " must be a positive integer");
    return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int resolve_n_max(const ExperimentConfig& config) {
  if (config.n_max > 0) return config.n_max;
  const DerivedBath bath = derive_bath(config.reservoir, config.mode, config.convention);
  if (!(bath.mu_eff > 1e-12)) {
    std::ostringstream err;
    err << "mu_eff = " << bath.mu_eff
        << " <= 0: no normalizable steady state on the semi-infinite ladder";
    throw DegenerateError(err.str());
  }
  return adequate_n_max(1.0 / std::expm1(bath.mu_eff), bath.r);
}

std::string to_string(const InitialState& s) {
  switch (s.kind) {
    case InitialKind::vacuum:
      return "vacuum";
    case InitialKind::steady:
      return "steady";
    case InitialKind::maximally_mixed:
      return "maximally_mixed:" + std::to_string(s.levels);
    case InitialKind::gibbs: {
      std::ostringstream o;
      o.precision(17);
      o << "gibbs:" << s.mu0;
      return o.str();
    }
  }
  return "unknown";
}

}  // namespace demon::cli
