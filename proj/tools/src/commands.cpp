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

#include "demon_cli/commands.hpp"

#include <cmath>

#include "demon/analysis.hpp"
#include "demon/errors.hpp"
#include "demon/fock.hpp"
#include "demon/oracle.hpp"
#include "demon/trajectory.hpp"
#include "demon_cli/report.hpp"

namespace demon::cli {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string to_string(Normalization n) {
  return n == Normalization::exact ? "exact" : "first_order";
}

Matrix initial_matrix(const ExperimentConfig& config, const JumpModel& model) {
  const InitialState& s = config.initial_state;
  switch (s.kind) {
    case InitialKind::vacuum:
      return vacuum_state(model.space).matrix();
    case InitialKind::maximally_mixed:
      if (s.levels > model.space.dim()) {
        throw ConfigError("config: maximally_mixed levels exceed the space dimension");
      }
      return maximally_mixed_state(model.space, s.levels).matrix();
    case InitialKind::gibbs:
      return gibbs_state(model.space, s.mu0).matrix();
    case InitialKind::steady: {
      SteadyStateOptions opts;
      opts.cross_validate = false;
      return steady_state(model, opts).rho.matrix();
    }
  }
  throw ConfigError("config: unknown initial state");
}

std::optional<double> heat_quantum(const ExperimentConfig& config) {
  if (config.mode == Mode::thermal) return config.reservoir.omega;
  return std::nullopt;
}

ordered_json reservoir_json(const ExperimentConfig& c, const DerivedBath& bath) {
  ordered_json j;
  j["mode"] = to_string(c.mode);
  j["beta1"] = c.reservoir.beta1;
  j["beta2"] = c.reservoir.beta2;
  j["omega"] = c.reservoir.omega;
  j["gamma"] = c.reservoir.gamma;
  if (c.mode == Mode::squeezed) {
    j["r1"] = c.reservoir.r1;
    j["r2"] = c.reservoir.r2;
    j["theta"] = c.reservoir.theta;
    j["N1"] = bath.N1;
    j["N2"] = bath.N2;
    j["M1"] = bath.M1;
    j["M2"] = bath.M2;
    j["r"] = bath.r;
    j["theta_eff"] = bath.theta;
  }
  j["gamma_left"] = bath.gamma_left;
  j["gamma_right"] = bath.gamma_right;
  j["mu"] = mu(c.reservoir);
  if (c.mode == Mode::squeezed) j["mu_star"] = bath.mu_eff;
  j["mu_eff"] = bath.mu_eff;
  return j;
}

ordered_json estimate_json(const MeanEstimate& m) {
  return ordered_json{{"mean", m.mean}, {"standard_error", m.standard_error}};
}

ordered_json summary_json(const EnsembleSummary& s) {
  ordered_json j;
  j["count"] = s.count;
  j["s_tot"] = estimate_json(s.s_tot);
  j["s_na"] = estimate_json(s.s_na);
  j["s_ad"] = estimate_json(s.s_ad);
  j["s_sys"] = estimate_json(s.delta_s_sys);
  j["s_env"] = estimate_json(s.sigma_env);
  auto ift = [](const MeanEstimate& m) {
    const double dev = std::abs(m.mean - 1.0);
    ordered_json o{{"mean", m.mean}, {"jackknife_se", m.standard_error}};
    o["deviation_in_se"] = m.standard_error > 0.0 ? dev / m.standard_error
                                                  : (dev == 0.0 ? 0.0 : INFINITY);
    return o;
  };
  j["ift_tot"] = ift(s.ift_tot);
  j["ift_na"] = ift(s.ift_na);
  ordered_json hl = ordered_json::object();
  for (const auto& [k, n] : s.n_left_histogram) hl[std::to_string(k)] = n;
  ordered_json hr = ordered_json::object();
  for (const auto& [k, n] : s.n_right_histogram) hr[std::to_string(k)] = n;
  j["n_left_histogram"] = hl;
  j["n_right_histogram"] = hr;
  return j;
}

double top_population(const Matrix& rho) {
  const Index d = rho.rows();
  const Index top = std::max<Index>(1, (d + 9) / 10);
  double p = 0.0;
  for (Index n = d - top; n < d; ++n) p += rho(n, n).real();
  return p;
}

double max_offdiagonal(const Matrix& rho) {
  double m = 0.0;
  for (Index i = 0; i < rho.rows(); ++i) {
    for (Index k = 0; k < rho.cols(); ++k) {
      if (i != k) m = std::max(m, std::abs(rho(i, k)));
    }
  }
  return m;
}

}  // namespace

fs::path summary_path(const fs::path& out) {
  if (out.extension() == ".csv") {
    fs::path p = out;
    return p.replace_extension(".json");
  }
  return fs::path(out.string() + ".summary.json");
}

int cmd_steady(const ExperimentConfig& config, const fs::path& out, std::ostream& log) {
  const int n_max = resolve_n_max(config);
  const FockSpace space(n_max);
  const JumpModel model = make_jump_model(config.reservoir, space, config.mode, config.convention);
  SteadyStateOptions opts;
  const SteadyState ss = steady_state(model, opts);
  const Matrix& pi = ss.rho.matrix();
  const Matrix n_op = number_operator(space).matrix;

  const double mu_eff = ss.mu_eff;
  const double n_eff = 1.0 / std::expm1(mu_eff);
  const double s = std::sinh(model.bath.r);
  const double mean_n = std::cosh(2.0 * model.bath.r) * n_eff + s * s;
  const double top = top_population(pi);

  ordered_json j;
  j["command"] = "steady";
  j["reservoir"] = reservoir_json(config, model.bath);
  j["n_max"] = n_max;
  j["Z"] = ss.Z;
  j["mean_N"] = mean_n;
  j["mean_N_truncated"] = (n_op * pi).trace().real();
  j["entropy"] = thermal_entropy(mu_eff);
  j["entropy_truncated"] = von_neumann_entropy(pi);
  j["fixed_point_residual"] = ss.residual;
  if (ss.numeric_trace_distance) {
    j["numeric_trace_distance"] = *ss.numeric_trace_distance;
  } else {
    j["numeric_trace_distance"] = nullptr;
  }
  j["max_offdiagonal"] = max_offdiagonal(pi);
  j["top_population"] = top;
  j["truncation_warning"] = top > 1e-8;
  write_text_file(out, to_json_text(j));
  log << "steady: mu_eff = " << format_double(mu_eff) << ", residual = "
      << format_double(ss.residual) << " -> " << out.string() << "\n";
  return kSuccess;
}

int cmd_ft_check(const ExperimentConfig& config, const fs::path& out, std::ostream& log) {
  const int n_max = resolve_n_max(config);
  const FockSpace space(n_max);
  const JumpModel model = make_jump_model(config.reservoir, space, config.mode, config.convention);
  const KrausSet kraus = kraus_step(model, config.dt, config.normalization);
  const double tol = config.tolerance.value_or(config.mode == Mode::thermal ? 1e-10 : 1e-8);

  const EntropyTables tables = EntropyTables::from(model.bath);
  EntropyTables ledger_tables = tables;
  if (config.fault_injection) {
    // Mis-set environment entropy for left jumps; the backward channel keeps
    // the true value, so the ledger no longer matches ln(P / P~).
    at(ledger_tables.sigma, Jump::left) *= 0.5;
  }

  bool dual_ok = true;
  std::string dual_message;
  try {
    dual_kraus(kraus, ledger_tables.sigma, ledger_tables.phi);
  } catch (const VerificationError& e) {
    dual_ok = false;
    dual_message = e.what();
  }

  const Matrix rho0 = initial_matrix(config, model);
  Enumeration e = enumerate_forward(rho0, static_cast<int>(config.steps), kraus, ledger_tables,
                                    heat_quantum(config));
  fill_backward_probabilities(e, backward_kraus(kraus, tables.sigma));
  const DetailedFtResult detailed = verify_detailed_ft(e.trajectories);
  const IntegralFtResult ift_tot = verify_integral_ft(e.trajectories, EntropyKind::total);
  const IntegralFtResult ift_na = verify_integral_ft(e.trajectories, EntropyKind::non_adiabatic);
  const SplitReport split = verify_na_ad_split(e, kraus, ledger_tables, tol);

  const TrajectorySampler sampler(rho0, e.rho_final, kraus, ledger_tables, config.steps,
                                  heat_quantum(config));
  const auto records =
      run_ensemble(sampler, config.ensemble_size, config.master_seed, resolve_workers(config));
  std::vector<EntropyLedger> ledgers;
  ledgers.reserve(records.size());
  for (const auto& r : records) ledgers.push_back(r.ledger);
  const EnsembleSummary mc = ensemble_statistics(ledgers);

  const bool pass = dual_ok && detailed.max_residual < tol &&
                    detailed.absolutely_irreversible == 0 && ift_tot.deviation < tol &&
                    ift_na.deviation < tol && split.max_abs_s_ad == 0.0 &&
                    split.max_dual_deviation <= 1e-12 && split.max_na_detailed_residual < tol;

  ordered_json j;
  j["command"] = "ft-check";
  j["reservoir"] = reservoir_json(config, model.bath);
  j["n_max"] = n_max;
  j["dt"] = config.dt;
  j["steps"] = config.steps;
  j["normalization"] = to_string(config.normalization);
  j["initial_state"] = to_string(config.initial_state);
  j["fault_injection"] = config.fault_injection;
  j["tolerance"] = tol;
  j["completeness_defect"] = kraus.completeness_defect();
  ordered_json o;
  o["trajectories"] = e.trajectories.size();
  o["checked"] = detailed.checked;
  o["null"] = detailed.null;
  o["absolutely_irreversible"] = detailed.absolutely_irreversible;
  o["max_detailed_residual"] = detailed.max_residual;
  o["ift_tot"] = ift_tot.value;
  o["ift_tot_deviation"] = ift_tot.deviation;
  o["ift_na"] = ift_na.value;
  o["ift_na_deviation"] = ift_na.deviation;
  j["oracle"] = o;
  ordered_json sp;
  sp["max_abs_s_ad"] = split.max_abs_s_ad;
  sp["max_dual_deviation"] = split.max_dual_deviation;
  sp["max_na_detailed_residual"] = split.max_na_detailed_residual;
  sp["dual_equals_forward"] = dual_ok;
  if (!dual_ok) sp["dual_message"] = dual_message;
  j["na_ad_split"] = sp;
  ordered_json m = summary_json(mc);
  m["master_seed"] = config.master_seed;
  j["monte_carlo"] = m;
  j["pass"] = pass;
  write_text_file(out, to_json_text(j));

  log << "ft-check: detailed residual " << format_double(detailed.max_residual)
      << ", |IFT-1| " << format_double(ift_tot.deviation) << " (tot) "
      << format_double(ift_na.deviation) << " (na), MC <e^-s> "
      << format_double(mc.ift_tot.mean) << " +- " << format_double(mc.ift_tot.standard_error)
      << (pass ? " -> pass" : " -> FAIL") << "\n";
  return pass ? kSuccess : kVerificationFailure;
}

int cmd_sweep(const ExperimentConfig& config, const fs::path& out, std::ostream& log) {
  if (!config.sweep) throw ConfigError("config: sweep needs a 'sweep' entry");
  const SweepConfig& sw = *config.sweep;
  CsvWriter csv({sw.parameter, "mu_star", "delta_S_sq", "delta_E_sq", "delta_A_M", "e_max_star",
                 "landauer_lhs", "landauer_rhs", "domain_valid"});
  std::size_t valid = 0;
  for (double x : sw.values) {
    ReservoirSpec spec = config.reservoir;
    if (sw.parameter == "r1") spec.r1 = x;
    else if (sw.parameter == "r2") spec.r2 = x;
    else if (sw.parameter == "beta1") spec.beta1 = x;
    else spec.beta2 = x;
    csv.cell(x);
    try {
      EnhancementOptions opts;
      opts.convention = config.convention;
      const EnhancementReport r = enhancements(spec, opts);
      csv.cell(r.mu_star)
          .cell(r.delta_S_sq)
          .cell(r.delta_E_sq)
          .cell(r.delta_A_M)
          .cell(r.e_max_star)
          .cell(r.landauer_lhs)
          .cell(r.landauer_rhs)
          .cell(std::string("true"));
      ++valid;
    } catch (const DomainError&) {
      csv.empty().empty().empty().empty().empty().empty().empty().cell(std::string("false"));
    }
    csv.end_row();
  }
  write_text_file(out, csv.text());
  log << "sweep: " << sw.values.size() << " rows over " << sw.parameter << " (" << valid
      << " in the valid domain) -> " << out.string() << "\n";
  return kSuccess;
}

int cmd_trajectories(const ExperimentConfig& config, const fs::path& out, std::ostream& log) {
  const int n_max = resolve_n_max(config);
  const FockSpace space(n_max);
  const JumpModel model = make_jump_model(config.reservoir, space, config.mode, config.convention);
  const KrausSet kraus = kraus_step(model, config.dt, config.normalization);
  const EntropyTables tables = EntropyTables::from(model.bath);
  const Matrix rho0 = initial_matrix(config, model);
  const Matrix rho_tau = hermitian_part(propagate_channel(kraus, rho0, config.steps));

  const TrajectorySampler sampler(rho0, rho_tau, kraus, tables, config.steps,
                                  heat_quantum(config));
  const auto records =
      run_ensemble(sampler, config.ensemble_size, config.master_seed, resolve_workers(config));

  CsvWriter csv({"index", "n", "m", "n_left", "n_right", "s_sys", "s_env", "s_tot", "s_na",
                 "s_ad"});
  std::vector<EntropyLedger> ledgers;
  ledgers.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const TrajectoryRecord& r = records[i];
    const EntropyLedger& l = r.ledger;
    csv.cell(static_cast<long long>(i))
        .cell(static_cast<long long>(r.initial_index))
        .cell(static_cast<long long>(r.final_index))
        .cell(static_cast<long long>(l.n_left))
        .cell(static_cast<long long>(l.n_right))
        .cell(l.delta_s_sys)
        .cell(l.sigma_env_total)
        .cell(l.s_tot)
        .cell(l.s_na)
        .cell(l.s_ad);
    csv.end_row();
    ledgers.push_back(l);
  }
  write_text_file(out, csv.text());

  const EnsembleSummary s = ensemble_statistics(ledgers);
  ordered_json j;
  j["command"] = "trajectories";
  j["reservoir"] = reservoir_json(config, model.bath);
  j["n_max"] = n_max;
  j["dt"] = config.dt;
  j["tau"] = config.tau;
  j["steps"] = config.steps;
  j["normalization"] = to_string(config.normalization);
  j["initial_state"] = to_string(config.initial_state);
  j["master_seed"] = config.master_seed;
  j["summary"] = summary_json(s);
  const fs::path sp = summary_path(out);
  write_text_file(sp, to_json_text(j));
  log << "trajectories: " << records.size() << " -> " << out.string() << ", summary -> "
      << sp.string() << "\n";
  return kSuccess;
}

int run_command(const std::string& name, const ExperimentConfig& config, const fs::path& out,
                std::ostream& log, std::ostream& err) {
  try {
    if (name == "steady") return cmd_steady(config, out, log);
    if (name == "ft-check") return cmd_ft_check(config, out, log);
    if (name == "sweep") return cmd_sweep(config, out, log);
    if (name == "trajectories") return cmd_trajectories(config, out, log);
    err << "error: unknown command '" << name << "'\n";
    return kConfigError;
  } catch (const VerificationError& e) {
    err << "VerificationError: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const DegenerateError& e) {
    err << "DegenerateError: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "DomainError: " << e.what() << "\n";
    return kConfigError;
  } catch (const ScaleError& e) {
    err << "ScaleError: " << e.what() << "\n";
    return kConfigError;
  } catch (const TruncationError& e) {
    err << "TruncationError: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace demon::cli
