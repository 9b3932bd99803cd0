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

// analysis.hpp — entropy/energy flows, Landauer bounds, squeezing enhancements
// and ensemble statistics

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "demon/dynamics.hpp"
#include "demon/trajectory.hpp"

namespace demon {

struct RateRecord {
  double t = 0.0;
  double s_dot = 0.0;      // -Tr[rho_dot ln rho]
  double e_dot = 0.0;      // omega Tr[N rho_dot]; the heat flow in thermal mode
  double a_dot = 0.0;      // -(omega/2) Tr[(a_R^2 e^{i theta} + a_L^2 e^{-i theta}) rho_dot]
  double s_tot_dot = 0.0;  // s_dot - mu_eff Tr[J^dagger J rho_dot]
  Mode mode = Mode::thermal;
  double clipped_mass = 0.0;        // eigenvalue mass below the 1e-14 clip
  bool clipping_warning = false;    // clipped_mass > 1e-8
};

// rho_dot must be L(rho). The total rate uses ln(pi) = -mu_eff J^dagger J - ln Z,
// which is exact on the truncated space, so s_tot_dot >= 0 up to rounding.
RateRecord rates(const Matrix& rho, const Matrix& rho_dot, const JumpModel& model, double t = 0.0);

// Rates along exp(tL) rho0 at the given times.
std::vector<RateRecord> relaxation_rates(const DensityMatrix& rho0, std::span<const double> times,
                                         const JumpModel& model);

enum class LandauerRegime { stationary, eraser, fridge, dissipative };
std::string to_string(LandauerRegime regime);

struct LandauerCheck {
  LandauerRegime regime;
  double slack;  // >= 0 when the bound holds
};

// Thermal mode only (std::invalid_argument otherwise).
//   eraser (s_dot < 0):  slack = (beta1 - beta2)|e_dot| - |s_dot|
//   fridge (e_dot > 0):  slack = s_dot / (beta1 - beta2) - e_dot
//   otherwise:           slack = s_dot - (beta1 - beta2) e_dot
// All rates below `zero` in magnitude count as stationary with slack 0.
LandauerCheck landauer_check(const RateRecord& record, const ReservoirSpec& spec,
                             double zero = 1e-13);

struct EnhancementNumerics {
  int n_max = 0;
  double delta_S_sq = 0.0;
  double delta_E_sq = 0.0;
  double delta_A_M = 0.0;
};

struct EnhancementReport {
  double mu = 0.0;
  double mu_star = 0.0;
  double r = 0.0;
  double delta_S_sq = 0.0;  // S(pi*) - S(pi)
  double delta_E_sq = 0.0;  // omega (<N>_{pi*} - <N>_pi)
  double delta_A_M = 0.0;   // <A>_{pi*} = omega sinh(2r) (n* + 1/2)
  double e_max_star = 0.0;  // (omega/mu*) sech(2r) dS + tanh(2r) dA
  double landauer_lhs = 0.0;  // (beta1 - beta2) |delta_E_sq|
  double landauer_rhs = 0.0;  // |delta_S_sq|
  std::optional<EnhancementNumerics> numeric;

  bool violates_thermal_bound() const { return landauer_rhs > landauer_lhs; }
};

struct EnhancementOptions {
  bool numeric_cross_check = false;
  // 0 selects 2 max(adequate_n_max(n*, r), ceil(28 / mu*)).
  int n_max = 0;
  MomentConvention convention{};
};

// Closed forms for the steady-to-steady protocol pi -> pi*. Throws
// DomainError outside the valid squeezing domain and when mu or mu* <= 0.
EnhancementReport enhancements(const ReservoirSpec& spec, EnhancementOptions options = {});

// Entropy of the geometric distribution with parameter mu: mu n(mu) + ln Z(mu).
double thermal_entropy(double mu);

struct MeanEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

struct EnsembleSummary {
  std::size_t count = 0;
  MeanEstimate s_tot;
  MeanEstimate s_na;
  MeanEstimate s_ad;
  MeanEstimate delta_s_sys;
  MeanEstimate sigma_env;
  MeanEstimate ift_tot;  // <e^{-s_tot}> with leave-one-out jackknife error
  MeanEstimate ift_na;
  std::map<long, std::size_t> n_left_histogram;
  std::map<long, std::size_t> n_right_histogram;
};

// Throws std::invalid_argument on an empty ensemble.
EnsembleSummary ensemble_statistics(std::span<const EntropyLedger> ledgers);

// Leave-one-out jackknife estimate of the mean of `values`.
MeanEstimate jackknife_mean(std::span<const double> values);

}  // namespace demon
