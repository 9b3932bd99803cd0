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

// oracle.hpp — exhaustive enumeration of discrete-time trajectories
//
// With K channel steps the trajectory space {(n, k_1..k_K, m)} is finite, so
// forward and backward probabilities, and with them the detailed and integral
// fluctuation theorems, can be checked exactly without sampling.

#pragma once

#include <optional>
#include <vector>

#include "demon/dynamics.hpp"
#include "demon/linalg.hpp"
#include "demon/trajectory.hpp"

namespace demon {

struct DiscreteTrajectory {
  Index n = 0;
  std::vector<Jump> kinds;  // length K, including Jump::none steps
  Index m = 0;
  double p_forward = 0.0;
  double p_backward = 0.0;  // filled by fill_backward_probabilities
  EntropyLedger ledger;
};

struct Enumeration {
  std::vector<DiscreteTrajectory> trajectories;
  Eigenbasis initial;  // eigenbasis of rho_0
  Eigenbasis final;    // eigenbasis of rho_K = E^K(rho_0)
  Matrix rho_final;
  int steps = 0;
};

// P(n, k, m) = p_n |<phi_m| M_{k_K} ... M_{k_1} |psi_n>|^2 for every
// trajectory, skipping initial outcomes with p_n < 1e-14. Throws ScaleError
// when dim^2 3^K exceeds max_work.
Enumeration enumerate_forward(const Matrix& rho0, int steps, const KrausSet& kraus,
                              const EntropyTables& tables,
                              std::optional<double> heat_quantum = std::nullopt,
                              double max_work = 1e7);

// P~ = p*_m |<Theta psi_n| M~_{k_1} ... M~_{k_K} |Theta phi_m>|^2.
double enumerate_backward_probability(const DiscreteTrajectory& traj, const Enumeration& e,
                                      const KrausSet& backward);

void fill_backward_probabilities(Enumeration& e, const KrausSet& backward);

enum class EntropyKind { total, non_adiabatic };

struct IntegralFtResult {
  double value;      // sum P e^{-s}
  double deviation;  // |value - 1|
};

IntegralFtResult verify_integral_ft(const std::vector<DiscreteTrajectory>& trajectories,
                                    EntropyKind kind = EntropyKind::total);

// Trajectories forbidden by a selection rule (for instance the parity
// structure of squeezed states) have P = 0 in exact arithmetic but come out of
// the matrix products as rounding noise of order (dim eps)^2 ~ 1e-30. Such
// trajectories carry no probability and are counted rather than compared.
inline constexpr double kNullProbability = 1e-24;

struct DetailedFtResult {
  double max_residual = 0.0;  // max |ln(P / P~) - s_tot|
  std::size_t checked = 0;
  std::size_t null = 0;  // P <= p_floor
  // P > 0 with P~ = 0. Needs a rank-deficient rho_tau; a pure rho_0 instead
  // loses mass in the integral FT.
  std::size_t absolutely_irreversible = 0;
};

// Compares ln(P / P~) with the ledger's s_tot for every trajectory with
// P > p_floor.
DetailedFtResult verify_detailed_ft(const std::vector<DiscreteTrajectory>& trajectories,
                                    double p_floor = kNullProbability);

struct SplitReport {
  double max_abs_s_ad = 0.0;
  IntegralFtResult na_integral{0.0, 0.0};
  double max_dual_deviation = 0.0;          // max |P_dual - P| over trajectories
  double max_na_detailed_residual = 0.0;    // max |ln(P / P~_dual-reverse) - s_na|
  bool ok = false;
};

// Checks the adiabatic / non-adiabatic split: s_ad = 0, the integral FT for
// s_na (1e-10), the dual process against the forward one trajectory by
// trajectory (1e-12) and the detailed FT for s_na via the dual-reverse process.
SplitReport verify_na_ad_split(const Enumeration& e, const KrausSet& forward,
                               const EntropyTables& tables, double ift_tolerance = 1e-10,
                               double p_floor = kNullProbability);

}  // namespace demon
