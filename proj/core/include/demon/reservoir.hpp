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

// reservoir.hpp — reservoir parameters and every scalar derived from them
//
// Units: hbar = k_B = 1. omega sets the energy scale; beta is measured in
// inverse energy units, so beta * omega is dimensionless.

#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace demon {

enum class Mode { thermal, squeezed };

// Operation labels of the discrete channel: no jump, jump to the left (a_L or
// R) and jump to the right (a_R or R^dagger).
enum class Jump : int { none = 0, left = 1, right = 2 };

inline constexpr std::array<Jump, 3> kJumps = {Jump::none, Jump::left, Jump::right};

std::string_view to_string(Mode mode);
std::string_view to_string(Jump jump);

// Per-operation scalar (sigma^E_k or Delta phi_k), indexed by Jump.
using JumpTable = std::array<double, 3>;

inline double& at(JumpTable& t, Jump k) { return t[static_cast<std::size_t>(k)]; }
inline double at(const JumpTable& t, Jump k) { return t[static_cast<std::size_t>(k)]; }

struct ReservoirSpec {
  double beta1 = 5.0;  // cold reservoir
  double beta2 = 1.2;  // hot reservoir
  double omega = 1.0;
  double gamma = 1.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double theta = 0.0;  // theta_1 - theta_2

  // Throws DomainError unless beta1 >= beta2 > 0, gamma > 0, omega > 0 and
  // r1, r2 >= 0.
  void validate() const;
};

// Selects the squeezed-bath occupation formula: the standard
// N_i = n_i cosh(2 r_i) + sinh^2(r_i) (default) or the variant
// with sinh(r_i).
struct MomentConvention {
  bool linear_sinh_shift = false;
};

// 1 / (exp(beta omega) - 1). Throws DomainError if beta * omega <= 0.
double thermal_occupation(double beta, double omega);

struct JumpRates {
  double left;
  double right;
};

// Gamma_<- = gamma (n1 + 1) n2, Gamma_-> = gamma (n2 + 1) n1.
JumpRates thermal_rates(const ReservoirSpec& spec);

// mu = (beta1 - beta2) omega.
double mu(const ReservoirSpec& spec);

struct BathMoments {
  double N;
  double M;
};

// M = -sinh(r) cosh(r) (2 n + 1); N per MomentConvention.
BathMoments bath_moments(double beta, double r, double omega, MomentConvention conv = {});

struct EffectiveSqueezing {
  double r;
  double theta;
  double tanh_2r;
};

// tanh(2r) = 2 M1 M2 / ((N1+1) N2 + (N2+1) N1). Throws DomainError if the
// right-hand side lies outside [0, 1).
EffectiveSqueezing effective_squeezing(const ReservoirSpec& spec, MomentConvention conv = {});

struct SqueezedRates {
  double gamma_minus;
  double gamma_plus;
  double delta_N;
};

// Gamma_-+ = gamma/2 (delta_N +- (N2 - N1)).
SqueezedRates squeezed_rates(const ReservoirSpec& spec, MomentConvention conv = {});

// mu* = ln((N1 N2 + N2 cosh^2 r - N1 sinh^2 r) / (N1 N2 + N1 cosh^2 r - N2 sinh^2 r)),
// which equals ln(Gamma_- / Gamma_+). Throws DomainError if the argument of
// the log is not positive.
double mu_star(const ReservoirSpec& spec, MomentConvention conv = {});

// The variant with +N1 sinh^2 r and +N2 sinh^2 r. It does not satisfy
// detailed balance for r > 0; kept only to quantify the discrepancy.
double mu_star_plus_variant(const ReservoirSpec& spec, MomentConvention conv = {});

struct DerivedBath {
  Mode mode = Mode::thermal;
  double n_th1 = 0.0;
  double n_th2 = 0.0;
  double N1 = 0.0;
  double N2 = 0.0;
  double M1 = 0.0;
  double M2 = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double mu_eff = 0.0;       // mu (thermal) or mu* (squeezed)
  double gamma_left = 0.0;   // Gamma_<- or Gamma_-
  double gamma_right = 0.0;  // Gamma_-> or Gamma_+
  double delta_N = 0.0;
  JumpTable sigma{};  // environment entropy change per operation
  JumpTable phi{};    // nonequilibrium potential change per operation

  double rate(Jump k) const;
};

// Validates the spec and derives everything for the requested mode. In
// thermal mode the squeezing amplitudes are ignored.
DerivedBath derive_bath(const ReservoirSpec& spec, Mode mode, MomentConvention conv = {});

}  // namespace demon
