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

#include "demon/reservoir.hpp"

#include <cmath>
#include <sstream>

#include "demon/errors.hpp"

namespace demon {

std::string_view to_string(Mode mode) {
  return mode == Mode::thermal ? "thermal" : "squeezed";
}

std::string_view to_string(Jump jump) {
  switch (jump) {
    case Jump::none:
      return "none";
    case Jump::left:
      return "left";
    case Jump::right:
      return "right";
  }
  return "?";
}

void ReservoirSpec::validate() const {
  std::ostringstream err;
  if (!(beta2 > 0.0)) err << "beta2 must be > 0; ";
  if (!(beta1 >= beta2)) err << "beta1 must be >= beta2; ";
  if (!(omega > 0.0)) err << "omega must be > 0; ";
  if (!(gamma > 0.0)) err << "gamma must be > 0; ";
  if (!(r1 >= 0.0) || !(r2 >= 0.0)) err << "squeezing amplitudes must be >= 0; ";
  if (!std::isfinite(theta)) err << "theta must be finite; ";
  const std::string msg = err.str();
  if (!msg.empty()) throw DomainError("invalid reservoir spec: " + msg);
}

double thermal_occupation(double beta, double omega) {
  const double x = beta * omega;
  if (!(x > 0.0)) {
    throw DomainError("thermal_occupation: beta * omega must be > 0");
  }
  return 1.0 / std::expm1(x);
}

JumpRates thermal_rates(const ReservoirSpec& spec) {
  const double n1 = thermal_occupation(spec.beta1, spec.omega);
  const double n2 = thermal_occupation(spec.beta2, spec.omega);
  return {spec.gamma * (n1 + 1.0) * n2, spec.gamma * (n2 + 1.0) * n1};
}

double mu(const ReservoirSpec& spec) { return (spec.beta1 - spec.beta2) * spec.omega; }

BathMoments bath_moments(double beta, double r, double omega, MomentConvention conv) {
  const double n = thermal_occupation(beta, omega);
  const double s = std::sinh(r);
  const double c = std::cosh(r);
  const double extra = conv.linear_sinh_shift ? s : s * s;
  return {n * std::cosh(2.0 * r) + extra, -s * c * (2.0 * n + 1.0)};
}

namespace {

struct Moments {
  BathMoments cold;
  BathMoments hot;
  double a_sum;  // (N1+1) N2 + (N2+1) N1
};

Moments moments(const ReservoirSpec& spec, MomentConvention conv) {
  const BathMoments b1 = bath_moments(spec.beta1, spec.r1, spec.omega, conv);
  const BathMoments b2 = bath_moments(spec.beta2, spec.r2, spec.omega, conv);
  return {b1, b2, (b1.N + 1.0) * b2.N + (b2.N + 1.0) * b1.N};
}

}  // namespace

EffectiveSqueezing effective_squeezing(const ReservoirSpec& spec, MomentConvention conv) {
  const Moments m = moments(spec, conv);
  const double rhs = 2.0 * m.cold.M * m.hot.M / m.a_sum;
  if (!(rhs >= 0.0 && rhs < 1.0)) {
    std::ostringstream err;
    err << "effective_squeezing: tanh(2r) = " << rhs << " outside [0, 1)";
    throw DomainError(err.str());
  }
  return {0.5 * std::atanh(rhs), spec.theta, rhs};
}

SqueezedRates squeezed_rates(const ReservoirSpec& spec, MomentConvention conv) {
  effective_squeezing(spec, conv);
  const Moments m = moments(spec, conv);
  const double mm = m.cold.M * m.hot.M;
  const double radicand = m.a_sum * m.a_sum - 4.0 * mm * mm;
  if (!(radicand >= 0.0)) {
    throw DomainError("squeezed_rates: negative delta_N radicand");
  }
  const double delta_n = std::sqrt(radicand);
  const double diff = m.hot.N - m.cold.N;
  return {0.5 * spec.gamma * (delta_n + diff), 0.5 * spec.gamma * (delta_n - diff), delta_n};
}

namespace {

double mu_star_impl(const ReservoirSpec& spec, MomentConvention conv, double sign) {
  const EffectiveSqueezing eff = effective_squeezing(spec, conv);
  const Moments m = moments(spec, conv);
  const double n1 = m.cold.N;
  const double n2 = m.hot.N;
  const double c2 = std::pow(std::cosh(eff.r), 2);
  const double s2 = std::pow(std::sinh(eff.r), 2);
  const double num = n1 * n2 + n2 * c2 + sign * n1 * s2;
  const double den = n1 * n2 + n1 * c2 + sign * n2 * s2;
  if (!(num > 0.0 && den > 0.0)) {
    throw DomainError("mu_star: logarithm argument is not positive");
  }
  return std::log(num / den);
}

}  // namespace

double mu_star(const ReservoirSpec& spec, MomentConvention conv) {
  return mu_star_impl(spec, conv, -1.0);
}

double mu_star_plus_variant(const ReservoirSpec& spec, MomentConvention conv) {
  return mu_star_impl(spec, conv, +1.0);
}

double DerivedBath::rate(Jump k) const {
  switch (k) {
    case Jump::left:
      return gamma_left;
    case Jump::right:
      return gamma_right;
    case Jump::none:
      break;
  }
  return 0.0;
}

DerivedBath derive_bath(const ReservoirSpec& spec, Mode mode, MomentConvention conv) {
  spec.validate();
  DerivedBath b;
  b.mode = mode;
  b.n_th1 = thermal_occupation(spec.beta1, spec.omega);
  b.n_th2 = thermal_occupation(spec.beta2, spec.omega);
  b.theta = spec.theta;
  if (mode == Mode::thermal) {
    const JumpRates rates = thermal_rates(spec);
    b.N1 = b.n_th1;
    b.N2 = b.n_th2;
    b.mu_eff = mu(spec);
    b.gamma_left = rates.left;
    b.gamma_right = rates.right;
    b.delta_N = (b.N1 + 1.0) * b.N2 + (b.N2 + 1.0) * b.N1;
  } else {
    const Moments m = moments(spec, conv);
    const EffectiveSqueezing eff = effective_squeezing(spec, conv);
    const SqueezedRates rates = squeezed_rates(spec, conv);
    b.N1 = m.cold.N;
    b.N2 = m.hot.N;
    b.M1 = m.cold.M;
    b.M2 = m.hot.M;
    b.r = eff.r;
    b.mu_eff = mu_star(spec, conv);
    b.gamma_left = rates.gamma_minus;
    b.gamma_right = rates.gamma_plus;
    b.delta_N = rates.delta_N;
  }
  // sigma^E_k = ln(Gamma_k / Gamma_k'), Delta phi_k = -sigma^E_k.
  b.sigma = {0.0, b.mu_eff, -b.mu_eff};
  b.phi = {0.0, -b.mu_eff, b.mu_eff};
  return b;
}

}  // namespace demon
