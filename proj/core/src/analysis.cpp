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

#include "demon/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "demon/errors.hpp"

#include "demon/fock.hpp"

namespace demon {

namespace {

constexpr double kEigenvalueClip = 1e-14;
constexpr double kClipWarning = 1e-8;

double occupation(double mu) { return 1.0 / std::expm1(mu); }

// (a_R^2 e^{i theta} + a_L^2 e^{-i theta}).
Matrix two_photon_operator(const FockSpace& space, double theta) {
  const Matrix a = lowering(space).matrix;
  const Matrix a2 = a * a;
  const Complex phase = std::polar(1.0, theta);
  return a2.adjoint() * phase + a2 * std::conj(phase);
}

double real_trace_product(const Matrix& op, const Matrix& rho) {
  // Tr[op rho] without forming the product.
  return (op.transpose().cwiseProduct(rho)).sum().real();
}

}  // namespace

RateRecord rates(const Matrix& rho, const Matrix& rho_dot, const JumpModel& model, double t) {
  RateRecord rec;
  rec.t = t;
  rec.mode = model.mode();
  const double omega = model.spec.omega;

  const Eigenbasis eb = hermitian_eigenbasis(rho);
  double s_dot = 0.0;
  for (Index i = 0; i < eb.values.size(); ++i) {
    double lambda = eb.values[i];
    if (lambda < kEigenvalueClip) {
      rec.clipped_mass += std::abs(lambda);
      lambda = kEigenvalueClip;
    }
    const Vector v = eb.vectors.col(i);
    const double flow = v.dot(rho_dot * v).real();
    s_dot -= flow * std::log(lambda);
  }
  rec.s_dot = s_dot;
  rec.clipping_warning = rec.clipped_mass > kClipWarning;

  const Matrix n_op = number_operator(model.space).matrix;
  rec.e_dot = omega * real_trace_product(n_op, rho_dot);
  rec.a_dot = -0.5 * omega *
              real_trace_product(two_photon_operator(model.space, model.bath.theta), rho_dot);
  const Matrix jj = model.jump.adjoint() * model.jump;
  rec.s_tot_dot = s_dot - model.bath.mu_eff * real_trace_product(jj, rho_dot);
  return rec;
}

std::vector<RateRecord> relaxation_rates(const DensityMatrix& rho0, std::span<const double> times,
                                         const JumpModel& model) {
  const MasterEvolution ev = evolve_master(rho0, times, model);
  std::vector<RateRecord> out;
  out.reserve(ev.states.size());
  for (std::size_t i = 0; i < ev.states.size(); ++i) {
    const Matrix& rho = ev.states[i].matrix();
    out.push_back(rates(rho, apply_liouvillian(model, rho), model, ev.times[i]));
  }
  return out;
}

std::string to_string(LandauerRegime regime) {
  switch (regime) {
    case LandauerRegime::stationary:
      return "stationary";
    case LandauerRegime::eraser:
      return "eraser";
    case LandauerRegime::fridge:
      return "fridge";
    case LandauerRegime::dissipative:
      return "dissipative";
  }
  return "unknown";
}

LandauerCheck landauer_check(const RateRecord& record, const ReservoirSpec& spec, double zero) {
  if (record.mode != Mode::thermal) {
    throw std::invalid_argument("landauer_check: thermal mode only");
  }
  const double db = spec.beta1 - spec.beta2;
  if (std::abs(record.s_dot) < zero && std::abs(record.e_dot) < zero) {
    return {LandauerRegime::stationary, 0.0};
  }
  if (record.s_dot < 0.0) {
    return {LandauerRegime::eraser, db * std::abs(record.e_dot) - std::abs(record.s_dot)};
  }
  if (record.e_dot > 0.0) {
    return {LandauerRegime::fridge, record.s_dot / db - record.e_dot};
  }
  return {LandauerRegime::dissipative, record.s_dot - db * record.e_dot};
}

double thermal_entropy(double mu) {
  // mu n(mu) - ln(1 - e^{-mu})
  return mu * occupation(mu) - std::log(-std::expm1(-mu));
}

EnhancementReport enhancements(const ReservoirSpec& spec, EnhancementOptions options) {
  const DerivedBath bath = derive_bath(spec, Mode::squeezed, options.convention);
  const double omega = spec.omega;
  EnhancementReport rep;
  rep.mu = mu(spec);
  rep.mu_star = bath.mu_eff;
  rep.r = bath.r;
  if (!(rep.mu > 0.0) || !(rep.mu_star > 0.0)) {
    std::ostringstream err;
    err << "enhancements: mu = " << rep.mu << ", mu* = " << rep.mu_star
        << "; both steady states need a positive effective bias";
    throw DomainError(err.str());
  }

  const double n = occupation(rep.mu);
  const double n_star = occupation(rep.mu_star);
  const double ch = std::cosh(2.0 * rep.r);
  const double sh = std::sinh(2.0 * rep.r);
  const double s = std::sinh(rep.r);

  rep.delta_S_sq = thermal_entropy(rep.mu_star) - thermal_entropy(rep.mu);
  rep.delta_E_sq = omega * (ch * n_star + s * s - n);
  rep.delta_A_M = omega * sh * (n_star + 0.5);
  rep.e_max_star = omega / rep.mu_star / ch * rep.delta_S_sq + sh / ch * rep.delta_A_M;
  rep.landauer_lhs = (spec.beta1 - spec.beta2) * std::abs(rep.delta_E_sq);
  rep.landauer_rhs = std::abs(rep.delta_S_sq);

  if (options.numeric_cross_check) {
    int n_max = options.n_max;
    if (n_max <= 0) {
      const int rule = adequate_n_max(n_star, rep.r);
      n_max = 2 * std::max(rule, static_cast<int>(std::ceil(28.0 / rep.mu_star)));
    }
    const FockSpace space(n_max);
    const JumpModel thermal = make_jump_model(spec, space, Mode::thermal, options.convention);
    const JumpModel squeezed = make_jump_model(spec, space, Mode::squeezed, options.convention);
    SteadyStateOptions ss;
    ss.cross_validate = false;
    const Matrix pi = steady_state(thermal, ss).rho.matrix();
    const Matrix pi_star = steady_state(squeezed, ss).rho.matrix();
    const Matrix n_op = number_operator(space).matrix;

    EnhancementNumerics num;
    num.n_max = n_max;
    num.delta_S_sq = von_neumann_entropy(pi_star) - von_neumann_entropy(pi);
    num.delta_E_sq =
        omega * (real_trace_product(n_op, pi_star) - real_trace_product(n_op, pi));
    num.delta_A_M = -0.5 * omega * real_trace_product(two_photon_operator(space, bath.theta), pi_star);
    rep.numeric = num;
  }
  return rep;
}

MeanEstimate jackknife_mean(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("jackknife_mean: empty sample");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  // Leave-one-out means theta_i = (sum - x_i) / (n - 1).
  double ss = 0.0;
  for (double v : values) {
    const double theta_i = (sum - v) / static_cast<double>(n - 1);
    ss += (theta_i - mean) * (theta_i - mean);
  }
  const double se = std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n) * ss);
  return {mean, se};
}

namespace {

MeanEstimate mean_and_se(const std::vector<double>& x) {
  const std::size_t n = x.size();
  double sum = 0.0;
  for (double v : x) sum += v;
  const double mean = sum / static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n))};
}

}  // namespace

EnsembleSummary ensemble_statistics(std::span<const EntropyLedger> ledgers) {
  if (ledgers.empty()) throw std::invalid_argument("ensemble_statistics: empty ensemble");
  EnsembleSummary out;
  out.count = ledgers.size();
  std::vector<double> tot, na, ad, sys, env, e_tot, e_na;
  for (auto* v : {&tot, &na, &ad, &sys, &env, &e_tot, &e_na}) v->reserve(ledgers.size());
  for (const EntropyLedger& l : ledgers) {
    tot.push_back(l.s_tot);
    na.push_back(l.s_na);
    ad.push_back(l.s_ad);
    sys.push_back(l.delta_s_sys);
    env.push_back(l.sigma_env_total);
    e_tot.push_back(std::exp(-l.s_tot));
    e_na.push_back(std::exp(-l.s_na));
    ++out.n_left_histogram[l.n_left];
    ++out.n_right_histogram[l.n_right];
  }
  out.s_tot = mean_and_se(tot);
  out.s_na = mean_and_se(na);
  out.s_ad = mean_and_se(ad);
  out.delta_s_sys = mean_and_se(sys);
  out.sigma_env = mean_and_se(env);
  out.ift_tot = jackknife_mean(e_tot);
  out.ift_na = jackknife_mean(e_na);
  return out;
}

}  // namespace demon
