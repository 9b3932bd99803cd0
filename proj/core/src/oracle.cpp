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

#include "demon/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "demon/errors.hpp"

namespace demon {

namespace {

constexpr double kMinInitialEigenvalue = 1e-14;

// <bra| ops[k_K] ... ops[k_1] |ket> for every bra in `bras` (columns).
Vector forward_amplitudes(const Vector& ket, const std::vector<Jump>& kinds, const KrausSet& ops,
                          const Matrix& bras) {
  Vector v = ket;
  for (Jump k : kinds) v = ops.op(k) * v;
  return bras.adjoint() * v;
}

// <Theta psi| ops[k_1] ... ops[k_K] |Theta phi>.
Complex reversed_amplitude(const Vector& psi, const std::vector<Jump>& kinds, const KrausSet& ops,
                           const Vector& phi) {
  Vector v = phi.conjugate();
  for (auto it = kinds.rbegin(); it != kinds.rend(); ++it) v = ops.op(*it) * v;
  return psi.conjugate().dot(v);
}

}  // namespace

Enumeration enumerate_forward(const Matrix& rho0, int steps, const KrausSet& kraus,
                              const EntropyTables& tables, std::optional<double> heat_quantum,
                              double max_work) {
  if (steps < 0) throw std::invalid_argument("enumerate_forward: steps must be >= 0");
  const Index d = rho0.rows();
  const double work = static_cast<double>(d * d) * std::pow(3.0, steps);
  if (work > max_work) {
    std::ostringstream err;
    err << "enumerate_forward: dim^2 3^K = " << work << " exceeds the bound " << max_work;
    throw ScaleError(err.str());
  }

  Enumeration e;
  e.steps = steps;
  e.initial = hermitian_eigenbasis(rho0);
  e.rho_final = hermitian_part(propagate_channel(kraus, rho0, steps));
  e.final = hermitian_eigenbasis(e.rho_final);

  std::vector<Jump> kinds(static_cast<std::size_t>(steps), Jump::none);
  for (Index n = 0; n < d; ++n) {
    const double p_n = e.initial.values[n];
    if (p_n < kMinInitialEigenvalue) continue;
    const Vector psi = e.initial.vectors.col(n);
    // Depth-first over k_1..k_K with the running state M_{k_j} ... M_{k_1} psi.
    std::function<void(int, const Vector&)> descend = [&](int depth, const Vector& v) {
      if (depth == steps) {
        const Vector amps = e.final.vectors.adjoint() * v;
        for (Index m = 0; m < d; ++m) {
          DiscreteTrajectory t;
          t.n = n;
          t.kinds = kinds;
          t.m = m;
          t.p_forward = p_n * std::norm(amps[m]);
          t.ledger = make_ledger(p_n, e.final.values[m], kinds, tables, heat_quantum);
          e.trajectories.push_back(std::move(t));
        }
        return;
      }
      for (Jump k : kJumps) {
        kinds[static_cast<std::size_t>(depth)] = k;
        descend(depth + 1, kraus.op(k) * v);
      }
    };
    descend(0, psi);
  }
  return e;
}

double enumerate_backward_probability(const DiscreteTrajectory& traj, const Enumeration& e,
                                      const KrausSet& backward) {
  const Complex amp = reversed_amplitude(e.initial.vectors.col(traj.n), traj.kinds, backward,
                                         e.final.vectors.col(traj.m));
  return e.final.values[traj.m] * std::norm(amp);
}

void fill_backward_probabilities(Enumeration& e, const KrausSet& backward) {
  for (DiscreteTrajectory& t : e.trajectories) {
    t.p_backward = enumerate_backward_probability(t, e, backward);
  }
}

IntegralFtResult verify_integral_ft(const std::vector<DiscreteTrajectory>& trajectories,
                                    EntropyKind kind) {
  double value = 0.0;
  for (const DiscreteTrajectory& t : trajectories) {
    if (t.p_forward == 0.0) continue;
    const double s = kind == EntropyKind::total ? t.ledger.s_tot : t.ledger.s_na;
    value += t.p_forward * std::exp(-s);
  }
  return {value, std::abs(value - 1.0)};
}

DetailedFtResult verify_detailed_ft(const std::vector<DiscreteTrajectory>& trajectories,
                                    double p_floor) {
  DetailedFtResult r;
  for (const DiscreteTrajectory& t : trajectories) {
    if (!(t.p_forward > p_floor)) {
      ++r.null;
      continue;
    }
    if (!(t.p_backward > 0.0)) {
      ++r.absolutely_irreversible;
      continue;
    }
    ++r.checked;
    const double residual = std::abs(std::log(t.p_forward / t.p_backward) - t.ledger.s_tot);
    r.max_residual = std::max(r.max_residual, residual);
  }
  return r;
}

SplitReport verify_na_ad_split(const Enumeration& e, const KrausSet& forward,
                               const EntropyTables& tables, double ift_tolerance,
                               double p_floor) {
  SplitReport rep;
  KrausSet dual = forward;
  for (Jump k : kJumps) {
    dual.op(k) = std::exp(-0.5 * (at(tables.sigma, k) + at(tables.phi, k))) * forward.op(k);
  }
  const KrausSet dual_reverse = dual_reverse_kraus(forward, tables.phi);

  for (const DiscreteTrajectory& t : e.trajectories) {
    rep.max_abs_s_ad = std::max(rep.max_abs_s_ad, std::abs(t.ledger.s_ad));

    const Vector amps = forward_amplitudes(e.initial.vectors.col(t.n), t.kinds, dual,
                                           e.final.vectors.col(t.m));
    const double p_dual = e.initial.values[t.n] * std::norm(amps[0]);
    rep.max_dual_deviation = std::max(rep.max_dual_deviation, std::abs(p_dual - t.p_forward));

    if (t.p_forward > p_floor) {
      const double p_dr = enumerate_backward_probability(t, e, dual_reverse);
      const double residual = p_dr > 0.0
                                  ? std::abs(std::log(t.p_forward / p_dr) - t.ledger.s_na)
                                  : std::numeric_limits<double>::infinity();
      rep.max_na_detailed_residual = std::max(rep.max_na_detailed_residual, residual);
    }
  }
  rep.na_integral = verify_integral_ft(e.trajectories, EntropyKind::non_adiabatic);
  rep.ok = rep.max_abs_s_ad == 0.0 && rep.na_integral.deviation < ift_tolerance &&
           rep.max_dual_deviation <= 1e-12;
  return rep;
}

}  // namespace demon
