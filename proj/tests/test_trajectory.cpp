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

#include <cmath>
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "demon/dynamics.hpp"
#include "demon/fock.hpp"
#include "demon/oracle.hpp"
#include "demon/rng.hpp"
#include "demon/trajectory.hpp"

using namespace demon;

namespace {

struct ThermalCase {
  JumpModel model;
  KrausSet kraus;
  EntropyTables tables;
  Matrix rho0;
  Matrix rho_tau;
  long steps;
};

ThermalCase thermal_setup(int n_max, double dt, long steps, double mu0) {
  ReservoirSpec s;
  JumpModel m = make_jump_model(s, FockSpace(n_max), Mode::thermal);
  KrausSet k = kraus_step(m, dt, Normalization::exact);
  EntropyTables t = EntropyTables::from(m.bath);
  Matrix rho0 = gibbs_state(m.space, mu0).matrix();
  Matrix rho_tau = hermitian_part(propagate_channel(k, rho0, steps));
  return {std::move(m), std::move(k), t, rho0, rho_tau, steps};
}

}  // namespace

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  Rng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  for (int i = 0; i < 5; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
    EXPECT_NE(x, d.next());
  }
  Rng u(1, 1);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = u.uniform();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
}

TEST(Ledger, Bookkeeping) {
  EntropyTables t;
  at(t.sigma, Jump::left) = 2.0;
  at(t.sigma, Jump::right) = -2.0;
  at(t.phi, Jump::left) = -2.0;
  at(t.phi, Jump::right) = 2.0;
  const std::vector<Jump> kinds = {Jump::left, Jump::none, Jump::right, Jump::left};
  const EntropyLedger l = make_ledger(0.5, 0.25, kinds, t, 1.5);
  EXPECT_DOUBLE_EQ(l.delta_s_sys, std::log(0.5) - std::log(0.25));
  EXPECT_DOUBLE_EQ(l.sigma_env_total, 2.0);
  EXPECT_DOUBLE_EQ(l.delta_phi_total, -2.0);
  EXPECT_DOUBLE_EQ(l.s_tot, l.delta_s_sys + 2.0);
  EXPECT_DOUBLE_EQ(l.s_na, l.delta_s_sys + 2.0);
  EXPECT_EQ(l.s_ad, 0.0);
  EXPECT_EQ(l.n_left, 2);
  EXPECT_EQ(l.n_right, 1);
  ASSERT_TRUE(l.q.has_value());
  EXPECT_DOUBLE_EQ(*l.q, -1.5);
  const EntropyTables r = t.reversed();
  EXPECT_EQ(at(r.sigma, Jump::left), -2.0);
  EXPECT_EQ(at(r.phi, Jump::right), -2.0);
}

TEST(Measurement, FrequenciesFollowEigenvalues) {
  RealVector p(3);
  p << 0.6, 0.3, 0.1;
  const Matrix rho = p.cast<Complex>().asDiagonal();
  Rng rng(5, 0);
  std::vector<int> counts(3, 0);
  const int n = 40000;
  for (int i = 0; i < n; ++i) ++counts[measure_in_eigenbasis(rho, rng).index];
  for (int k = 0; k < 3; ++k) {
    const double se = std::sqrt(p[k] * (1 - p[k]) / n);
    EXPECT_NEAR(counts[k] / double(n), p[k], 5 * se) << k;
  }
}

TEST(Measurement, NeverReturnsNullOutcomes) {
  const FockSpace s(5);
  const Matrix rho = maximally_mixed_state(s, 2).matrix();
  Rng rng(9, 0);
  for (int i = 0; i < 2000; ++i) {
    const Outcome o = measure_in_eigenbasis(rho, rng);
    EXPECT_GT(o.probability, 1e-14);
  }
}

TEST(Sampler, JumpStatisticsMatchEnumeration) {
  const ThermalCase s = thermal_setup(4, 0.05, 3, 0.7);
  const Enumeration e = enumerate_forward(s.rho0, 3, s.kraus, s.tables);
  std::map<std::pair<long, long>, double> exact;
  for (const auto& t : e.trajectories) exact[{t.ledger.n_left, t.ledger.n_right}] += t.p_forward;

  const TrajectorySampler sampler(s.rho0, s.rho_tau, s.kraus, s.tables, s.steps);
  const std::size_t n = 100000;
  const auto recs = run_ensemble(sampler, n, 77, 1);
  std::map<std::pair<long, long>, double> freq;
  for (const auto& r : recs) freq[{r.ledger.n_left, r.ledger.n_right}] += 1.0 / n;
  for (const auto& [key, p] : exact) {
    const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / n);
    EXPECT_NEAR(freq[key], p, 5 * se + 1e-12) << key.first << "," << key.second;
  }
  // Frozen by tests/oracle/reference.py: probability of the jump-free record.
  const double p_quiet = exact[{0, 0}];
  EXPECT_NEAR(p_quiet, 0.9461763504842413, 1e-13);
}

TEST(Sampler, EnsembleIsIndependentOfWorkerCount) {
  const ThermalCase s = thermal_setup(8, 0.05, 20, 1.0);
  const TrajectorySampler sampler(s.rho0, s.rho_tau, s.kraus, s.tables, s.steps, 1.0);
  const auto a = run_ensemble(sampler, 3000, 123, 1);
  const auto b = run_ensemble(sampler, 3000, 123, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].initial_index, b[i].initial_index);
    EXPECT_EQ(a[i].final_index, b[i].final_index);
    EXPECT_EQ(a[i].ledger.s_tot, b[i].ledger.s_tot);
    EXPECT_EQ(a[i].ledger.n_left, b[i].ledger.n_left);
  }
}

TEST(Sampler, ZeroAdiabaticEntropyAlongEveryTrajectory) {
  ReservoirSpec spec;
  spec.r1 = 0.3;
  spec.r2 = 0.5;
  spec.theta = 0.4;
  const JumpModel m = make_jump_model(spec, FockSpace(10), Mode::squeezed);
  const KrausSet k = kraus_step(m, 0.02, Normalization::exact);
  const EntropyTables t = EntropyTables::from(m.bath);
  const Matrix rho0 = vacuum_state(m.space).matrix();
  const Matrix rho_tau = propagate_channel(k, rho0, 50);
  const TrajectorySampler sampler(rho0, rho_tau, k, t, 50);
  for (const auto& r : run_ensemble(sampler, 2000, 3, 1)) {
    EXPECT_EQ(r.ledger.s_ad, 0.0);
    EXPECT_EQ(r.ledger.s_tot, r.ledger.s_na);
  }
}

TEST(Sampler, ForwardAndBackwardProcesses) {
  const ThermalCase s = thermal_setup(6, 0.05, 10, 1.5);
  Rng rng(1, 2);
  const auto [traj, ledger] =
      sample_forward(s.rho0, 0.5, 0.05, s.kraus, s.rho_tau, s.tables, rng, 1.0);
  EXPECT_FALSE(traj.reversed);
  EXPECT_EQ(traj.jumps.size(), static_cast<std::size_t>(ledger.n_left + ledger.n_right));
  for (const auto& j : traj.jumps) {
    EXPECT_GT(j.time, 0.0);
    EXPECT_LT(j.time, 0.5);
  }
  EXPECT_THROW(sample_forward(s.rho0, 0.5, 0.04, s.kraus, s.rho_tau, s.tables, rng),
               std::invalid_argument);
  EXPECT_THROW(sample_forward(s.rho0, 0.52, 0.05, s.kraus, s.rho_tau, s.tables, rng),
               std::invalid_argument);

  const KrausSet back = backward_kraus(s.kraus, s.tables.sigma);
  double acc = 0.0;
  const int n = 20000;
  std::vector<double> v;
  for (int i = 0; i < n; ++i) {
    Rng r(99, static_cast<std::uint64_t>(i));
    const auto [bt, bl] = sample_backward(s.rho_tau, 0.5, 0.05, back, s.rho0, s.tables, r, 1.0);
    EXPECT_TRUE(bt.reversed);
    v.push_back(std::exp(-bl.s_tot));
    acc += v.back();
  }
  const double mean = acc / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (n - 1) / n);
  EXPECT_NEAR(mean, 1.0, 5 * se);
}

TEST(WaitingTime, ExponentialFromFockState) {
  ReservoirSpec spec;
  const JumpModel m = make_jump_model(spec, FockSpace(12), Mode::thermal);
  const Index n0 = 3;
  Vector psi = Vector::Zero(13);
  psi[n0] = 1.0;
  const double rate = m.bath.gamma_left * n0 + m.bath.gamma_right * (n0 + 1);
  const int n = 20000;
  double sum = 0.0;
  int lefts = 0;
  for (int i = 0; i < n; ++i) {
    Rng rng(17, static_cast<std::uint64_t>(i));
    const WaitingTime w = sample_waiting_time(psi, m, rng);
    sum += w.wait;
    lefts += w.kind == Jump::left;
  }
  const double mean = 1.0 / rate;
  EXPECT_NEAR(sum / n, mean, 5 * mean / std::sqrt(n));
  const double pl = m.bath.gamma_left * n0 / rate;
  EXPECT_NEAR(lefts / double(n), pl, 5 * std::sqrt(pl * (1 - pl) / n));
}

TEST(WaitingTime, ContinuousRecordIsOrdered) {
  ReservoirSpec spec;
  spec.r1 = 0.3;
  spec.r2 = 0.5;
  const JumpModel m = make_jump_model(spec, FockSpace(15), Mode::squeezed);
  Vector psi = Vector::Zero(16);
  psi[0] = 1.0;
  Rng rng(4, 4);
  const auto events = sample_continuous_jumps(psi, 20.0, m, rng);
  EXPECT_FALSE(events.empty());
  double prev = 0.0;
  for (const auto& e : events) {
    EXPECT_GE(e.time, prev);
    EXPECT_LE(e.time, 20.0);
    EXPECT_NE(e.kind, Jump::none);
    prev = e.time;
  }
}
