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
#include <optional>
#include <random>

#include <gtest/gtest.h>

#include "demon/dynamics.hpp"
#include "demon/errors.hpp"
#include "demon/fock.hpp"
#include "demon/oracle.hpp"

using namespace demon;

namespace {

struct Instance {
  JumpModel model;
  KrausSet kraus;
  EntropyTables tables;
};

Instance make_instance(const ReservoirSpec& spec, Mode mode, int n_max, double dt) {
  JumpModel m = make_jump_model(spec, FockSpace(n_max), mode);
  KrausSet k = kraus_step(m, dt, Normalization::exact);
  const EntropyTables t = EntropyTables::from(m.bath);
  return {std::move(m), std::move(k), t};
}

Enumeration run(const Instance& in, const Matrix& rho0, int steps) {
  Enumeration e = enumerate_forward(rho0, steps, in.kraus, in.tables);
  fill_backward_probabilities(e, backward_kraus(in.kraus, in.tables.sigma));
  return e;
}

ReservoirSpec squeezed_spec(double theta = 0.0) {
  ReservoirSpec s;
  s.r1 = 0.3;
  s.r2 = 0.5;
  s.theta = theta;
  return s;
}

Matrix random_full_rank(Index d, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  Matrix a(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) a(i, j) = Complex(g(gen), g(gen));
  Matrix rho = a * a.adjoint() + 0.05 * Matrix::Identity(d, d);
  return rho / rho.trace().real();
}

double mean_s(const Enumeration& e) {
  double m = 0.0;
  for (const auto& t : e.trajectories) m += t.p_forward * t.ledger.s_tot;
  return m;
}

double prob_one_right(const Enumeration& e) {
  double p = 0.0;
  for (const auto& t : e.trajectories) {
    if (t.ledger.n_right == 1 && t.ledger.n_left == 0) p += t.p_forward;
  }
  return p;
}

}  // namespace

TEST(Oracle, ThermalDetailedAndIntegralFt) {
  const Instance in = make_instance(ReservoirSpec{}, Mode::thermal, 4, 0.05);
  const Enumeration e = run(in, steady_state(in.model).rho.matrix(), 3);
  EXPECT_EQ(e.trajectories.size(), 5u * 27u * 5u);
  const DetailedFtResult d = verify_detailed_ft(e.trajectories);
  EXPECT_LT(d.max_residual, 1e-10);
  EXPECT_GT(d.checked, 0u);
  EXPECT_EQ(d.absolutely_irreversible, 0u);
  EXPECT_LT(verify_integral_ft(e.trajectories).deviation, 1e-10);
  EXPECT_LT(verify_integral_ft(e.trajectories, EntropyKind::non_adiabatic).deviation, 1e-10);
}

TEST(Oracle, SqueezedDetailedAndIntegralFt) {
  for (double theta : {0.0, M_PI / 3}) {
    const Instance in = make_instance(squeezed_spec(theta), Mode::squeezed, 6, 0.05);
    const Enumeration e = run(in, steady_state(in.model).rho.matrix(), 2);
    const DetailedFtResult d = verify_detailed_ft(e.trajectories);
    EXPECT_LT(d.max_residual, 1e-8) << theta;
    EXPECT_EQ(d.absolutely_irreversible, 0u);
    EXPECT_GT(d.null, 0u);  // parity-forbidden records
    EXPECT_LT(verify_integral_ft(e.trajectories).deviation, 1e-8);
    EXPECT_LT(verify_integral_ft(e.trajectories, EntropyKind::non_adiabatic).deviation, 1e-8);
  }
}

TEST(Oracle, FrozenEnumerationStatistics) {
  // Reference: independent numpy enumeration (tests/oracle/reference.py).
  const Instance th = make_instance(ReservoirSpec{}, Mode::thermal, 4, 0.05);
  const Enumeration et = run(th, gibbs_state(th.model.space, 0.7).matrix(), 3);
  EXPECT_NEAR(mean_s(et), 0.15528985115042673, 1e-12);
  EXPECT_NEAR(prob_one_right(et), 0.0022532703658463254, 1e-14);

  const Instance sq = make_instance(squeezed_spec(), Mode::squeezed, 6, 0.05);
  const Matrix g = gibbs_state(sq.model.space, 0.7).matrix();
  const Matrix rho0 = sq.model.squeeze * g * sq.model.squeeze.adjoint();
  const Enumeration es = run(sq, rho0, 2);
  EXPECT_NEAR(mean_s(es), 0.11502669673299705, 1e-12);
  EXPECT_NEAR(prob_one_right(es), 0.013940063670510188, 1e-13);
}

TEST(Oracle, MeanEntropyProductionIsNonNegative) {
  const Instance in = make_instance(ReservoirSpec{}, Mode::thermal, 4, 0.05);
  EXPECT_GE(mean_s(run(in, gibbs_state(in.model.space, 0.3).matrix(), 3)), 0.0);
}

TEST(Oracle, NaAdSplit) {
  for (Mode mode : {Mode::thermal, Mode::squeezed}) {
    const Instance in = make_instance(squeezed_spec(0.9), mode, 5, 0.05);
    std::mt19937_64 gen(3);
    const Enumeration e = run(in, random_full_rank(6, gen), 2);
    const SplitReport r = verify_na_ad_split(e, in.kraus, in.tables);
    EXPECT_EQ(r.max_abs_s_ad, 0.0);
    EXPECT_LT(r.na_integral.deviation, 1e-10);
    EXPECT_LE(r.max_dual_deviation, 1e-12);
    EXPECT_LT(r.max_na_detailed_residual, 1e-8);
    EXPECT_TRUE(r.ok);
  }
}

TEST(Oracle, RandomInstancesSatisfyBothTheorems) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> beta(0.8, 4.0), amp(0.0, 0.5), phase(0.0, 6.28);
  int done = 0;
  for (int trial = 0; trial < 40 && done < 12; ++trial) {
    ReservoirSpec s;
    s.beta1 = beta(gen) + 1.0;
    s.beta2 = beta(gen) * 0.5;
    s.r1 = amp(gen);
    s.r2 = amp(gen);
    s.theta = phase(gen);
    const Mode mode = trial % 2 ? Mode::squeezed : Mode::thermal;
    std::optional<Instance> in;
    try {
      in = make_instance(s, mode, 4, 0.02);
    } catch (const std::exception&) {
      continue;
    }
    const Enumeration e = run(*in, random_full_rank(5, gen), 3);
    const DetailedFtResult d = verify_detailed_ft(e.trajectories);
    EXPECT_LT(d.max_residual, 1e-8) << trial;
    EXPECT_EQ(d.absolutely_irreversible, 0u);
    EXPECT_LT(verify_integral_ft(e.trajectories).deviation, 1e-10) << trial;
    ++done;
  }
  EXPECT_EQ(done, 12);
}

TEST(Oracle, FaultInjectionIsDetected) {
  const Instance in = make_instance(ReservoirSpec{}, Mode::thermal, 4, 0.05);
  EntropyTables faulty = in.tables;
  at(faulty.sigma, Jump::left) *= 0.5;
  const Matrix rho0 = steady_state(in.model).rho.matrix();
  Enumeration e = enumerate_forward(rho0, 3, in.kraus, faulty);
  fill_backward_probabilities(e, backward_kraus(in.kraus, in.tables.sigma));
  EXPECT_GT(verify_detailed_ft(e.trajectories).max_residual, 1e-3);
  EXPECT_FALSE(verify_na_ad_split(e, in.kraus, faulty).ok);
}

TEST(Oracle, PureInitialStateIsAbsolutelyIrreversible) {
  // Backward paths ending outside the vacuum have no forward image. Every
  // forward path still has P~ > 0 (rho_tau is full rank), so the detailed
  // relation holds path by path and the missing mass shows up in the IFT.
  const Instance in = make_instance(ReservoirSpec{}, Mode::thermal, 4, 0.05);
  const Enumeration e = run(in, vacuum_state(in.model.space).matrix(), 3);
  const DetailedFtResult d = verify_detailed_ft(e.trajectories);
  EXPECT_EQ(d.absolutely_irreversible, 0u);
  EXPECT_LT(d.max_residual, 1e-10);
  EXPECT_LT(verify_integral_ft(e.trajectories).value, 1.0 - 1e-6);
}

TEST(Oracle, ScaleBound) {
  const Instance in = make_instance(ReservoirSpec{}, Mode::thermal, 4, 0.05);
  const Matrix rho0 = steady_state(in.model).rho.matrix();
  EXPECT_THROW(enumerate_forward(rho0, 14, in.kraus, in.tables), ScaleError);
  EXPECT_THROW(enumerate_forward(rho0, -1, in.kraus, in.tables), std::invalid_argument);
}
