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
#include <vector>

#include <gtest/gtest.h>

#include "demon/analysis.hpp"
#include "demon/errors.hpp"
#include "demon/fock.hpp"

using namespace demon;

namespace {

ReservoirSpec spec(double r1 = 0.0, double r2 = 0.0, double theta = 0.0) {
  ReservoirSpec s;
  s.r1 = r1;
  s.r2 = r2;
  s.theta = theta;
  return s;
}

std::vector<double> grid(double t_end, int n) {
  std::vector<double> t;
  for (int k = 1; k <= n; ++k) t.push_back(t_end * k / n);
  return t;
}

}  // namespace

TEST(Rates, StationaryStateHasNoFlows) {
  for (Mode m : {Mode::thermal, Mode::squeezed}) {
    const JumpModel model = make_jump_model(spec(0.3, 0.5), FockSpace(24), m);
    const Matrix pi = steady_state(model).rho.matrix();
    const RateRecord r = rates(pi, apply_liouvillian(model, pi), model);
    EXPECT_NEAR(r.s_dot, 0.0, 1e-10);
    EXPECT_NEAR(r.e_dot, 0.0, 1e-10);
    EXPECT_NEAR(r.a_dot, 0.0, 1e-10);
    EXPECT_NEAR(r.s_tot_dot, 0.0, 1e-10);
  }
}

TEST(Rates, DiagonalStateHasNoAsymmetryFlow) {
  const JumpModel model = make_jump_model(spec(), FockSpace(20), Mode::thermal);
  const Matrix rho = maximally_mixed_state(model.space, 8).matrix();
  EXPECT_EQ(rates(rho, apply_liouvillian(model, rho), model).a_dot, 0.0);
}

TEST(Rates, FrozenVacuumRelaxation) {
  // Reference: scipy expm of the superoperator, n_max = 30, t = 0.1.
  const std::vector<double> t = {0.1};
  const JumpModel th = make_jump_model(spec(), FockSpace(30), Mode::thermal);
  const RateRecord a = relaxation_rates(vacuum_state(th.space), t, th)[0];
  EXPECT_NEAR(a.s_dot, 0.0647534672677507, 1e-10);
  EXPECT_NEAR(a.e_dot, 0.009304289549609468, 1e-12);
  EXPECT_NEAR(a.s_tot_dot, 0.02939716697923473, 1e-10);
  EXPECT_GT(a.s_tot_dot, 0.0);

  const JumpModel sq = make_jump_model(spec(0.3, 0.5), FockSpace(30), Mode::squeezed);
  const RateRecord b = relaxation_rates(vacuum_state(sq.space), t, sq)[0];
  EXPECT_NEAR(b.s_dot, 0.6435555639305728, 1e-9);
  EXPECT_NEAR(b.e_dot, 0.1795129181820906, 1e-10);
  EXPECT_NEAR(b.a_dot, 0.3247080034564174, 1e-10);
  EXPECT_NEAR(b.s_tot_dot, 0.6654403006405901, 1e-9);
}

TEST(Rates, SecondLawIdentities) {
  {
    const ReservoirSpec s = spec();
    const JumpModel model = make_jump_model(s, FockSpace(30), Mode::thermal);
    for (const RateRecord& r :
         relaxation_rates(maximally_mixed_state(model.space, 8), grid(3.0, 30), model)) {
      EXPECT_GE(r.s_tot_dot, -1e-10);
      EXPECT_NEAR(r.s_tot_dot, r.s_dot - (s.beta1 - s.beta2) * r.e_dot, 1e-10);
    }
  }
  {
    const ReservoirSpec s = spec(0.3, 0.5, 0.5);
    const JumpModel model = make_jump_model(s, FockSpace(48), Mode::squeezed);
    const double ch = std::cosh(2 * model.bath.r), sh = std::sinh(2 * model.bath.r);
    for (const RateRecord& r :
         relaxation_rates(maximally_mixed_state(model.space, 8), grid(3.0, 30), model)) {
      EXPECT_GE(r.s_tot_dot, -1e-10);
      EXPECT_NEAR(r.s_tot_dot,
                  r.s_dot - model.bath.mu_eff / s.omega * (ch * r.e_dot - sh * r.a_dot), 1e-8);
    }
  }
}

TEST(Landauer, Regimes) {
  // High-entropy start: eraser.
  const ReservoirSpec s = spec();
  const JumpModel model = make_jump_model(s, FockSpace(30), Mode::thermal);
  for (const RateRecord& r :
       relaxation_rates(maximally_mixed_state(model.space, 8), grid(5.0, 50), model)) {
    const LandauerCheck c = landauer_check(r, s);
    EXPECT_EQ(c.regime, LandauerRegime::eraser);
    EXPECT_GE(c.slack, -1e-10);
  }
  // Pure start with a small bias: fridge.
  ReservoirSpec f = spec();
  f.beta1 = 1.3;
  const JumpModel fm = make_jump_model(f, FockSpace(30), Mode::thermal);
  for (const RateRecord& r : relaxation_rates(vacuum_state(fm.space), grid(0.5, 50), fm)) {
    const LandauerCheck c = landauer_check(r, f);
    EXPECT_EQ(c.regime, LandauerRegime::fridge);
    EXPECT_GE(c.slack, -1e-10);
  }
  // Stationary.
  const Matrix pi = steady_state(model).rho.matrix();
  const LandauerCheck st = landauer_check(rates(pi, apply_liouvillian(model, pi), model), s);
  EXPECT_EQ(st.regime, LandauerRegime::stationary);
  EXPECT_EQ(st.slack, 0.0);
  EXPECT_EQ(to_string(LandauerRegime::eraser), "eraser");

  RateRecord sq;
  sq.mode = Mode::squeezed;
  EXPECT_THROW(landauer_check(sq, s), std::invalid_argument);
}

TEST(Enhancements, FrozenClosedForms) {
  // Reference: mpmath, tests/oracle/reference.py.
  struct Row {
    double r1, r2, mu_star, dS, dE, dA, emax;
  };
  const Row rows[] = {
      {0.3, 0.5, 2.4006747440537067, 0.22478840930076703, 0.21060623721333476,
       0.42234129592370175, 0.3197388441232825},
      {0.0, 0.5, 4.2735824649430388, -0.035169391893356492, -0.0087540545564419998, 0.0,
       -0.0082294871297926982},
      {0.2, 0.8, 4.0122868826433844, -0.017393637038186421, 0.052075263449669278,
       0.24861981863144343, 0.10359782552814754},
      {0.0, 1.0, 4.7125387730977807, -0.057845033822336372, -0.013819322932875129, 0.0,
       -0.012274707245392492},
      {0.4, 0.2, 0.88222804350339506, 1.0475377090237188, 0.79195720280678069,
       0.52362540446082505, 1.2976877070569328},
  };
  for (const Row& r : rows) {
    const EnhancementReport e = enhancements(spec(r.r1, r.r2));
    EXPECT_NEAR(e.mu_star, r.mu_star, 1e-12);
    EXPECT_NEAR(e.delta_S_sq, r.dS, 1e-12);
    EXPECT_NEAR(e.delta_E_sq, r.dE, 1e-12);
    EXPECT_NEAR(e.delta_A_M, r.dA, 1e-12);
    EXPECT_NEAR(e.e_max_star, r.emax, 1e-12);
    EXPECT_LE(e.delta_E_sq, e.e_max_star + 1e-10);
  }
}

TEST(Enhancements, ThermalLimit) {
  const EnhancementReport z = enhancements(spec());
  EXPECT_EQ(z.delta_S_sq, 0.0);
  EXPECT_EQ(z.delta_E_sq, 0.0);
  EXPECT_EQ(z.delta_A_M, 0.0);
  const EnhancementReport e = enhancements(spec(1e-8, 1e-8));
  EXPECT_LT(std::abs(e.delta_S_sq), 1e-6);
  EXPECT_LT(std::abs(e.delta_E_sq), 1e-6);
  EXPECT_LT(std::abs(e.delta_A_M), 1e-6);
  EXPECT_LT(std::abs(e.e_max_star), 1e-6);
}

TEST(Enhancements, OneSqueezedBathBound) {
  for (double r2 : {0.1, 0.5, 0.9}) {
    const EnhancementReport e = enhancements(spec(0.0, r2));
    EXPECT_EQ(e.r, 0.0);
    EXPECT_NEAR(e.e_max_star, e.delta_S_sq / e.mu_star, 1e-15);
  }
}

TEST(Enhancements, NumericCrossCheck) {
  EnhancementOptions o;
  o.numeric_cross_check = true;
  for (double theta : {0.0, 1.1}) {
    const EnhancementReport e = enhancements(spec(0.3, 0.6, theta), o);
    ASSERT_TRUE(e.numeric.has_value());
    EXPECT_NEAR(e.numeric->delta_S_sq, e.delta_S_sq, 1e-6);
    EXPECT_NEAR(e.numeric->delta_E_sq, e.delta_E_sq, 1e-6);
    EXPECT_NEAR(e.numeric->delta_A_M, e.delta_A_M, 1e-6);
  }
}

TEST(Enhancements, OutsideTheDomain) {
  EXPECT_THROW(enhancements(spec(1.0, 0.5)), DomainError);  // mu* < 0
  ReservoirSpec s = spec(0.0, 0.3);
  s.beta1 = 1.0;
  EXPECT_THROW(enhancements(s), DomainError);  // beta1 < beta2
}

TEST(Enhancements, EntropyFunction) {
  EXPECT_NEAR(thermal_entropy(3.8), 0.10957895799287368, 1e-14);
  EXPECT_GT(thermal_entropy(0.5), thermal_entropy(1.0));
}

TEST(Ensemble, AllZeroLedgers) {
  const std::vector<EntropyLedger> l(10);
  const EnsembleSummary s = ensemble_statistics(l);
  EXPECT_EQ(s.s_tot.mean, 0.0);
  EXPECT_EQ(s.ift_tot.mean, 1.0);
  EXPECT_EQ(s.ift_tot.standard_error, 0.0);
  EXPECT_EQ(s.n_left_histogram.at(0), 10u);
  EXPECT_THROW(ensemble_statistics(std::span<const EntropyLedger>()), std::invalid_argument);
}

TEST(Ensemble, JackknifeMatchesReference) {
  const std::vector<double> x = {0.5, -1.25, 2.0, 0.125, 3.5};
  const MeanEstimate m = jackknife_mean(x);
  EXPECT_NEAR(m.mean, 0.975, 1e-15);
  EXPECT_NEAR(m.standard_error, 0.8162413858657254, 1e-14);
}

TEST(Ensemble, Histograms) {
  std::vector<EntropyLedger> l(4);
  l[1].n_left = 2;
  l[2].n_right = 1;
  l[3].n_left = 2;
  l[0].s_tot = 1.0;
  const EnsembleSummary s = ensemble_statistics(l);
  EXPECT_EQ(s.n_left_histogram.at(2), 2u);
  EXPECT_EQ(s.n_right_histogram.at(1), 1u);
  EXPECT_NEAR(s.s_tot.mean, 0.25, 1e-15);
  EXPECT_NEAR(s.ift_tot.mean, (3.0 + std::exp(-1.0)) / 4.0, 1e-15);
}
