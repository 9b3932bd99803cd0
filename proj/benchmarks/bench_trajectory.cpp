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

// bench_trajectory.cpp — sampler throughput

#include <benchmark/benchmark.h>

#include "demon/demon.hpp"

using namespace demon;

namespace {

struct Fixture {
  KrausSet kraus;
  EntropyTables tables;
  Matrix rho0, rho_tau;
  long steps;

  Fixture(int n_max, long steps_) : steps(steps_) {
    const JumpModel m = make_jump_model(ReservoirSpec{}, FockSpace(n_max), Mode::thermal);
    kraus = kraus_step(m, 0.01, Normalization::exact);
    tables = EntropyTables::from(m.bath);
    rho0 = gibbs_state(m.space, 2.0).matrix();
    rho_tau = hermitian_part(propagate_channel(kraus, rho0, steps));
  }
};

void BM_SampleOne(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)), 200);
  const TrajectorySampler sampler(f.rho0, f.rho_tau, f.kraus, f.tables, f.steps);
  Rng rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SampleOne)->Arg(10)->Arg(22);

void BM_Ensemble(benchmark::State& state) {
  const Fixture f(22, 200);
  const TrajectorySampler sampler(f.rho0, f.rho_tau, f.kraus, f.tables, f.steps);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_ensemble(sampler, 2000, 7, static_cast<int>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_Ensemble)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
