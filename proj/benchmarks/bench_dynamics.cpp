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

// bench_dynamics.cpp — Liouvillian assembly, Kraus steps, steady state, relaxation

#include <benchmark/benchmark.h>

#include <vector>

#include "demon/demon.hpp"

using namespace demon;

namespace {

ReservoirSpec squeezed_spec() {
  ReservoirSpec s;
  s.r1 = 0.3;
  s.r2 = 0.5;
  return s;
}

void BM_Liouvillian(benchmark::State& state) {
  const JumpModel m = make_jump_model(squeezed_spec(), FockSpace(state.range(0)), Mode::squeezed);
  for (auto _ : state) benchmark::DoNotOptimize(liouvillian(m));
}
BENCHMARK(BM_Liouvillian)->Arg(6)->Arg(12)->Arg(24);

void BM_KrausStep(benchmark::State& state) {
  const JumpModel m = make_jump_model(squeezed_spec(), FockSpace(state.range(0)), Mode::squeezed);
  for (auto _ : state) benchmark::DoNotOptimize(kraus_step(m, 0.01, Normalization::exact));
}
BENCHMARK(BM_KrausStep)->Arg(6)->Arg(12)->Arg(24);

void BM_SteadyState(benchmark::State& state) {
  const JumpModel m = make_jump_model(squeezed_spec(), FockSpace(state.range(0)), Mode::squeezed);
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(m));
}
BENCHMARK(BM_SteadyState)->Arg(12)->Arg(23);

void BM_Relaxation(benchmark::State& state) {
  const JumpModel m = make_jump_model(squeezed_spec(), FockSpace(state.range(0)), Mode::squeezed);
  std::vector<double> times;
  for (int k = 1; k <= 20; ++k) times.push_back(0.05 * k);
  const DensityMatrix rho0 = vacuum_state(m.space);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_master(rho0, times, m));
}
BENCHMARK(BM_Relaxation)->Arg(12)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
