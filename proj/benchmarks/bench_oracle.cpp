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

// bench_oracle.cpp — exact enumeration and FT verification

#include <benchmark/benchmark.h>

#include "demon/demon.hpp"

using namespace demon;

namespace {

void BM_Enumerate(benchmark::State& state) {
  ReservoirSpec s;
  s.r1 = 0.3;
  s.r2 = 0.5;
  const JumpModel m = make_jump_model(s, FockSpace(6), Mode::squeezed);
  const KrausSet k = kraus_step(m, 0.05, Normalization::exact);
  const EntropyTables t = EntropyTables::from(m.bath);
  const Matrix rho0 = steady_state(m).rho.matrix();
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Enumeration e = enumerate_forward(rho0, steps, k, t);
    fill_backward_probabilities(e, backward_kraus(k, t.sigma));
    benchmark::DoNotOptimize(verify_detailed_ft(e.trajectories));
  }
}
BENCHMARK(BM_Enumerate)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
