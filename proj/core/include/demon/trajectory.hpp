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

// trajectory.hpp — quantum-jump trajectory sampling with entropy bookkeeping
//
// A trajectory is {n, (k_1, t_1), ..., (k_N, t_N), m}: a projective
// measurement in the eigenbasis of rho_0, a record of monitored jumps and a
// final projective measurement in the eigenbasis of rho_tau.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Sparse>

#include "demon/dynamics.hpp"
#include "demon/linalg.hpp"
#include "demon/reservoir.hpp"
#include "demon/rng.hpp"

namespace demon {

struct Outcome {
  Index index = 0;
  double probability = 0.0;  // eigenvalue of the measured density matrix
  Vector state;
};

struct JumpEvent {
  double time;
  Jump kind;
};

struct SeedInfo {
  std::uint64_t master_seed = 0;
  std::uint64_t index = 0;
};

struct Trajectory {
  Outcome initial;
  std::vector<JumpEvent> jumps;
  Outcome final;
  double tau = 0.0;
  Mode mode = Mode::thermal;
  SeedInfo seed;
  // Backward trajectories keep the forward labels of the operations (M~_k
  // recorded as k) in backward-time order.
  bool reversed = false;
};

// All entropies in nats.
struct EntropyLedger {
  double delta_s_sys = 0.0;      // ln p_n - ln p*_m
  double sigma_env_total = 0.0;  // sum_j sigma^E_{k_j}
  double delta_phi_total = 0.0;  // sum_j Delta phi_{k_j}
  double s_tot = 0.0;            // delta_s_sys + sigma_env_total
  double s_na = 0.0;             // delta_s_sys - delta_phi_total
  double s_ad = 0.0;             // sigma_env_total + delta_phi_total
  long n_left = 0;
  long n_right = 0;
  std::optional<double> q;  // omega (n_right - n_left); thermal mode only
};

struct EntropyTables {
  JumpTable sigma{};
  JumpTable phi{};

  static EntropyTables from(const DerivedBath& bath) { return {bath.sigma, bath.phi}; }
  // Tables of the backward process, whose operation M~_k carries -sigma_k.
  EntropyTables reversed() const;
};

// `kinds` may contain Jump::none entries; they contribute nothing.
// `heat_quantum` enables q (pass omega in thermal mode).
EntropyLedger make_ledger(double p_initial, double p_final, std::span<const Jump> kinds,
                          const EntropyTables& tables,
                          std::optional<double> heat_quantum = std::nullopt);

// Samples an eigenstate with probability equal to its eigenvalue.
// Eigenvalues below 1e-14 are never sampled.
Outcome measure_in_eigenbasis(const Eigenbasis& basis, Rng& rng);
Outcome measure_in_eigenbasis(const Matrix& rho, Rng& rng);

struct TrajectoryRecord {
  Index initial_index = 0;
  Index final_index = 0;
  EntropyLedger ledger;
};

// Fixed-step sampler for one process (forward or backward). Immutable after
// construction; sample() may be called concurrently with distinct Rngs.
class TrajectorySampler {
 public:
  TrajectorySampler(const Matrix& rho_initial, const Matrix& rho_final, KrausSet kraus,
                    EntropyTables tables, long steps,
                    std::optional<double> heat_quantum = std::nullopt, bool reversed = false);

  std::pair<Trajectory, EntropyLedger> sample(Rng& rng, SeedInfo seed = {}) const;
  TrajectoryRecord sample_record(Rng& rng) const;

  const Eigenbasis& initial_basis() const { return initial_; }
  const Eigenbasis& final_basis() const { return final_; }
  const KrausSet& kraus() const { return kraus_; }
  long steps() const { return steps_; }

 private:
  // Sparse copies are used for operators with few nonzeros (thermal mode).
  struct Op {
    std::variant<Matrix, Eigen::SparseMatrix<Complex>> m;
    void apply(const Vector& in, Vector& out) const;
  };

  template <typename OnJump>
  TrajectoryRecord run(Rng& rng, Vector* initial_state, Vector* final_state,
                       OnJump&& on_jump) const;

  Eigenbasis initial_;
  Eigenbasis final_;
  KrausSet kraus_;
  std::array<Op, 3> ops_;
  EntropyTables tables_;
  long steps_;
  std::optional<double> heat_quantum_;
  bool reversed_;
};

// Forward process: measure rho0, evolve tau/dt channel steps, measure rho_tau.
// Throws std::invalid_argument unless kraus.dt == dt and tau/dt is integral.
std::pair<Trajectory, EntropyLedger> sample_forward(const Matrix& rho0, double tau, double dt,
                                                    const KrausSet& kraus, const Matrix& rho_tau,
                                                    const EntropyTables& tables, Rng& rng,
                                                    std::optional<double> heat_quantum = {});

// Backward process: starts from Theta rho_tau Theta^dagger, runs the backward
// channel and measures in the eigenbasis of Theta rho0 Theta^dagger.
// `tables` are the forward tables.
std::pair<Trajectory, EntropyLedger> sample_backward(const Matrix& rho_tau, double tau, double dt,
                                                     const KrausSet& backward,
                                                     const Matrix& rho0,
                                                     const EntropyTables& tables, Rng& rng,
                                                     std::optional<double> heat_quantum = {});

struct WaitingTime {
  double wait;  // +inf when the state never jumps
  Jump kind;    // Jump::none when wait is infinite
};

// Exact continuous-time waiting time to the next jump from |psi>: the survival
// probability ||exp(-i H_eff t) psi||^2 is inverted by bisection (tolerance
// 1e-12), then the jump kind is drawn with weight Gamma_k ||J_k psi'||^2.
WaitingTime sample_waiting_time(const Vector& psi, const JumpModel& model, Rng& rng);

// Continuous-time jump record on [0, tau] built from repeated waiting times.
std::vector<JumpEvent> sample_continuous_jumps(const Vector& psi0, double tau,
                                               const JumpModel& model, Rng& rng);

// Samples `count` trajectories with streams (master_seed, i) on `workers`
// threads; the result is ordered by trajectory index.
std::vector<TrajectoryRecord> run_ensemble(const TrajectorySampler& sampler, std::size_t count,
                                           std::uint64_t master_seed, unsigned workers = 1);

}  // namespace demon
