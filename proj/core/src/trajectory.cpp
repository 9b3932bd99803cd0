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

#include "demon/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace demon {

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x64656d6fu};
  engine_.seed(seq);
}

namespace {

constexpr double kMinSampledEigenvalue = 1e-14;
constexpr double kNormUnderflow = 1e-300;
constexpr double kSparseFill = 0.25;

double safe_log(double p) { return std::log(std::max(p, std::numeric_limits<double>::min())); }

long checked_steps(double tau, double dt, const KrausSet& kraus) {
  if (!(dt > 0.0) || !(tau >= 0.0)) {
    throw std::invalid_argument("trajectory: need dt > 0 and tau >= 0");
  }
  if (std::abs(kraus.dt - dt) > 1e-12 * dt) {
    throw std::invalid_argument("trajectory: Kraus set was built for a different dt");
  }
  const double ratio = tau / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("trajectory: dt must divide tau");
  }
  return static_cast<long>(rounded);
}

}  // namespace

EntropyTables EntropyTables::reversed() const {
  EntropyTables out;
  for (std::size_t i = 0; i < 3; ++i) {
    out.sigma[i] = -sigma[i];
    out.phi[i] = -phi[i];
  }
  return out;
}

EntropyLedger make_ledger(double p_initial, double p_final, std::span<const Jump> kinds,
                          const EntropyTables& tables, std::optional<double> heat_quantum) {
  EntropyLedger l;
  l.delta_s_sys = safe_log(p_initial) - safe_log(p_final);
  for (Jump k : kinds) {
    l.sigma_env_total += at(tables.sigma, k);
    l.delta_phi_total += at(tables.phi, k);
    if (k == Jump::left) ++l.n_left;
    if (k == Jump::right) ++l.n_right;
  }
  l.s_tot = l.delta_s_sys + l.sigma_env_total;
  l.s_na = l.delta_s_sys - l.delta_phi_total;
  l.s_ad = l.sigma_env_total + l.delta_phi_total;
  if (heat_quantum) l.q = *heat_quantum * static_cast<double>(l.n_right - l.n_left);
  return l;
}

Outcome measure_in_eigenbasis(const Eigenbasis& basis, Rng& rng) {
  double total = 0.0;
  for (Index i = 0; i < basis.values.size(); ++i) {
    if (basis.values[i] >= kMinSampledEigenvalue) total += basis.values[i];
  }
  const double u = rng.uniform() * total;
  double acc = 0.0;
  Index last = 0;
  for (Index i = 0; i < basis.values.size(); ++i) {
    if (basis.values[i] < kMinSampledEigenvalue) continue;
    last = i;
    acc += basis.values[i];
    if (u < acc) break;
  }
  return {last, basis.values[last], basis.vectors.col(last)};
}

Outcome measure_in_eigenbasis(const Matrix& rho, Rng& rng) {
  return measure_in_eigenbasis(hermitian_eigenbasis(rho), rng);
}

void TrajectorySampler::Op::apply(const Vector& in, Vector& out) const {
  if (const auto* dense = std::get_if<Matrix>(&m)) {
    out.noalias() = *dense * in;
  } else {
    out.noalias() = std::get<Eigen::SparseMatrix<Complex>>(m) * in;
  }
}

TrajectorySampler::TrajectorySampler(const Matrix& rho_initial, const Matrix& rho_final,
                                     KrausSet kraus, EntropyTables tables, long steps,
                                     std::optional<double> heat_quantum, bool reversed)
    : initial_(hermitian_eigenbasis(rho_initial)),
      final_(hermitian_eigenbasis(rho_final)),
      kraus_(std::move(kraus)),
      tables_(tables),
      steps_(steps),
      heat_quantum_(heat_quantum),
      reversed_(reversed) {
  if (steps < 0) throw std::invalid_argument("TrajectorySampler: steps must be >= 0");
  for (Jump k : kJumps) {
    const Matrix& m = kraus_.op(k);
    const Index nnz = (m.array() != Complex(0.0, 0.0)).count();
    if (static_cast<double>(nnz) < kSparseFill * static_cast<double>(m.size())) {
      ops_[static_cast<std::size_t>(k)].m = Eigen::SparseMatrix<Complex>(m.sparseView());
    } else {
      ops_[static_cast<std::size_t>(k)].m = m;
    }
  }
}

template <typename OnJump>
TrajectoryRecord TrajectorySampler::run(Rng& rng, Vector* initial_state, Vector* final_state,
                                        OnJump&& on_jump) const {
  const Outcome start = measure_in_eigenbasis(initial_, rng);
  if (initial_state) *initial_state = start.state;

  const bool exact = kraus_.normalization == Normalization::exact;
  Vector psi = start.state;
  Vector v_left(psi.size()), v_right(psi.size()), v_none(psi.size());
  std::vector<Jump> kinds;
  const auto& op = [this](Jump k) -> const Op& { return ops_[static_cast<std::size_t>(k)]; };

  for (long step = 0; step < steps_; ++step) {
    op(Jump::left).apply(psi, v_left);
    op(Jump::right).apply(psi, v_right);
    const double p_left = v_left.squaredNorm();
    const double p_right = v_right.squaredNorm();
    double p_none = 0.0;
    if (!exact) {
      op(Jump::none).apply(psi, v_none);
      p_none = v_none.squaredNorm();
    }
    const double total = exact ? 1.0 : p_left + p_right + p_none;
    const double u = rng.uniform() * total;
    Vector* chosen;
    Jump kind;
    if (u < p_left) {
      chosen = &v_left;
      kind = Jump::left;
    } else if (u < p_left + p_right) {
      chosen = &v_right;
      kind = Jump::right;
    } else {
      if (exact) op(Jump::none).apply(psi, v_none);
      chosen = &v_none;
      kind = Jump::none;
    }
    const double norm = chosen->norm();
    if (!(norm > kNormUnderflow)) {
      throw std::runtime_error("trajectory: conditional state norm underflow");
    }
    psi = *chosen / norm;
    if (kind != Jump::none) {
      kinds.push_back(kind);
      on_jump(JumpEvent{(static_cast<double>(step) + 0.5) * kraus_.dt, kind});
    }
  }

  // Final projective measurement in the eigenbasis of rho_final.
  const RealVector weights = (final_.vectors.adjoint() * psi).cwiseAbs2();
  const double u = rng.uniform() * weights.sum();
  double acc = 0.0;
  Index m = weights.size() - 1;
  for (Index i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) {
      m = i;
      break;
    }
  }
  if (final_state) *final_state = final_.vectors.col(m);

  TrajectoryRecord rec;
  rec.initial_index = start.index;
  rec.final_index = m;
  rec.ledger = make_ledger(start.probability, final_.values[m], kinds, tables_, heat_quantum_);
  return rec;
}

std::pair<Trajectory, EntropyLedger> TrajectorySampler::sample(Rng& rng, SeedInfo seed) const {
  Trajectory traj;
  Vector initial_state;
  Vector final_state;
  const TrajectoryRecord rec = run(rng, &initial_state, &final_state,
                                   [&](const JumpEvent& e) { traj.jumps.push_back(e); });
  traj.initial = {rec.initial_index, initial_.values[rec.initial_index], initial_state};
  traj.final = {rec.final_index, final_.values[rec.final_index], final_state};
  traj.tau = static_cast<double>(steps_) * kraus_.dt;
  traj.mode = kraus_.mode;
  traj.seed = seed;
  traj.reversed = reversed_;
  return {std::move(traj), rec.ledger};
}

TrajectoryRecord TrajectorySampler::sample_record(Rng& rng) const {
  return run(rng, nullptr, nullptr, [](const JumpEvent&) {});
}

std::pair<Trajectory, EntropyLedger> sample_forward(const Matrix& rho0, double tau, double dt,
                                                    const KrausSet& kraus, const Matrix& rho_tau,
                                                    const EntropyTables& tables, Rng& rng,
                                                    std::optional<double> heat_quantum) {
  const long steps = checked_steps(tau, dt, kraus);
  TrajectorySampler sampler(rho0, rho_tau, kraus, tables, steps, heat_quantum, false);
  return sampler.sample(rng);
}

std::pair<Trajectory, EntropyLedger> sample_backward(const Matrix& rho_tau, double tau, double dt,
                                                     const KrausSet& backward,
                                                     const Matrix& rho0,
                                                     const EntropyTables& tables, Rng& rng,
                                                     std::optional<double> heat_quantum) {
  const long steps = checked_steps(tau, dt, backward);
  std::optional<double> reversed_heat;
  if (heat_quantum) reversed_heat = -*heat_quantum;
  TrajectorySampler sampler(time_reverse(rho_tau), time_reverse(rho0), backward,
                            tables.reversed(), steps, reversed_heat, true);
  return sampler.sample(rng);
}

namespace {

struct DecayBasis {
  RealVector rates;     // eigenvalues of the decay operator in the preferred basis
  RealVector weights;   // |c_n|^2
  Vector coefficients;  // c = S^dagger psi
};

DecayBasis decay_basis(const Vector& psi, const JumpModel& model) {
  DecayBasis b;
  const Matrix g = model.squeeze.adjoint() * model.decay_operator() * model.squeeze;
  b.rates = g.diagonal().real().cwiseMax(0.0);
  b.coefficients = model.squeeze.adjoint() * psi.normalized();
  b.weights = b.coefficients.cwiseAbs2();
  return b;
}

double survival(const DecayBasis& b, double t) {
  double s = 0.0;
  for (Index n = 0; n < b.rates.size(); ++n) s += b.weights[n] * std::exp(-b.rates[n] * t);
  return s;
}

}  // namespace

WaitingTime sample_waiting_time(const Vector& psi, const JumpModel& model, Rng& rng) {
  const DecayBasis b = decay_basis(psi, model);
  const double u = rng.uniform();
  double never = 0.0;
  for (Index n = 0; n < b.rates.size(); ++n) {
    if (b.rates[n] == 0.0) never += b.weights[n];
  }
  if (never >= u || b.rates.maxCoeff() == 0.0) {
    return {std::numeric_limits<double>::infinity(), Jump::none};
  }
  double lo = 0.0;
  double hi = 1.0 / b.rates.maxCoeff();
  while (survival(b, hi) > u) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (survival(b, mid) > u ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);

  Vector decayed = b.coefficients;
  for (Index n = 0; n < decayed.size(); ++n) decayed[n] *= std::exp(-0.5 * b.rates[n] * t);
  const Vector evolved = model.squeeze * decayed;
  const double w_left = model.bath.gamma_left * (model.jump * evolved).squaredNorm();
  const double w_right = model.bath.gamma_right * (model.jump.adjoint() * evolved).squaredNorm();
  const Jump kind = rng.uniform() * (w_left + w_right) < w_left ? Jump::left : Jump::right;
  return {t, kind};
}

std::vector<JumpEvent> sample_continuous_jumps(const Vector& psi0, double tau,
                                               const JumpModel& model, Rng& rng) {
  std::vector<JumpEvent> events;
  Vector psi = psi0.normalized();
  double t = 0.0;
  for (;;) {
    const WaitingTime w = sample_waiting_time(psi, model, rng);
    if (!(t + w.wait <= tau)) break;
    t += w.wait;
    // No-jump evolution up to the jump, then the jump itself.
    const DecayBasis b = decay_basis(psi, model);
    Vector decayed = b.coefficients;
    for (Index n = 0; n < decayed.size(); ++n) decayed[n] *= std::exp(-0.5 * b.rates[n] * w.wait);
    psi = (model.jump_operator(w.kind) * (model.squeeze * decayed)).normalized();
    events.push_back({t, w.kind});
  }
  return events;
}

std::vector<TrajectoryRecord> run_ensemble(const TrajectorySampler& sampler, std::size_t count,
                                           std::uint64_t master_seed, unsigned workers) {
  std::vector<TrajectoryRecord> out(count);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  constexpr std::size_t kChunk = 64;
  auto work = [&] {
    try {
      for (;;) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= count) return;
        const std::size_t end = std::min(count, begin + kChunk);
        for (std::size_t i = begin; i < end; ++i) {
          Rng rng(master_seed, i);
          out[i] = sampler.sample_record(rng);
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(count);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace demon
