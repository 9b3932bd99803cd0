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

// dynamics.hpp — Lindblad generators, discrete-time Kraus channels and
// steady states of the memory in thermal and squeezed modes.
//
// Both modes share one structure: jumps J (left, rate Gamma_left) and J^dagger
// (right, rate Gamma_right) with J = a_L (thermal) or J = R = S a_L S^dagger
// (squeezed). Superoperators act on column-stacked density matrices.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "demon/fock.hpp"
#include "demon/linalg.hpp"
#include "demon/reservoir.hpp"

namespace demon {

enum class Normalization { first_order, exact };

// Hermitian (1e-12), unit trace (1e-10), min eigenvalue >= -1e-10.
class DensityMatrix {
 public:
  // Throws std::invalid_argument if any invariant fails.
  DensityMatrix(FockSpace space, Matrix matrix);

  const FockSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  FockSpace space_;
  Matrix matrix_;
};

DensityMatrix vacuum_state(const FockSpace& space);
// Uniform mixture of |0>, ..., |levels-1>.
DensityMatrix maximally_mixed_state(const FockSpace& space, int levels);
// exp(-mu0 N) / Z on the truncated space.
DensityMatrix gibbs_state(const FockSpace& space, double mu0);

// Complex conjugation in the Fock basis (the time-reversal Theta).
Matrix time_reverse(const Matrix& rho);

struct JumpModel {
  ReservoirSpec spec;
  FockSpace space;
  DerivedBath bath;
  Matrix squeeze;  // S(xi); identity in thermal mode
  Matrix jump;     // J

  Mode mode() const { return bath.mode; }
  // J for left, J^dagger for right, identity for none.
  Matrix jump_operator(Jump k) const;
  // Gamma_left J^dagger J + Gamma_right J J^dagger.
  Matrix decay_operator() const;
};

JumpModel make_jump_model(const ReservoirSpec& spec, const FockSpace& space, Mode mode,
                          MomentConvention conv = {});

// L(rho) applied directly to a density matrix.
Matrix apply_liouvillian(const JumpModel& model, const Matrix& rho);

// dim^2 x dim^2 column-stacked representation of L.
Matrix liouvillian(const JumpModel& model);
Matrix liouvillian(const ReservoirSpec& spec, const FockSpace& space, Mode mode);

struct KrausSet {
  std::array<Matrix, 3> ops;
  double dt = 0.0;
  Mode mode = Mode::thermal;
  Normalization normalization = Normalization::exact;

  const Matrix& op(Jump k) const { return ops[static_cast<std::size_t>(k)]; }
  Matrix& op(Jump k) { return ops[static_cast<std::size_t>(k)]; }

  // max |sum_k M_k^dagger M_k - I|.
  double completeness_defect() const;
};

// M_left = sqrt(dt Gamma_left) J, M_right = sqrt(dt Gamma_right) J^dagger and
// M_none = I - dt/2 G (first_order) or sqrt(I - dt G) (exact), G the decay
// operator. Requires dt > 0 and dt max(Gamma) n_max < 0.5; throws
// std::invalid_argument otherwise and DomainError if I - dt G is not
// positive definite.
KrausSet kraus_step(const JumpModel& model, double dt, Normalization normalization);
KrausSet kraus_step(const ReservoirSpec& spec, const FockSpace& space, double dt, Mode mode,
                    Normalization normalization);

// M~_k = exp(-sigma_k / 2) Theta M_k^dagger Theta^dagger.
KrausSet backward_kraus(const KrausSet& kraus, const JumpTable& sigma);

// D_k = exp(-(sigma_k + phi_k) / 2) M_k. In this model the dual process is the
// forward process itself; throws VerificationError if max |D_k - M_k| > tol.
KrausSet dual_kraus(const KrausSet& kraus, const JumpTable& sigma, const JumpTable& phi,
                    double tol = 1e-12);

// D~_k = exp(phi_k / 2) Theta M_k^dagger Theta^dagger.
KrausSet dual_reverse_kraus(const KrausSet& kraus, const JumpTable& phi);

Matrix apply_channel(const KrausSet& kraus, const Matrix& rho);
Matrix propagate_channel(const KrausSet& kraus, const Matrix& rho, long steps);

struct MasterEvolution {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  double max_top_population = 0.0;  // population of the top 10% of levels
  bool truncation_warning = false;  // max_top_population > 1e-8
};

// rho_t = exp(t L) rho_0 at each requested time (ascending, >= 0). Small
// spaces use the dense superoperator exponential; larger ones apply a
// scaled Taylor series to the state directly.
MasterEvolution evolve_master(const DensityMatrix& rho0, std::span<const double> times,
                              const JumpModel& model);

struct SteadyStateOptions {
  bool cross_validate = true;     // compare against the Liouvillian null vector
  bool allow_degenerate = false;  // mu_eff ~ 0: return I/dim instead of throwing
  Index max_cross_validate_dim = 60;
};

struct SteadyState {
  DensityMatrix rho;
  double mu_eff;
  double Z;  // (1 - e^{-mu_eff})^{-1}, the untruncated partition value
  Mode mode;
  double residual;  // max |L(rho)|
  std::optional<double> numeric_trace_distance;
  bool degenerate = false;
};

// S exp(-mu_eff N) S^dagger / Z on the truncated space. Throws
// DegenerateError when mu_eff <= 1e-12 unless allow_degenerate is set.
SteadyState steady_state(const JumpModel& model, SteadyStateOptions options = {});

// Unit-trace null vector of a column-stacked Liouvillian.
Matrix numeric_steady_state(const Matrix& superop, Index dim);

// Ratio of the second-smallest to the largest singular value of L. Values
// above ~1e-6 mean a one-dimensional null space.
double steady_state_gap(const Matrix& superop);

}  // namespace demon
