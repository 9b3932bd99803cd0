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

#include "demon/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>

#include "demon/errors.hpp"

namespace demon {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kPositivityTol = 1e-10;
constexpr double kTopPopulationWarn = 1e-8;
constexpr Index kDenseExpmMaxDim = 16;

}  // namespace

DensityMatrix::DensityMatrix(FockSpace space, Matrix matrix)
    : space_(space), matrix_(std::move(matrix)) {
  if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
    throw std::invalid_argument("DensityMatrix: shape does not match the Fock space");
  }
  std::ostringstream err;
  const double herm = max_abs(matrix_ - matrix_.adjoint());
  if (!(herm <= kHermitianTol)) err << "not Hermitian (" << herm << "); ";
  const double trace_error = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  if (!(trace_error <= kTraceTol)) err << "trace differs from 1 by " << trace_error << "; ";
  if (err.str().empty()) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
    const double smallest = solver.eigenvalues().minCoeff();
    if (!(smallest >= -kPositivityTol)) err << "negative eigenvalue " << smallest << "; ";
  }
  if (!err.str().empty()) throw std::invalid_argument("DensityMatrix: " + err.str());
}

DensityMatrix vacuum_state(const FockSpace& space) {
  Matrix rho = Matrix::Zero(space.dim(), space.dim());
  rho(0, 0) = 1.0;
  return {space, rho};
}

DensityMatrix maximally_mixed_state(const FockSpace& space, int levels) {
  if (levels < 1 || levels > space.dim()) {
    throw std::invalid_argument("maximally_mixed_state: levels must be in [1, dim]");
  }
  Matrix rho = Matrix::Zero(space.dim(), space.dim());
  for (int n = 0; n < levels; ++n) rho(n, n) = 1.0 / levels;
  return {space, rho};
}

DensityMatrix gibbs_state(const FockSpace& space, double mu0) {
  RealVector p(space.dim());
  for (Index n = 0; n < space.dim(); ++n) p[n] = std::exp(-mu0 * static_cast<double>(n));
  p /= p.sum();
  return {space, p.cast<Complex>().asDiagonal().toDenseMatrix()};
}

Matrix time_reverse(const Matrix& rho) { return rho.conjugate(); }

Matrix JumpModel::jump_operator(Jump k) const {
  switch (k) {
    case Jump::left:
      return jump;
    case Jump::right:
      return jump.adjoint();
    case Jump::none:
      break;
  }
  return Matrix::Identity(space.dim(), space.dim());
}

Matrix JumpModel::decay_operator() const {
  return bath.gamma_left * (jump.adjoint() * jump) + bath.gamma_right * (jump * jump.adjoint());
}

JumpModel make_jump_model(const ReservoirSpec& spec, const FockSpace& space, Mode mode,
                          MomentConvention conv) {
  DerivedBath bath = derive_bath(spec, mode, conv);
  const Matrix a = lowering(space).matrix;
  if (mode == Mode::thermal) {
    return {spec, space, bath, Matrix::Identity(space.dim(), space.dim()), a};
  }
  const TruncatedOperator s = squeeze_operator(space, bath.r, bath.theta);
  return {spec, space, bath, s.matrix, bogoliubov_lowering(s).matrix};
}

Matrix apply_liouvillian(const JumpModel& model, const Matrix& rho) {
  const Matrix& j = model.jump;
  const Matrix jd = j.adjoint();
  const Matrix jdj = jd * j;
  const Matrix jjd = j * jd;
  Matrix out = model.bath.gamma_left * (j * rho * jd - 0.5 * (jdj * rho + rho * jdj));
  out += model.bath.gamma_right * (jd * rho * j - 0.5 * (jjd * rho + rho * jjd));
  return out;
}

Matrix liouvillian(const JumpModel& model) {
  const Index d = model.space.dim();
  const Matrix id = Matrix::Identity(d, d);
  Matrix superop = Matrix::Zero(d * d, d * d);
  for (Jump k : {Jump::left, Jump::right}) {
    const double rate = model.bath.rate(k);
    if (rate == 0.0) continue;
    const Matrix l = model.jump_operator(k);
    const Matrix ldl = l.adjoint() * l;
    // vec(A rho B) = (B^T kron A) vec(rho)
    superop += rate * (kron(l.conjugate(), l) - 0.5 * kron(id, ldl) -
                       0.5 * kron(ldl.transpose(), id));
  }
  return superop;
}

Matrix liouvillian(const ReservoirSpec& spec, const FockSpace& space, Mode mode) {
  return liouvillian(make_jump_model(spec, space, mode));
}

double KrausSet::completeness_defect() const {
  Matrix sum = Matrix::Zero(ops[0].rows(), ops[0].cols());
  for (const Matrix& m : ops) sum += m.adjoint() * m;
  return max_abs(sum - Matrix::Identity(sum.rows(), sum.cols()));
}

KrausSet kraus_step(const JumpModel& model, double dt, Normalization normalization) {
  if (!(dt > 0.0)) throw std::invalid_argument("kraus_step: dt must be > 0");
  const double max_rate = std::max(model.bath.gamma_left, model.bath.gamma_right);
  if (!(dt * max_rate * model.space.n_max() < 0.5)) {
    std::ostringstream err;
    err << "kraus_step: dt * max(Gamma) * n_max = " << dt * max_rate * model.space.n_max()
        << " must stay below 0.5";
    throw std::invalid_argument(err.str());
  }
  const Index d = model.space.dim();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix g = model.decay_operator();

  KrausSet k;
  k.dt = dt;
  k.mode = model.mode();
  k.normalization = normalization;
  k.op(Jump::left) = std::sqrt(dt * model.bath.gamma_left) * model.jump;
  k.op(Jump::right) = std::sqrt(dt * model.bath.gamma_right) * model.jump.adjoint();
  if (normalization == Normalization::first_order) {
    k.op(Jump::none) = id - (0.5 * dt) * g;
  } else {
    // Built from the jump operators actually stored so that sum M^dagger M
    // closes to rounding; one Newton step cleans up the eigensolver error.
    Matrix a = id;
    for (Jump j : {Jump::left, Jump::right}) a -= k.op(j).adjoint() * k.op(j);
    a = hermitian_part(a);
    Matrix x;
    try {
      x = sqrtm_positive(a);
    } catch (const DomainError&) {
      throw DomainError("kraus_step: I - dt G is not positive definite; reduce dt");
    }
    x = hermitian_part(0.5 * (x + x.partialPivLu().solve(a)));
    k.op(Jump::none) = x;
  }
  return k;
}

KrausSet kraus_step(const ReservoirSpec& spec, const FockSpace& space, double dt, Mode mode,
                    Normalization normalization) {
  return kraus_step(make_jump_model(spec, space, mode), dt, normalization);
}

KrausSet backward_kraus(const KrausSet& kraus, const JumpTable& sigma) {
  KrausSet out = kraus;
  for (Jump k : kJumps) {
    // Theta M^dagger Theta^dagger with Theta = complex conjugation is M^T.
    out.op(k) = std::exp(-0.5 * at(sigma, k)) * kraus.op(k).transpose();
  }
  return out;
}

KrausSet dual_kraus(const KrausSet& kraus, const JumpTable& sigma, const JumpTable& phi,
                    double tol) {
  KrausSet out = kraus;
  for (Jump k : kJumps) {
    out.op(k) = std::exp(-0.5 * (at(sigma, k) + at(phi, k))) * kraus.op(k);
    const double dev = max_abs(out.op(k) - kraus.op(k));
    if (!(dev <= tol)) {
      std::ostringstream err;
      err << "dual_kraus: D_" << to_string(k) << " differs from M_" << to_string(k) << " by "
          << dev << "; the potential table is inconsistent with the entropy table";
      throw VerificationError(err.str());
    }
  }
  return out;
}

KrausSet dual_reverse_kraus(const KrausSet& kraus, const JumpTable& phi) {
  KrausSet out = kraus;
  for (Jump k : kJumps) {
    out.op(k) = std::exp(0.5 * at(phi, k)) * kraus.op(k).transpose();
  }
  return out;
}

Matrix apply_channel(const KrausSet& kraus, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& m : kraus.ops) out += m * rho * m.adjoint();
  return out;
}

Matrix propagate_channel(const KrausSet& kraus, const Matrix& rho, long steps) {
  Matrix out = rho;
  for (long s = 0; s < steps; ++s) out = apply_channel(kraus, out);
  return out;
}

namespace {

double top_population(const Matrix& rho) {
  const Index d = rho.rows();
  const Index top = std::max<Index>(1, (d + 9) / 10);
  double p = 0.0;
  for (Index n = d - top; n < d; ++n) p += rho(n, n).real();
  return p;
}

// Upper bound on the norm of L acting on matrices. J is a unitary rotation
// of the truncated a_L, so ||J||^2 = n_max.
double generator_norm_bound(const JumpModel& model) {
  const double jn2 = static_cast<double>(model.space.n_max());
  return 2.0 * (model.bath.gamma_left + model.bath.gamma_right) * jn2;
}

Matrix taylor_propagate(const JumpModel& model, const Matrix& rho, double t) {
  const double scaled = generator_norm_bound(model) * t;
  const long substeps = std::max<long>(1, static_cast<long>(std::ceil(scaled)));
  const double h = t / static_cast<double>(substeps);
  Matrix state = rho;
  for (long s = 0; s < substeps; ++s) {
    Matrix term = state;
    Matrix acc = state;
    for (int j = 1; j <= 60; ++j) {
      term = (h / j) * apply_liouvillian(model, term);
      acc += term;
      if (max_abs(term) <= 1e-17 * max_abs(acc)) break;
    }
    state = acc;
  }
  return state;
}

}  // namespace

MasterEvolution evolve_master(const DensityMatrix& rho0, std::span<const double> times,
                              const JumpModel& model) {
  if (!(rho0.space() == model.space)) {
    throw std::invalid_argument("evolve_master: state and model live on different spaces");
  }
  const Index d = model.space.dim();
  const bool dense = d <= kDenseExpmMaxDim;
  Matrix superop;
  if (dense) superop = liouvillian(model);
  // Cached by step length; steps equal to within rounding share an entry.
  std::vector<std::pair<double, Matrix>> propagators;

  MasterEvolution out;
  Matrix current = rho0.matrix();
  double t_prev = 0.0;
  for (double t : times) {
    if (!(t >= t_prev)) {
      throw std::invalid_argument("evolve_master: times must be ascending and >= 0");
    }
    const double step = t - t_prev;
    if (step > 0.0) {
      if (dense) {
        auto it = std::find_if(propagators.begin(), propagators.end(), [&](const auto& p) {
          return std::abs(p.first - step) <= 1e-13 * step;
        });
        if (it == propagators.end()) {
          propagators.emplace_back(step, expm(step * superop));
          it = std::prev(propagators.end());
        }
        current = unvec(it->second * vec(current), d);
      } else {
        current = taylor_propagate(model, current, step);
      }
      current = hermitian_part(current);
      current /= current.trace().real();
    }
    out.times.push_back(t);
    out.states.emplace_back(model.space, current);
    out.max_top_population = std::max(out.max_top_population, top_population(current));
    t_prev = t;
  }
  out.truncation_warning = out.max_top_population > kTopPopulationWarn;
  return out;
}

Matrix numeric_steady_state(const Matrix& superop, Index dim) {
  Matrix system = superop;
  Vector rhs = Vector::Zero(dim * dim);
  // Trace preservation makes the rows for diagonal entries linearly
  // dependent, so one of them can carry the normalization.
  system.row(0).setZero();
  for (Index i = 0; i < dim; ++i) system(0, i + i * dim) = 1.0;
  rhs[0] = 1.0;
  const Vector v = system.partialPivLu().solve(rhs);
  Matrix rho = hermitian_part(unvec(v, dim));
  return rho / rho.trace().real();
}

double steady_state_gap(const Matrix& superop) {
  Eigen::BDCSVD<Matrix> svd(superop);
  const RealVector& s = svd.singularValues();
  if (s.size() < 2 || s[0] == 0.0) return 0.0;
  return s[s.size() - 2] / s[0];
}

SteadyState steady_state(const JumpModel& model, SteadyStateOptions options) {
  const Index d = model.space.dim();
  const double mu_eff = model.bath.mu_eff;
  if (!(mu_eff > 1e-12)) {
    if (!options.allow_degenerate) {
      std::ostringstream err;
      err << "steady_state: mu_eff = " << mu_eff
          << " gives no normalizable steady state on the semi-infinite ladder";
      throw DegenerateError(err.str());
    }
    Matrix mixed = Matrix::Identity(d, d) / static_cast<double>(d);
    return {DensityMatrix(model.space, mixed),
            mu_eff,
            std::numeric_limits<double>::infinity(),
            model.mode(),
            max_abs(apply_liouvillian(model, mixed)),
            std::nullopt,
            true};
  }
  RealVector p(d);
  for (Index n = 0; n < d; ++n) p[n] = std::exp(-mu_eff * static_cast<double>(n));
  p /= p.sum();
  Matrix rho = model.squeeze * p.cast<Complex>().asDiagonal() * model.squeeze.adjoint();
  rho = hermitian_part(rho);
  rho /= rho.trace().real();

  std::optional<double> distance;
  if (options.cross_validate && d <= options.max_cross_validate_dim) {
    distance = trace_distance(rho, numeric_steady_state(liouvillian(model), d));
  }
  const double residual = max_abs(apply_liouvillian(model, rho));
  return {DensityMatrix(model.space, rho),
          mu_eff,
          -1.0 / std::expm1(-mu_eff),
          model.mode(),
          residual,
          distance,
          false};
}

}  // namespace demon
