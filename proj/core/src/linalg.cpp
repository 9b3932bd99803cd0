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

#include "demon/linalg.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "demon/errors.hpp"

namespace demon {

namespace {
constexpr double kPhaseThreshold = 1e-10;
}

Eigenbasis hermitian_eigenbasis(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenbasis: eigensolver did not converge");
  }
  const Index n = h.rows();
  Eigenbasis out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    // Eigen sorts ascending.
    const Index src = n - 1 - j;
    out.values[j] = solver.eigenvalues()[src];
    Vector v = solver.eigenvectors().col(src);
    for (Index i = 0; i < n; ++i) {
      if (std::abs(v[i]) > kPhaseThreshold) {
        v *= std::conj(v[i]) / std::abs(v[i]);
        v[i] = std::abs(v[i]);
        break;
      }
    }
    out.vectors.col(j) = v;
  }
  return out;
}

Matrix expm(const Matrix& a) { return a.exp(); }

Matrix sqrtm_positive(const Matrix& h) {
  const Eigenbasis eig = hermitian_eigenbasis(h);
  const double smallest = eig.values[eig.values.size() - 1];
  if (!(smallest > 0.0)) {
    throw DomainError("sqrtm_positive: smallest eigenvalue " + std::to_string(smallest) +
                      " is not positive");
  }
  const RealVector root = eig.values.cwiseSqrt();
  return eig.vectors * root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

double max_abs(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

double von_neumann_entropy(const Matrix& rho, double clip) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(rho), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double p = solver.eigenvalues()[i];
    if (p > clip) s -= p * std::log(p);
  }
  return s;
}

double trace_distance(const Matrix& a, const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a - b), Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

Vector vec(const Matrix& a) {
  return Eigen::Map<const Vector>(a.data(), a.size());
}

Matrix unvec(const Vector& v, Index dim) {
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

}  // namespace demon
