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

// linalg.hpp — dense complex linear algebra helpers on top of Eigen

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace demon {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Eigen-decomposition of a Hermitian matrix in the fixed convention used for
// every measurement basis: eigenvalues sorted descending, and each
// eigenvector's first non-negligible component made real and positive.
struct Eigenbasis {
  RealVector values;
  Matrix vectors;  // column j pairs with values[j]
};

Eigenbasis hermitian_eigenbasis(const Matrix& h);

// exp(a) by scaling and squaring with a Pade approximant.
Matrix expm(const Matrix& a);

// Principal square root of a Hermitian positive-definite matrix. Throws
// DomainError if the smallest eigenvalue is <= 0.
Matrix sqrtm_positive(const Matrix& h);

Matrix hermitian_part(const Matrix& a);

double max_abs(const Matrix& a);

// -Tr[rho ln rho] with eigenvalues clipped at `clip` before the log. Clipped
// eigenvalues contribute nothing.
double von_neumann_entropy(const Matrix& rho, double clip = 1e-14);

// (1/2) || a - b ||_1
double trace_distance(const Matrix& a, const Matrix& b);

// Column-stacking vectorization and its inverse.
Vector vec(const Matrix& a);
Matrix unvec(const Vector& v, Index dim);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace demon
