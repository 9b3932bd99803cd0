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

#include "demon/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "demon/errors.hpp"

namespace demon {

FockSpace::FockSpace(int n_max) : n_max_(n_max) {
  if (n_max < 1) {
    throw std::invalid_argument("FockSpace: n_max must be >= 1, got " + std::to_string(n_max));
  }
}

TruncatedOperator identity(const FockSpace& space) {
  return {space, Matrix::Identity(space.dim(), space.dim())};
}

TruncatedOperator lowering(const FockSpace& space) {
  Matrix a = Matrix::Zero(space.dim(), space.dim());
  for (Index n = 1; n < space.dim(); ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return {space, a};
}

TruncatedOperator raising(const FockSpace& space) { return lowering(space).adjoint(); }

TruncatedOperator number_operator(const FockSpace& space) {
  Matrix n = Matrix::Zero(space.dim(), space.dim());
  for (Index k = 0; k < space.dim(); ++k) n(k, k) = static_cast<double>(k);
  return {space, n};
}

TruncatedOperator squeeze_operator(const FockSpace& space, double r, double theta,
                                   double tolerance) {
  if (!std::isfinite(r) || !std::isfinite(theta)) {
    throw std::invalid_argument("squeeze_operator: r and theta must be finite");
  }
  const Matrix a = lowering(space).matrix;
  const Matrix a2 = a * a;
  const Complex phase = std::polar(1.0, theta);
  const Matrix generator = (0.5 * r) * (a2 * std::conj(phase) - a2.adjoint() * phase);
  TruncatedOperator s{space, expm(generator)};
  const double defect = unitarity_defect(s);
  if (defect > tolerance) {
    throw TruncationError("squeeze_operator: unitarity defect " + std::to_string(defect) +
                          " exceeds tolerance");
  }
  return s;
}

double unitarity_defect(const TruncatedOperator& s) {
  const Index half = std::max<Index>(1, s.space.dim() / 2);
  const Matrix product = s.matrix.adjoint() * s.matrix;
  return max_abs(product.topLeftCorner(half, half) - Matrix::Identity(half, half));
}

double bogoliubov_defect(const TruncatedOperator& s, double r, double theta, Index levels) {
  const Matrix a = lowering(s.space).matrix;
  const Matrix expected = a * std::cosh(r) + a.adjoint() * (std::sinh(r) * std::polar(1.0, theta));
  const Matrix actual = bogoliubov_lowering(s).matrix;
  const Index block = std::clamp<Index>(levels, 1, s.space.dim());
  return max_abs((actual - expected).topLeftCorner(block, block));
}

TruncatedOperator bogoliubov_lowering(const TruncatedOperator& s) {
  const Matrix a = lowering(s.space).matrix;
  return {s.space, s.matrix * a * s.matrix.adjoint()};
}

std::pair<TruncatedOperator, TruncatedOperator> quadratures(const FockSpace& space,
                                                            double theta) {
  const Matrix a = lowering(space).matrix;
  const Complex half_phase = std::polar(1.0, 0.5 * theta);
  const Matrix up = a.adjoint() * half_phase;
  const Matrix down = a * std::conj(half_phase);
  const double norm = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  return {TruncatedOperator{space, norm * (up + down)},
          TruncatedOperator{space, (i * norm) * (up - down)}};
}

int adequate_n_max(double mean_occupation, double r) {
  const double s = std::sinh(r);
  return static_cast<int>(std::ceil(10.0 * (mean_occupation + s * s) + 20.0));
}

}  // namespace demon
