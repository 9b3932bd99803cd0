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

// fock.hpp — truncated Fock space of the memory ladder and its operators
//
// The memory is a semi-infinite ladder {|0>, |1>, ...}; here it is cut at
// n_max so every operator is a (n_max+1) x (n_max+1) complex matrix. The top
// level is the truncation boundary: commutation identities fail there and
// nowhere else.

#pragma once

#include <utility>

#include "demon/linalg.hpp"

namespace demon {

class FockSpace {
 public:
  // Throws std::invalid_argument for n_max < 1.
  explicit FockSpace(int n_max);

  int n_max() const { return n_max_; }
  Index dim() const { return n_max_ + 1; }

  bool operator==(const FockSpace&) const = default;

 private:
  int n_max_;
};

struct TruncatedOperator {
  FockSpace space;
  Matrix matrix;

  TruncatedOperator adjoint() const { return {space, matrix.adjoint()}; }
};

TruncatedOperator identity(const FockSpace& space);

// a_L: <n-1|a_L|n> = sqrt(n).
TruncatedOperator lowering(const FockSpace& space);

// a_R = a_L^dagger.
TruncatedOperator raising(const FockSpace& space);

// N_M = diag(0, 1, ..., n_max).
TruncatedOperator number_operator(const FockSpace& space);

// S(xi) = exp(r/2 (a_L^2 e^{-i theta} - a_R^2 e^{i theta})).
//
// The truncated generator is exactly anti-Hermitian, so S is unitary to
// rounding. Throws TruncationError when the unitarity defect on the lower
// half of the space exceeds `tolerance`.
TruncatedOperator squeeze_operator(const FockSpace& space, double r, double theta,
                                   double tolerance = 1e-8);

// max |S^dagger S - I| restricted to the lower dim/2 block.
double unitarity_defect(const TruncatedOperator& s);

// max |S a S^dagger - (a cosh r + a^dagger sinh r e^{i theta})| restricted to
// the lowest `levels` levels. Measures how faithfully the truncated S
// reproduces the infinite-dimensional canonical transformation.
double bogoliubov_defect(const TruncatedOperator& s, double r, double theta, Index levels);

// R = S a_L S^dagger, the Bogoliubov lowering operator.
TruncatedOperator bogoliubov_lowering(const TruncatedOperator& s);

// (x_{theta/2}, p_{theta/2}) with
//   x = (a_R e^{i theta/2} + a_L e^{-i theta/2}) / sqrt(2)
//   p = i (a_R e^{i theta/2} - a_L e^{-i theta/2}) / sqrt(2)
// Dimensionless, [x, p] = i away from the truncation boundary.
std::pair<TruncatedOperator, TruncatedOperator> quadratures(const FockSpace& space,
                                                            double theta);

// Rule of thumb for the truncation: n_max >= 10 (<N> + sinh^2 r) + 20.
int adequate_n_max(double mean_occupation, double r);

}  // namespace demon
