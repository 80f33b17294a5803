// Copyright 2026 The reltik Authors
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

// The simplified relaxed Tikhonov model on a graph.
//
// For every edge (n, m) the constraint block
//
//        [ I_d    x_n   x_m ]
//   Q =  [ x_n^T  1     l   ]   in R^{(d+2) x (d+2)}
//        [ x_m^T  l     1   ]
//
// is PSD with rank d exactly when x_n, x_m are unit vectors and
// l = <x_n, x_m>. The relaxation keeps Q >= 0 and minimizes the linear
// objective K(x, l) = -sum_n w_n <x_n, y_n> - sum_e lambda_e l_e.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "reltik/graph.hpp"
#include "reltik/smallsym.hpp"

namespace reltik {

/// N vectors in R^d, d in {2, 3, 4}, stored contiguously.
///
/// Relaxed iterates need not be unit length; use is_unit to test.
class SphereSignal {
 public:
  SphereSignal(int dim, std::size_t count);
  SphereSignal(int dim, std::vector<double> values);

  int dim() const { return dim_; }
  std::size_t size() const { return values_.size() / dim_; }

  std::span<double> operator[](std::size_t n) { return {values_.data() + n * dim_, static_cast<std::size_t>(dim_)}; }
  std::span<const double> operator[](std::size_t n) const {
    return {values_.data() + n * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double norm(std::size_t n) const;
  bool all_finite() const;
  bool is_unit(double tol) const;

  friend bool operator==(const SphereSignal&, const SphereSignal&) = default;

 private:
  int dim_;
  std::vector<double> values_;
};

/// One scalar l_(n,m) per edge, in graph edge order.
using EdgeScalars = std::vector<double>;

/// M symmetric blocks of a common dimension, stored row-major back to back.
class BlockField {
 public:
  BlockField(int block_dim, std::size_t count);

  int block_dim() const { return dim_; }
  std::size_t size() const { return values_.size() / stride(); }
  std::size_t stride() const { return static_cast<std::size_t>(dim_) * dim_; }

  std::span<double> block(std::size_t e) { return {values_.data() + e * stride(), stride()}; }
  std::span<const double> block(std::size_t e) const { return {values_.data() + e * stride(), stride()}; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  smallsym::SymMatrix block_matrix(std::size_t e) const { return smallsym::SymMatrix(dim_, block(e)); }

 private:
  int dim_;
  std::vector<double> values_;
};

/// Sum of Frobenius inner products over all blocks.
double inner(const BlockField& a, const BlockField& b);

double dot(std::span<const double> a, std::span<const double> b);

/// Q_(n,m) as displayed above, unshifted.
smallsym::SymMatrix build_constraint_block(std::span<const double> x_n, std::span<const double> x_m, double ell);

/// True iff Q_(n,m) is PSD and has numerical rank d. Eigenvalues are
/// compared against tol * (largest eigenvalue).
bool lemma_feasibility_check(std::span<const double> x_n, std::span<const double> x_m, double ell,
                             double tol = 1e-8);

/// The shifted blocks Q_(n,m) - I for every edge.
BlockField apply_Q(const SphereSignal& x, const EdgeScalars& ell, const Graph& g);

/// Adjoint of apply_Q split into its vertex and edge components.
struct AdjointParts {
  SphereSignal x;
  EdgeScalars ell;
};
AdjointParts adjoint_Q(const BlockField& u, const Graph& g);

/// K(x, l) = -sum w_n <x_n, y_n> - sum lambda l.
double objective_K(const SphereSignal& x, const EdgeScalars& ell, const SphereSignal& y, const Weights& wt,
                   const Graph& g);

/// sum w_n/2 |x_n - y_n|^2 + sum lambda/2 |x_n - x_m|^2.
double objective_tikhonov(const SphereSignal& x, const SphereSignal& y, const Weights& wt, const Graph& g);

struct BruteForceResult {
  SphereSignal x;
  double value;
};

/// Exhaustive search of the circle-valued Tikhonov problem over a uniform
/// angle grid. `angular_step` is in radians and is rounded down so that an
/// integer number of steps covers the circle. Requires d = 2, N <= 4 and a
/// step of at most one degree; larger instances throw CapacityError.
BruteForceResult brute_force_min(const SphereSignal& y, const Weights& wt, const Graph& g, double angular_step);

// The non-simplified matrix models: blocks
//
//   [ I_d       M(x_n)    M(x_m)   ]
//   [ M(x_n)^T  I_d       M(r)^T   ]   in R^{3d x 3d},  d in {2, 4},
//   [ M(x_m)^T  M(r)      I_d      ]
//
// where M is the real matrix representation of complex numbers (d = 2) or
// quaternions (d = 4). Feasible unit points have r = M(x_m)^T x_n.

smallsym::SymMatrix build_matrix_block(std::span<const double> x_n, std::span<const double> x_m,
                                       std::span<const double> r);

/// PSD with numerical rank d, relative to the largest eigenvalue.
bool matrix_feasibility_check(std::span<const double> x_n, std::span<const double> x_m,
                              std::span<const double> r, double tol = 1e-8);

}  // namespace reltik
