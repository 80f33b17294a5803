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

// Dense symmetric linear algebra for the small blocks (dimension <= 12) that
// appear in the relaxed models.

#pragma once

#include <array>
#include <span>

namespace reltik::smallsym {

inline constexpr int kMaxDim = 12;

/// Real symmetric matrix of dimension 1..kMaxDim, stored row-major.
class SymMatrix {
 public:
  /// Zero matrix.
  explicit SymMatrix(int dim);

  /// Copies dim*dim row-major values and symmetrizes them by (A + A^T) / 2.
  SymMatrix(int dim, std::span<const double> row_major);

  static SymMatrix identity(int dim);
  static SymMatrix diagonal(std::span<const double> diag);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return a_[i * dim_ + j]; }

  /// Sets both (i, j) and (j, i).
  void set(int i, int j, double v) {
    a_[i * dim_ + j] = v;
    a_[j * dim_ + i] = v;
  }

  std::span<const double> data() const { return {a_.data(), static_cast<std::size_t>(dim_ * dim_)}; }

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }

  double frobenius_norm() const;
  bool all_finite() const;

 private:
  int dim_;
  std::array<double, kMaxDim * kMaxDim> a_{};
};

/// A = V diag(values) V^T with orthonormal V; values ascending.
struct EigenDecomposition {
  int dim = 0;
  std::array<double, kMaxDim> values{};
  /// Row-major; column j is the eigenvector of values[j].
  std::array<double, kMaxDim * kMaxDim> vectors{};

  double vector_entry(int row, int col) const { return vectors[row * dim + col]; }
};

/// Cyclic Jacobi eigendecomposition. Throws std::invalid_argument on
/// non-finite input.
EigenDecomposition sym_eig(const SymMatrix& a);

/// Frobenius-nearest point of {A symmetric : A >= -I}: eigenvalues below -1
/// are raised to -1.
SymMatrix project_shifted_psd(const SymMatrix& a);

/// Smallest eigenvalue >= -tol.
bool is_psd(const SymMatrix& a, double tol);

/// Number of eigenvalues with |sigma| > rel_tol * max |sigma|.
int numerical_rank(const SymMatrix& a, double rel_tol);

/// B - C^T A^{-1} C for the partition with A the leading k x k block.
/// Throws SingularBlockError when A has a singular value <= 1e-12.
SymMatrix schur_complement(const SymMatrix& w, int k);

// Raw kernels used by the solver hot loop. `a` is an n x n row-major
// symmetric matrix.

/// Eigenvalues ascending into `values`, eigenvectors as columns of the
/// row-major `vectors`. `a` is used as scratch and destroyed.
void eig_inplace(int n, double* a, double* values, double* vectors);

/// Replaces `a` by its projection onto the shifted PSD cone. Returns false
/// when `a` already lay in the cone and was left untouched.
bool project_shifted_psd_inplace(int n, double* a);

}  // namespace reltik::smallsym
