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

#include "reltik/smallsym.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "reltik/error.hpp"

namespace reltik::smallsym {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("matrix dimension " + std::to_string(dim) + " outside [1, 12]");
}

// Cyclic Jacobi with the rotation applied to full rows and columns. N is a
// template parameter so the inner loops unroll for the block sizes the
// solver uses.
template <int N>
void jacobi(double* a, double* w, double* v) {
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) v[i * N + j] = i == j ? 1.0 : 0.0;

  double total = 0.0;
  for (int i = 0; i < N * N; ++i) total += a[i] * a[i];

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q) off += a[p * N + q] * a[p * N + q];
    if (off == 0.0 || off <= 1e-32 * total) break;

    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const double apq = a[p * N + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * N + q] - a[p * N + p]) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < N; ++k) {
          const double akp = a[k * N + p];
          const double akq = a[k * N + q];
          a[k * N + p] = c * akp - s * akq;
          a[k * N + q] = s * akp + c * akq;
        }
        for (int k = 0; k < N; ++k) {
          const double apk = a[p * N + k];
          const double aqk = a[q * N + k];
          a[p * N + k] = c * apk - s * aqk;
          a[q * N + k] = s * apk + c * aqk;
        }
        a[p * N + q] = 0.0;
        a[q * N + p] = 0.0;
        for (int k = 0; k < N; ++k) {
          const double vkp = v[k * N + p];
          const double vkq = v[k * N + q];
          v[k * N + p] = c * vkp - s * vkq;
          v[k * N + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  for (int i = 0; i < N; ++i) w[i] = a[i * N + i];

  // Selection sort keeps the column swaps cheap for tiny N.
  for (int i = 0; i < N - 1; ++i) {
    int best = i;
    for (int j = i + 1; j < N; ++j)
      if (w[j] < w[best]) best = j;
    if (best != i) {
      std::swap(w[i], w[best]);
      for (int k = 0; k < N; ++k) std::swap(v[k * N + i], v[k * N + best]);
    }
  }
}

// In-place Cholesky attempt on A + I; true iff every pivot is positive, i.e.
// A lies strictly inside the shifted cone.
template <int N>
bool strictly_inside_shifted_cone(const double* a) {
  double l[N * N];
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[i * N + j] + (i == j ? 1.0 : 0.0);
      for (int k = 0; k < j; ++k) s -= l[i * N + k] * l[j * N + k];
      if (i == j) {
        if (!(s > 0.0)) return false;
        l[i * N + i] = std::sqrt(s);
      } else {
        l[i * N + j] = s / l[j * N + j];
      }
    }
  }
  return true;
}

template <int N>
bool project_fixed(double* a) {
  if (strictly_inside_shifted_cone<N>(a)) return false;
  double scratch[N * N];
  double w[N];
  double v[N * N];
  std::copy(a, a + N * N, scratch);
  jacobi<N>(scratch, w, v);
  bool changed = false;
  for (int e = 0; e < N && w[e] < -1.0; ++e) {
    const double lift = -1.0 - w[e];
    for (int i = 0; i < N; ++i) {
      const double vi = lift * v[i * N + e];
      for (int j = i; j < N; ++j) a[i * N + j] += vi * v[j * N + e];
    }
    changed = true;
  }
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) a[j * N + i] = a[i * N + j];
  return changed;
}

template <template <int> class F, typename... Args>
auto dispatch(int n, Args... args) {
  switch (n) {
    case 1: return F<1>::run(args...);
    case 2: return F<2>::run(args...);
    case 3: return F<3>::run(args...);
    case 4: return F<4>::run(args...);
    case 5: return F<5>::run(args...);
    case 6: return F<6>::run(args...);
    case 7: return F<7>::run(args...);
    case 8: return F<8>::run(args...);
    case 9: return F<9>::run(args...);
    case 10: return F<10>::run(args...);
    case 11: return F<11>::run(args...);
    case 12: return F<12>::run(args...);
    default: throw std::invalid_argument("matrix dimension " + std::to_string(n) + " outside [1, 12]");
  }
}

template <int N>
struct JacobiOp {
  static void run(double* a, double* w, double* v) { jacobi<N>(a, w, v); }
};

template <int N>
struct ProjectOp {
  static bool run(double* a) { return project_fixed<N>(a); }
};

}  // namespace

SymMatrix::SymMatrix(int dim) : dim_(dim) { check_dim(dim); }

SymMatrix::SymMatrix(int dim, std::span<const double> row_major) : dim_(dim) {
  check_dim(dim);
  if (row_major.size() != static_cast<std::size_t>(dim * dim))
    throw std::invalid_argument("expected " + std::to_string(dim * dim) + " entries");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      a_[i * dim + j] = 0.5 * (row_major[i * dim + j] + row_major[j * dim + i]);
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.a_[i * dim + i] = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix m(static_cast<int>(diag.size()));
  for (int i = 0; i < m.dim_; ++i) m.a_[i * m.dim_ + i] = diag[i];
  return m;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] += o.a_[i];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] -= o.a_[i];
  return *this;
}

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (int i = 0; i < dim_ * dim_; ++i) s += a_[i] * a_[i];
  return std::sqrt(s);
}

bool SymMatrix::all_finite() const {
  return std::all_of(a_.begin(), a_.begin() + dim_ * dim_, [](double v) { return std::isfinite(v); });
}

void eig_inplace(int n, double* a, double* values, double* vectors) {
  dispatch<JacobiOp>(n, a, values, vectors);
}

bool project_shifted_psd_inplace(int n, double* a) { return dispatch<ProjectOp>(n, a); }

EigenDecomposition sym_eig(const SymMatrix& a) {
  if (!a.all_finite()) throw std::invalid_argument("sym_eig: non-finite entry");
  EigenDecomposition out;
  out.dim = a.dim();
  std::array<double, kMaxDim * kMaxDim> scratch{};
  std::copy(a.data().begin(), a.data().end(), scratch.begin());
  eig_inplace(a.dim(), scratch.data(), out.values.data(), out.vectors.data());
  return out;
}

SymMatrix project_shifted_psd(const SymMatrix& a) {
  if (!a.all_finite()) throw std::invalid_argument("project_shifted_psd: non-finite entry");
  std::array<double, kMaxDim * kMaxDim> buf{};
  std::copy(a.data().begin(), a.data().end(), buf.begin());
  project_shifted_psd_inplace(a.dim(), buf.data());
  return SymMatrix(a.dim(), std::span<const double>(buf.data(), a.data().size()));
}

bool is_psd(const SymMatrix& a, double tol) { return sym_eig(a).values[0] >= -tol; }

int numerical_rank(const SymMatrix& a, double rel_tol) {
  const auto e = sym_eig(a);
  double largest = 0.0;
  for (int i = 0; i < e.dim; ++i) largest = std::max(largest, std::abs(e.values[i]));
  if (largest == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < e.dim; ++i)
    if (std::abs(e.values[i]) > rel_tol * largest) ++rank;
  return rank;
}

SymMatrix schur_complement(const SymMatrix& w, int k) {
  const int n = w.dim();
  if (k < 1 || k >= n) throw std::invalid_argument("schur_complement: k must lie in [1, dim)");
  SymMatrix lead(k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) lead.set(i, j, w(i, j));
  const auto e = sym_eig(lead);
  for (int i = 0; i < k; ++i)
    if (std::abs(e.values[i]) <= 1e-12) throw SingularBlockError("schur_complement: leading block is singular");

  // A^{-1} C through the eigendecomposition of A.
  const int m = n - k;
  std::array<double, kMaxDim * kMaxDim> vtc{};  // V^T C scaled by 1/sigma, k x m
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < m; ++c) {
      double s = 0.0;
      for (int i = 0; i < k; ++i) s += e.vector_entry(i, r) * w(i, k + c);
      vtc[r * m + c] = s / e.values[r];
    }
  }
  SymMatrix out(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      // (C^T A^{-1} C)_{ij} = sum_r (V^T C)_{ri} (V^T C)_{rj} / sigma_r
      double s = 0.0;
      for (int r = 0; r < k; ++r) {
        double vci = 0.0;
        for (int t = 0; t < k; ++t) vci += e.vector_entry(t, r) * w(t, k + i);
        s += vci * vtc[r * m + j];
      }
      out.set(i, j, w(k + i, k + j) - s);
    }
  }
  return out;
}

}  // namespace reltik::smallsym
