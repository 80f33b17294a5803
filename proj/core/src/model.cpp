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

#include "reltik/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "reltik/error.hpp"
#include "reltik/manifold.hpp"

namespace reltik {

namespace {

void check_signal_dim(int dim) {
  if (dim < 2 || dim > 4) throw std::invalid_argument("signal dimension must be 2, 3 or 4, got " + std::to_string(dim));
}

void check_sizes(const SphereSignal& x, const EdgeScalars& ell, const Graph& g) {
  if (x.size() != g.n_vertices()) throw std::invalid_argument("signal length does not match vertex count");
  if (ell.size() != g.n_edges()) throw std::invalid_argument("edge scalar count does not match edge count");
}

}  // namespace

SphereSignal::SphereSignal(int dim, std::size_t count) : dim_(dim), values_(count * static_cast<std::size_t>(dim)) {
  check_signal_dim(dim);
}

SphereSignal::SphereSignal(int dim, std::vector<double> values) : dim_(dim), values_(std::move(values)) {
  check_signal_dim(dim);
  if (values_.size() % dim_ != 0) throw std::invalid_argument("signal values are not a multiple of the dimension");
}

double SphereSignal::norm(std::size_t n) const {
  auto v = (*this)[n];
  return std::sqrt(dot(v, v));
}

bool SphereSignal::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

bool SphereSignal::is_unit(double tol) const {
  for (std::size_t n = 0; n < size(); ++n)
    if (!(std::abs(norm(n) - 1.0) <= tol)) return false;
  return true;
}

BlockField::BlockField(int block_dim, std::size_t count)
    : dim_(block_dim), values_(count * static_cast<std::size_t>(block_dim) * block_dim) {
  if (block_dim < 1 || block_dim > smallsym::kMaxDim) throw std::invalid_argument("block dimension outside [1, 12]");
}

double inner(const BlockField& a, const BlockField& b) {
  if (a.block_dim() != b.block_dim() || a.size() != b.size()) throw std::invalid_argument("block field shape mismatch");
  return dot(a.values(), b.values());
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

smallsym::SymMatrix build_constraint_block(std::span<const double> x_n, std::span<const double> x_m, double ell) {
  const int d = static_cast<int>(x_n.size());
  check_signal_dim(d);
  if (x_m.size() != x_n.size()) throw std::invalid_argument("constraint block: vector sizes differ");
  smallsym::SymMatrix q = smallsym::SymMatrix::identity(d + 2);
  for (int i = 0; i < d; ++i) {
    q.set(i, d, x_n[i]);
    q.set(i, d + 1, x_m[i]);
  }
  q.set(d, d + 1, ell);
  return q;
}

bool lemma_feasibility_check(std::span<const double> x_n, std::span<const double> x_m, double ell, double tol) {
  const auto q = build_constraint_block(x_n, x_m, ell);
  if (!q.all_finite()) return false;
  const auto e = smallsym::sym_eig(q);
  const double threshold = tol * e.values[e.dim - 1];
  if (e.values[0] < -threshold) return false;
  int small = 0;
  for (int i = 0; i < e.dim; ++i)
    if (e.values[i] <= threshold) ++small;
  return small == 2;
}

BlockField apply_Q(const SphereSignal& x, const EdgeScalars& ell, const Graph& g) {
  check_sizes(x, ell, g);
  const int d = x.dim();
  const int s = d + 2;
  BlockField out(s, g.n_edges());
  for (std::size_t e = 0; e < g.n_edges(); ++e) {
    auto b = out.block(e);
    auto xn = x[g.edge(e).first];
    auto xm = x[g.edge(e).second];
    for (int i = 0; i < d; ++i) {
      b[i * s + d] = b[d * s + i] = xn[i];
      b[i * s + d + 1] = b[(d + 1) * s + i] = xm[i];
    }
    b[d * s + d + 1] = b[(d + 1) * s + d] = ell[e];
  }
  return out;
}

AdjointParts adjoint_Q(const BlockField& u, const Graph& g) {
  const int s = u.block_dim();
  const int d = s - 2;
  check_signal_dim(d);
  if (u.size() != g.n_edges()) throw std::invalid_argument("adjoint_Q: block count does not match edge count");
  AdjointParts out{SphereSignal(d, g.n_vertices()), EdgeScalars(g.n_edges(), 0.0)};
  for (std::size_t e = 0; e < g.n_edges(); ++e) {
    auto b = u.block(e);
    auto xn = out.x[g.edge(e).first];
    auto xm = out.x[g.edge(e).second];
    for (int i = 0; i < d; ++i) {
      xn[i] += b[i * s + d] + b[d * s + i];
      xm[i] += b[i * s + d + 1] + b[(d + 1) * s + i];
    }
    out.ell[e] = b[d * s + d + 1] + b[(d + 1) * s + d];
  }
  return out;
}

double objective_K(const SphereSignal& x, const EdgeScalars& ell, const SphereSignal& y, const Weights& wt,
                   const Graph& g) {
  check_sizes(x, ell, g);
  if (y.size() != x.size() || y.dim() != x.dim()) throw std::invalid_argument("objective_K: data shape mismatch");
  wt.validate(g);
  double k = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) k -= wt.vertex[n] * dot(x[n], y[n]);
  for (std::size_t e = 0; e < ell.size(); ++e) k -= wt.edge[e] * ell[e];
  return k;
}

double objective_tikhonov(const SphereSignal& x, const SphereSignal& y, const Weights& wt, const Graph& g) {
  if (x.size() != g.n_vertices() || y.size() != x.size() || y.dim() != x.dim())
    throw std::invalid_argument("objective_tikhonov: shape mismatch");
  wt.validate(g);
  const int d = x.dim();
  double f = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += (x[n][i] - y[n][i]) * (x[n][i] - y[n][i]);
    f += 0.5 * wt.vertex[n] * s;
  }
  for (std::size_t e = 0; e < g.n_edges(); ++e) {
    auto xn = x[g.edge(e).first];
    auto xm = x[g.edge(e).second];
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += (xn[i] - xm[i]) * (xn[i] - xm[i]);
    f += 0.5 * wt.edge[e] * s;
  }
  return f;
}

BruteForceResult brute_force_min(const SphereSignal& y, const Weights& wt, const Graph& g, double angular_step) {
  if (y.dim() != 2) throw std::invalid_argument("brute_force_min: circle-valued data only (d = 2)");
  if (y.size() != g.n_vertices()) throw std::invalid_argument("brute_force_min: signal length does not match graph");
  wt.validate(g);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  if (!(angular_step > 0.0) || angular_step > kTwoPi / 360.0 * (1.0 + 1e-12))
    throw std::invalid_argument("brute_force_min: angular step must lie in (0, 1 degree]");
  const std::size_t n_vertices = y.size();
  if (n_vertices > 4) throw CapacityError("brute_force_min: at most 4 vertices");

  const auto steps = static_cast<std::size_t>(std::ceil(kTwoPi / angular_step - 1e-9));
  const double h = kTwoPi / static_cast<double>(steps);

  // On unit vectors the Tikhonov objective equals a constant plus
  // -sum w <x, y> - sum lambda cos(theta_n - theta_m).
  std::vector<std::vector<double>> data(n_vertices, std::vector<double>(steps));
  for (std::size_t n = 0; n < n_vertices; ++n)
    for (std::size_t k = 0; k < steps; ++k)
      data[n][k] = -wt.vertex[n] * (std::cos(k * h) * y[n][0] + std::sin(k * h) * y[n][1]);
  std::vector<double> cos_diff(2 * steps);
  for (std::size_t k = 0; k < 2 * steps; ++k)
    cos_diff[k] = std::cos((static_cast<double>(k) - static_cast<double>(steps)) * h);

  // Edges to earlier vertices, so a partial assignment can be scored as soon
  // as a vertex is fixed.
  struct Back {
    std::size_t other;
    double lambda;
  };
  std::vector<std::vector<Back>> back(n_vertices);
  for (std::size_t e = 0; e < g.n_edges(); ++e) back[g.edge(e).second].push_back({g.edge(e).first, wt.edge[e]});

  std::vector<std::size_t> idx(n_vertices, 0), best_idx(n_vertices, 0);
  double best = INFINITY;
  auto recurse = [&](auto&& self, std::size_t v, double partial) -> void {
    const auto& bk = back[v];
    const bool last = v + 1 == n_vertices;
    for (std::size_t k = 0; k < steps; ++k) {
      double c = partial + data[v][k];
      for (const auto& b : bk) c -= b.lambda * cos_diff[idx[b.other] + steps - k];
      idx[v] = k;
      if (!last) {
        self(self, v + 1, c);
      } else if (c < best) {
        best = c;
        best_idx = idx;
      }
    }
  };
  recurse(recurse, 0, 0.0);

  SphereSignal x(2, n_vertices);
  for (std::size_t n = 0; n < n_vertices; ++n) {
    x[n][0] = std::cos(best_idx[n] * h);
    x[n][1] = std::sin(best_idx[n] * h);
  }
  const double value = objective_tikhonov(x, y, wt, g);
  return {std::move(x), value};
}

smallsym::SymMatrix build_matrix_block(std::span<const double> x_n, std::span<const double> x_m,
                                       std::span<const double> r) {
  const int d = static_cast<int>(x_n.size());
  if ((d != 2 && d != 4) || x_m.size() != x_n.size() || r.size() != x_n.size())
    throw std::invalid_argument("matrix block: vectors must all have dimension 2 or 4");
  const auto mn = matrix_rep(x_n);
  const auto mm = matrix_rep(x_m);
  const auto mr = matrix_rep(r);
  smallsym::SymMatrix p = smallsym::SymMatrix::identity(3 * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      p.set(i, d + j, mn[i * d + j]);
      p.set(i, 2 * d + j, mm[i * d + j]);
      // Block (1, 2) holds M(r)^T.
      p.set(d + i, 2 * d + j, mr[j * d + i]);
    }
  }
  return p;
}

bool matrix_feasibility_check(std::span<const double> x_n, std::span<const double> x_m, std::span<const double> r,
                              double tol) {
  const auto p = build_matrix_block(x_n, x_m, r);
  if (!p.all_finite()) return false;
  const auto e = smallsym::sym_eig(p);
  const double threshold = tol * e.values[e.dim - 1];
  if (e.values[0] < -threshold) return false;
  int large = 0;
  for (int i = 0; i < e.dim; ++i)
    if (e.values[i] > threshold) ++large;
  return large == static_cast<int>(x_n.size());
}

}  // namespace reltik
