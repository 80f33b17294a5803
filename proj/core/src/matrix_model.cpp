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

#include "reltik/matrix_model.hpp"

#include <cmath>
#include <stdexcept>

#include "reltik/error.hpp"
#include "reltik/manifold.hpp"
#include "reltik/smallsym.hpp"

namespace reltik {

namespace {

// M(e_c) for c = 0..d-1, each d x d row-major.
std::vector<std::vector<double>> rep_basis(int d) {
  std::vector<std::vector<double>> out;
  for (int c = 0; c < d; ++c) {
    std::vector<double> e(d, 0.0);
    e[c] = 1.0;
    out.push_back(matrix_rep(e));
  }
  return out;
}

void check_rep_dim(int d) {
  if (d != 2 && d != 4) throw std::invalid_argument("matrix model supports d = 2 or d = 4 only");
}

// Adds M^*(B) to out, where B(i, j) = blk[(row0 + i) * s + col0 + j], or its
// transpose when `transposed` is set.
void add_rep_adjoint(std::span<double> out, std::span<const double> blk, int s, int row0, int col0, bool transposed,
                     const std::vector<std::vector<double>>& basis) {
  const int d = static_cast<int>(out.size());
  for (int c = 0; c < d; ++c) {
    double acc = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double b = transposed ? blk[(row0 + j) * s + col0 + i] : blk[(row0 + i) * s + col0 + j];
        acc += b * basis[c][i * d + j];
      }
    out[c] += acc;
  }
}

// Writes P(x, r)_e into blk (which must be zero on entry).
void write_shifted_block(std::span<double> blk, std::span<const double> xn, std::span<const double> xm,
                         std::span<const double> r) {
  const int d = static_cast<int>(xn.size());
  const int s = 3 * d;
  const auto mn = matrix_rep(xn);
  const auto mm = matrix_rep(xm);
  const auto mr = matrix_rep(r);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      blk[i * s + d + j] = blk[(d + j) * s + i] = mn[i * d + j];
      blk[i * s + 2 * d + j] = blk[(2 * d + j) * s + i] = mm[i * d + j];
      // (1, 2) block is M(r)^T, (2, 1) block is M(r).
      blk[(d + i) * s + 2 * d + j] = blk[(2 * d + j) * s + d + i] = mr[j * d + i];
    }
  }
}

}  // namespace

int variant_dim(MatrixVariant v) { return v == MatrixVariant::complex_d2 ? 2 : 4; }

BlockField apply_P(const SphereSignal& x, const SphereSignal& r, const Graph& g) {
  const int d = x.dim();
  check_rep_dim(d);
  if (r.dim() != d || x.size() != g.n_vertices() || r.size() != g.n_edges())
    throw std::invalid_argument("apply_P: shape mismatch");
  BlockField out(3 * d, g.n_edges());
  for (std::size_t e = 0; e < g.n_edges(); ++e)
    write_shifted_block(out.block(e), x[g.edge(e).first], x[g.edge(e).second], r[e]);
  return out;
}

MatrixAdjointParts adjoint_P(const BlockField& u, const Graph& g) {
  const int s = u.block_dim();
  const int d = s / 3;
  if (s % 3 != 0) throw std::invalid_argument("adjoint_P: block size must be 3d");
  check_rep_dim(d);
  if (u.size() != g.n_edges()) throw std::invalid_argument("adjoint_P: block count does not match edge count");
  const auto basis = rep_basis(d);
  MatrixAdjointParts out{SphereSignal(d, g.n_vertices()), SphereSignal(d, g.n_edges())};
  for (std::size_t e = 0; e < g.n_edges(); ++e) {
    auto b = u.block(e);
    auto xn = out.x[g.edge(e).first];
    auto xm = out.x[g.edge(e).second];
    add_rep_adjoint(xn, b, s, 0, d, false, basis);
    add_rep_adjoint(xn, b, s, d, 0, true, basis);
    add_rep_adjoint(xm, b, s, 0, 2 * d, false, basis);
    add_rep_adjoint(xm, b, s, 2 * d, 0, true, basis);
    add_rep_adjoint(out.r[e], b, s, d, 2 * d, true, basis);
    add_rep_adjoint(out.r[e], b, s, 2 * d, d, false, basis);
  }
  return out;
}

double objective_J(const SphereSignal& x, const SphereSignal& r, const SphereSignal& y, const Weights& wt,
                   const Graph& g) {
  if (x.size() != g.n_vertices() || r.size() != g.n_edges() || y.size() != x.size() || y.dim() != x.dim())
    throw std::invalid_argument("objective_J: shape mismatch");
  wt.validate(g);
  double j = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) j -= wt.vertex[n] * dot(x[n], y[n]);
  for (std::size_t e = 0; e < r.size(); ++e) j -= wt.edge[e] * r[e][0];
  return j;
}

MatrixIterate matrix_primal_update(const BlockField& u, const BlockField& z, const SphereSignal& y,
                                   const Weights& wt, const Graph& g, double rho) {
  const int d = y.dim();
  check_rep_dim(d);
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (u.block_dim() != 3 * d || z.block_dim() != 3 * d || u.size() != g.n_edges() || z.size() != g.n_edges())
    throw std::invalid_argument("matrix_primal_update: block field shape mismatch");
  wt.validate(g);
  BlockField diff(3 * d, g.n_edges());
  auto dv = diff.values();
  for (std::size_t i = 0; i < dv.size(); ++i) dv[i] = u.values()[i] - z.values()[i];
  auto adj = adjoint_P(diff, g);
  const auto nu = degree_table(g);
  for (std::size_t n = 0; n < y.size(); ++n) {
    if (nu[n] == 0) throw InvalidGraphError("vertex " + std::to_string(n + 1) + " has no incident edge");
    const double scale = 1.0 / (2.0 * d * static_cast<double>(nu[n]));
    for (int i = 0; i < d; ++i) adj.x[n][i] = (adj.x[n][i] + wt.vertex[n] * y[n][i] / rho) * scale;
  }
  for (std::size_t e = 0; e < g.n_edges(); ++e) {
    adj.r[e][0] += wt.edge[e] / rho;
    for (int i = 0; i < d; ++i) adj.r[e][i] /= 2.0 * d;
  }
  return {std::move(adj.x), std::move(adj.r)};
}

MatrixModelResult solve_matrix_model(const SphereSignal& y, const Graph& g, const Weights& wt,
                                     const SolverConfig& cfg, MatrixVariant variant) {
  cfg.validate();
  const int d = variant_dim(variant);
  if (y.dim() != d) throw std::invalid_argument("solve_matrix_model: data dimension does not match variant");
  if (y.size() != g.n_vertices()) throw std::invalid_argument("data length does not match vertex count");
  if (g.n_vertices() > 50) throw CapacityError("solve_matrix_model: at most 50 vertices");
  if (!y.all_finite()) throw std::invalid_argument("data contains non-finite values");

  const int s = 3 * d;
  BlockField u(s, g.n_edges());
  BlockField z(s, g.n_edges());
  MatrixIterate it{SphereSignal(d, g.n_vertices()), SphereSignal(d, g.n_edges())};
  MatrixModelResult out{SphereSignal(d, 0), SphereSignal(d, 0)};
  double res = 0.0;
  std::size_t k = 0;
  while (k < cfg.max_iter) {
    MatrixIterate next = matrix_primal_update(u, z, y, wt, g, cfg.rho);
    double change = 0.0;
    for (std::size_t i = 0; i < next.x.values().size(); ++i)
      change += std::pow(next.x.values()[i] - it.x.values()[i], 2);
    for (std::size_t i = 0; i < next.r.values().size(); ++i)
      change += std::pow(next.r.values()[i] - it.r.values()[i], 2);
    res = std::sqrt(change);
    if (!std::isfinite(res)) throw DivergenceError("matrix-model ADMM produced a non-finite iterate");
    it = std::move(next);

    BlockField p = apply_P(it.x, it.r, g);
    for (std::size_t e = 0; e < g.n_edges(); ++e) {
      auto bp = p.block(e);
      auto bz = z.block(e);
      auto bu = u.block(e);
      for (std::size_t i = 0; i < bp.size(); ++i) bu[i] = bp[i] + bz[i];
      std::vector<double> w(bu.begin(), bu.end());
      smallsym::project_shifted_psd_inplace(s, bu.data());
      for (std::size_t i = 0; i < bp.size(); ++i) bz[i] = w[i] - bu[i];
    }
    ++k;
    if (res < cfg.tol) break;
  }
  out.objective_J = objective_J(it.x, it.r, y, wt, g);
  out.x = std::move(it.x);
  out.r = std::move(it.r);
  out.iterations = k;
  out.final_residual = res;
  return out;
}

}  // namespace reltik
