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

#include "reltik/admm.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "reltik/error.hpp"
#include "reltik/metrics.hpp"
#include "reltik/smallsym.hpp"

namespace reltik {

namespace {

std::vector<double> inverse_degrees(const Graph& g) {
  const auto nu = degree_table(g);
  std::vector<double> out(nu.size());
  for (std::size_t n = 0; n < nu.size(); ++n) {
    if (nu[n] == 0) throw InvalidGraphError("vertex " + std::to_string(n + 1) + " has no incident edge");
    out[n] = 1.0 / (2.0 * static_cast<double>(nu[n]));
  }
  return out;
}

void check_problem(const SphereSignal& y, const Graph& g, const Weights& wt) {
  if (y.size() != g.n_vertices()) throw std::invalid_argument("data length does not match vertex count");
  if (!y.all_finite()) throw std::invalid_argument("data contains non-finite values");
  wt.validate(g);
}

// Primal step into (x, ell). Returns the squared change of (x, ell).
double primal_into(SphereSignal& x, EdgeScalars& ell, const BlockField& u, const BlockField& z, const SphereSignal& y,
                   const Weights& wt, const Graph& g, double rho, const std::vector<double>& inv_2nu) {
  const int d = x.dim();
  const int s = d + 2;
  SphereSignal acc(d, x.size());
  double change = 0.0;
  for (std::size_t e = 0; e < g.n_edges(); ++e) {
    auto bu = u.block(e);
    auto bz = z.block(e);
    auto an = acc[g.edge(e).first];
    auto am = acc[g.edge(e).second];
    for (int i = 0; i < d; ++i) {
      an[i] += (bu[i * s + d] - bz[i * s + d]) + (bu[d * s + i] - bz[d * s + i]);
      am[i] += (bu[i * s + d + 1] - bz[i * s + d + 1]) + (bu[(d + 1) * s + i] - bz[(d + 1) * s + i]);
    }
    const double adj = (bu[d * s + d + 1] - bz[d * s + d + 1]) + (bu[(d + 1) * s + d] - bz[(d + 1) * s + d]);
    const double next = 0.5 * (adj + wt.edge[e] / rho);
    change += (next - ell[e]) * (next - ell[e]);
    ell[e] = next;
  }
  for (std::size_t n = 0; n < x.size(); ++n) {
    auto xn = x[n];
    auto an = acc[n];
    auto yn = y[n];
    for (int i = 0; i < d; ++i) {
      const double next = (an[i] + wt.vertex[n] * yn[i] / rho) * inv_2nu[n];
      change += (next - xn[i]) * (next - xn[i]);
      xn[i] = next;
    }
  }
  return change;
}

// Writes Q(x, l)_e + Z_e into w.
void shifted_plus(double* w, std::span<const double> z_block, const SphereSignal& x, const EdgeScalars& ell,
                  const Graph& g, std::size_t e) {
  const int d = x.dim();
  const int s = d + 2;
  std::copy(z_block.begin(), z_block.end(), w);
  auto xn = x[g.edge(e).first];
  auto xm = x[g.edge(e).second];
  for (int i = 0; i < d; ++i) {
    w[i * s + d] += xn[i];
    w[d * s + i] += xn[i];
    w[i * s + d + 1] += xm[i];
    w[(d + 1) * s + i] += xm[i];
  }
  w[d * s + d + 1] += ell[e];
  w[(d + 1) * s + d] += ell[e];
}

// Projection and dual step, fused per edge.
void blocks_and_duals(AdmmState& st, const Graph& g, int threads) {
  const int s = st.x.dim() + 2;
  const auto m = static_cast<std::ptrdiff_t>(g.n_edges());
  (void)threads;
#ifdef RELTIK_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1)
#endif
  for (std::ptrdiff_t e = 0; e < m; ++e) {
    double w[smallsym::kMaxDim * smallsym::kMaxDim];
    auto bz = st.z.block(e);
    auto bu = st.u.block(e);
    shifted_plus(w, bz, st.x, st.ell, g, e);
    std::copy(w, w + s * s, bu.begin());
    smallsym::project_shifted_psd_inplace(s, bu.data());
    for (int i = 0; i < s * s; ++i) bz[i] = w[i] - bu[i];
  }
}

}  // namespace

void SolverConfig::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("rho must be positive");
  if (!(tol >= 0.0)) throw std::invalid_argument("tol must be nonnegative");
  if (max_iter == 0) throw std::invalid_argument("max_iter must be positive");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

AdmmState AdmmState::zeros(int dim, const Graph& g) {
  return {SphereSignal(dim, g.n_vertices()), EdgeScalars(g.n_edges(), 0.0), BlockField(dim + 2, g.n_edges()),
          BlockField(dim + 2, g.n_edges()), 0};
}

PrimalIterate primal_update(const BlockField& u, const BlockField& z, const SphereSignal& y, const Weights& wt,
                            const Graph& g, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  check_problem(y, g, wt);
  if (u.block_dim() != y.dim() + 2 || z.block_dim() != y.dim() + 2 || u.size() != g.n_edges() ||
      z.size() != g.n_edges())
    throw std::invalid_argument("primal_update: block field shape mismatch");
  PrimalIterate out{SphereSignal(y.dim(), y.size()), EdgeScalars(g.n_edges(), 0.0)};
  primal_into(out.x, out.ell, u, z, y, wt, g, rho, inverse_degrees(g));
  return out;
}

BlockField block_update(const SphereSignal& x, const EdgeScalars& ell, const BlockField& z, const Graph& g) {
  const int s = x.dim() + 2;
  if (z.block_dim() != s || z.size() != g.n_edges() || ell.size() != g.n_edges() || x.size() != g.n_vertices())
    throw std::invalid_argument("block_update: shape mismatch");
  BlockField u(s, g.n_edges());
  for (std::size_t e = 0; e < g.n_edges(); ++e) {
    auto bu = u.block(e);
    shifted_plus(bu.data(), z.block(e), x, ell, g, e);
    smallsym::project_shifted_psd_inplace(s, bu.data());
  }
  return u;
}

BlockField dual_update(const BlockField& z, const SphereSignal& x, const EdgeScalars& ell, const BlockField& u,
                       const Graph& g) {
  BlockField q = apply_Q(x, ell, g);
  if (z.block_dim() != q.block_dim() || u.block_dim() != q.block_dim() || z.size() != q.size() ||
      u.size() != q.size())
    throw std::invalid_argument("dual_update: shape mismatch");
  auto qv = q.values();
  auto zv = z.values();
  auto uv = u.values();
  for (std::size_t i = 0; i < qv.size(); ++i) qv[i] = zv[i] + qv[i] - uv[i];
  return q;
}

double residual(const PrimalIterate& prev, const PrimalIterate& next) {
  if (prev.x.values().size() != next.x.values().size() || prev.ell.size() != next.ell.size())
    throw std::invalid_argument("residual: iterate shapes differ");
  double s = 0.0;
  auto a = prev.x.values();
  auto b = next.x.values();
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  for (std::size_t e = 0; e < prev.ell.size(); ++e) s += (prev.ell[e] - next.ell[e]) * (prev.ell[e] - next.ell[e]);
  return std::sqrt(s);
}

double admm_step(AdmmState& state, const SphereSignal& y, const Weights& wt, const Graph& g, double rho,
                 int threads) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  check_problem(y, g, wt);
  const double change = primal_into(state.x, state.ell, state.u, state.z, y, wt, g, rho, inverse_degrees(g));
  blocks_and_duals(state, g, threads);
  ++state.iteration;
  return std::sqrt(change);
}

std::vector<std::size_t> retract_to_sphere(SphereSignal& x) {
  std::vector<std::size_t> degenerate;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double nrm = x.norm(n);
    if (nrm < 1e-12) {
      degenerate.push_back(n);
      continue;
    }
    for (double& v : x[n]) v /= nrm;
  }
  return degenerate;
}

DenoiseResult admm_solve(const SphereSignal& y, const Graph& g, const Weights& wt, const SolverConfig& cfg,
                         const IterationObserver& observer) {
  cfg.validate();
  check_problem(y, g, wt);
  const auto inv_2nu = inverse_degrees(g);
  const auto start = std::chrono::steady_clock::now();

  AdmmState st = AdmmState::zeros(y.dim(), g);
  double res = 0.0;
  while (st.iteration < cfg.max_iter) {
    res = std::sqrt(primal_into(st.x, st.ell, st.u, st.z, y, wt, g, cfg.rho, inv_2nu));
    if (!std::isfinite(res)) throw DivergenceError("ADMM produced a non-finite iterate");
    blocks_and_duals(st, g, cfg.threads);
    ++st.iteration;
    if (observer)
      observer({st.iteration, res, objective_K(st.x, st.ell, y, wt, g), mean_sphere_distance(st.x)});
    if (res < cfg.tol) break;
  }

  DenoiseResult out{std::move(st.x), std::move(st.ell)};
  out.iterations = st.iteration;
  out.final_residual = res;
  out.objective_K = objective_K(out.x, out.ell, y, wt, g);
  out.mean_sphere_distance = mean_sphere_distance(out.x);
  if (cfg.retract) out.degenerate_vertices = retract_to_sphere(out.x);
  out.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace reltik
