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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "reltik/admm.hpp"
#include "reltik/experiments.hpp"
#include "reltik/manifold.hpp"
#include "reltik/matrix_model.hpp"
#include "reltik/metrics.hpp"
#include "reltik/model.hpp"
#include "reltik/smallsym.hpp"
#include "reltik/synth.hpp"

using namespace reltik;

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
double normal(Rng& rng) { return std::normal_distribution<double>()(rng); }

std::vector<double> gaussian(Rng& rng, int d) {
  std::vector<double> v(d);
  for (double& a : v) a = normal(rng);
  return v;
}

std::vector<double> unit(Rng& rng, int d) {
  auto v = gaussian(rng, d);
  const double s = std::sqrt(dot(v, v));
  for (double& a : v) a /= s;
  return v;
}

Graph random_connected(Rng& rng, std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.push_back({std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const bool present = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) { return e == Edge{a, b}; });
      if (!present && uniform(rng, 0, 1) < 0.25) edges.push_back({a, b});
    }
  return Graph(n, edges);
}

SphereSignal random_signal(Rng& rng, int d, std::size_t n, bool on_sphere) {
  SphereSignal s(d, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = on_sphere ? unit(rng, d) : gaussian(rng, d);
    std::copy(v.begin(), v.end(), s[i].begin());
  }
  return s;
}

BlockField random_blocks(Rng& rng, int s, std::size_t m) {
  BlockField b(s, m);
  for (std::size_t e = 0; e < m; ++e)
    for (int i = 0; i < s; ++i)
      for (int j = i; j < s; ++j) b.block(e)[i * s + j] = b.block(e)[j * s + i] = normal(rng);
  return b;
}

Weights random_weights(Rng& rng, const Graph& g) {
  Weights w;
  for (std::size_t n = 0; n < g.n_vertices(); ++n) w.vertex.push_back(uniform(rng, 0.2, 2.0));
  for (std::size_t e = 0; e < g.n_edges(); ++e) w.edge.push_back(uniform(rng, 0.2, 2.0));
  return w;
}

// ---------------------------------------------------------------------------

void circle_line() {
  const int seeds = 10;
  double dist_sum = 0.0, settle_sum = 0.0, time_max = 0.0;
  std::size_t settle_max = 0;
  for (int s = 1; s <= seeds; ++s) {
    ExperimentConfig c = default_experiment_config("circle-line");
    c.seed = static_cast<std::uint64_t>(s);
    c.solver.max_iter = 600;
    c.solver.tol = 0.0;
    const auto r = run_experiment(c);
    const std::size_t settle = iterations_to_settle(r.report.trace.objective, 1e-5);
    dist_sum += std::abs(r.report.mean_sphere_distance);
    settle_sum += static_cast<double>(settle);
    settle_max = std::max(settle_max, settle);
    time_max = std::max(time_max, r.report.wall_time_seconds);
  }
  const double dist = dist_sum / seeds;
  const double settle = settle_sum / seeds;
  report(1, "circle line graph", dist <= 1e-9 && settle <= 300 && time_max <= 60.0,
         fmt("N=1000 kappa=10 lambda=25, 10 seeds: mean |distance| %.3g after 600 it, objective settles (1e-5) at "
             "%.1f it on average (max %zu), slowest run %.2f s",
             dist, settle, settle_max, time_max));
}

void circle_grid() {
  ExperimentConfig c = default_experiment_config("circle-grid");
  c.solver.max_iter = 6000;
  c.solver.tol = 0.0;
  const auto r = run_experiment(c);
  const auto& d = r.report.trace.mean_sphere_distance;
  const double floor = 1e-14;
  bool monotone = d.size() >= 1001;
  std::size_t worst_k = 0;
  double worst_ratio = 0.0;
  for (std::size_t k = d.size() - 1000; monotone && k + 1 < d.size(); ++k) {
    const double ratio = std::abs(d[k + 1]) / std::max(std::abs(d[k]), floor);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_k = k + 1;
    }
  }
  const double start = std::abs(d[d.size() - 1001]);
  const double end = std::abs(d.back());
  monotone = monotone && worst_ratio <= 1.1 && end <= 1.1 * std::max(start, floor);
  report(2, "circle image graph", end <= 1e-3 && monotone,
         fmt("90x90 kappa=20 lambda=1: |distance| %.3g after %zu it (%.1f s); last 1000 it: start %.3g, worst step ratio "
             "%.3f at it %zu (values below %.0e count as converged)",
             end, r.report.iterations, r.report.wall_time_seconds, start, worst_ratio, worst_k + 1, floor));
}

void so3_line() {
  ExperimentConfig c = default_experiment_config("so3-line");
  c.solver.max_iter = 300;
  const auto r = run_experiment(c);
  const bool consistent = r.report.consistent.value_or(false);
  const double dist = std::abs(r.report.mean_sphere_distance);
  report(3, "SO(3) line graph", consistent && dist <= 1e-8 && r.report.iterations <= 300,
         fmt("N=1000 kappa1=30 kappa2=15 lambda=50: lifting %s (%zu violating edges), |distance| %.3g after %zu it, "
             "mean rotation error %.2f -> %.2f deg",
             consistent ? "consistent" : "inconsistent", r.report.violating_edges, dist, r.report.iterations,
             r.report.mean_rotation_error_noisy.value_or(NAN), r.report.mean_rotation_error_denoised.value_or(NAN)));
}

void equivalence() {
  Rng rng(4004);
  SolverConfig cfg;
  cfg.tol = 1e-10;
  cfg.max_iter = 200000;
  int ok = 0, unconverged = 0;
  double worst_obj = 0.0, worst_ell = 0.0;
  const int instances = 50;
  for (int t = 0; t < instances; ++t) {
    const int d = t % 2 ? 2 : 4;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
    const Graph g = random_connected(rng, n);
    const Weights wt = random_weights(rng, g);
    const SphereSignal y = random_signal(rng, d, n, true);
    const auto simple = admm_solve(y, g, wt, cfg);
    const auto full = solve_matrix_model(y, g, wt, cfg, d == 2 ? MatrixVariant::complex_d2 : MatrixVariant::quaternion_d4);
    if (simple.final_residual > cfg.tol || full.final_residual > cfg.tol) ++unconverged;
    const double obj = std::abs(simple.objective_K - full.objective_J);
    double ell = 0.0;
    for (std::size_t e = 0; e < g.n_edges(); ++e) ell = std::max(ell, std::abs(simple.ell[e] - full.r[e][0]));
    worst_obj = std::max(worst_obj, obj);
    worst_ell = std::max(worst_ell, ell);
    if (obj <= 1e-6 && ell <= 1e-5) ++ok;
  }
  report(4, "simplified vs matrix model", ok == instances && unconverged == 0,
         fmt("%d/%d instances agree (N<=6, d=2 and 4), worst |K-J| %.2g, worst |l-Re r| %.2g, %d runs above residual "
             "1e-10",
             ok, instances, worst_obj, worst_ell, unconverged));
}

void projection() {
  Rng rng(5005);
  const int n = 6;
  double worst_oracle = 0.0;
  int nearest_violations = 0;
  for (int t = 0; t < 1000; ++t) {
    Eigen::MatrixXd a(n, n);
    const double scale = std::pow(10.0, uniform(rng, -1.0, 1.0));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) a(i, j) = a(j, i) = scale * normal(rng);
    std::vector<double> flat(a.data(), a.data() + n * n);
    const auto p = smallsym::project_shifted_psd(smallsym::SymMatrix(n, flat));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const Eigen::MatrixXd oracle =
        es.eigenvectors() * es.eigenvalues().cwiseMax(-1.0).asDiagonal() * es.eigenvectors().transpose();
    Eigen::MatrixXd pe(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) pe(i, j) = p(i, j);
    worst_oracle = std::max(worst_oracle, (pe - oracle).cwiseAbs().maxCoeff());

    const double dp = (a - pe).norm();
    for (int c = 0; c < 100; ++c) {
      // Competitors: G G^T - I, plus points near the projection.
      Eigen::MatrixXd g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = normal(rng) * (c % 2 ? 0.1 : scale);
      Eigen::MatrixXd comp = g * g.transpose() - Eigen::MatrixXd::Identity(n, n);
      if (c % 2) comp = pe + g * g.transpose();
      if ((a - comp).norm() < dp - 1e-10) ++nearest_violations;
    }
  }
  report(5, "shifted PSD projection", worst_oracle <= 1e-10 && nearest_violations == 0,
         fmt("1000 random 6x6: max deviation from eigen-clip oracle %.2g, nearest-point violations %d/100000",
             worst_oracle, nearest_violations));
}

double augmented(const SphereSignal& x, const EdgeScalars& ell, const BlockField& u, const BlockField& z,
                 const SphereSignal& y, const Weights& wt, const Graph& g, double rho) {
  const BlockField q = apply_Q(x, ell, g);
  double s = 0.0;
  for (std::size_t i = 0; i < q.values().size(); ++i) {
    const double r = q.values()[i] - u.values()[i] + z.values()[i];
    s += r * r;
  }
  return objective_K(x, ell, y, wt, g) + 0.5 * rho * s;
}

void adjoint_and_primal() {
  Rng rng(6006);
  double worst_adj = 0.0, worst_grad = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int d = 2 + t % 3;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
    const Graph g = random_connected(rng, n);
    const SphereSignal x = random_signal(rng, d, n, false);
    EdgeScalars ell(g.n_edges());
    for (double& v : ell) v = normal(rng);
    const BlockField u = random_blocks(rng, d + 2, g.n_edges());
    const double lhs = inner(apply_Q(x, ell, g), u);
    const auto a = adjoint_Q(u, g);
    const double rhs = dot(x.values(), a.x.values()) + dot(ell, a.ell);
    worst_adj = std::max(worst_adj, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  const double h = 1e-5;
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + t % 3;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
    const Graph g = random_connected(rng, n);
    const Weights wt = random_weights(rng, g);
    const SphereSignal y = random_signal(rng, d, n, true);
    const BlockField u = random_blocks(rng, d + 2, g.n_edges());
    const BlockField z = random_blocks(rng, d + 2, g.n_edges());
    const double rho = uniform(rng, 0.5, 5.0);
    const auto p = primal_update(u, z, y, wt, g, rho);
    for (std::size_t i = 0; i < p.x.values().size(); ++i) {
      SphereSignal xp = p.x, xm = p.x;
      xp.values()[i] += h;
      xm.values()[i] -= h;
      const double grad = (augmented(xp, p.ell, u, z, y, wt, g, rho) - augmented(xm, p.ell, u, z, y, wt, g, rho)) / (2 * h);
      worst_grad = std::max(worst_grad, std::abs(grad));
    }
    for (std::size_t e = 0; e < p.ell.size(); ++e) {
      EdgeScalars lp = p.ell, lm = p.ell;
      lp[e] += h;
      lm[e] -= h;
      const double grad = (augmented(p.x, lp, u, z, y, wt, g, rho) - augmented(p.x, lm, u, z, y, wt, g, rho)) / (2 * h);
      worst_grad = std::max(worst_grad, std::abs(grad));
    }
  }
  report(6, "adjoint and primal update", worst_adj <= 1e-12 && worst_grad < 1e-6,
         fmt("adjoint identity worst relative error %.2g over 1000 instances; largest finite-difference gradient at the "
             "primal update %.2g over 100 instances",
             worst_adj, worst_grad));
}

std::vector<double> feasible_r(std::span<const double> xn, std::span<const double> xm) {
  const int d = static_cast<int>(xn.size());
  const auto m = matrix_rep(xm);
  std::vector<double> r(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) r[i] += m[k * d + i] * xn[k];
  return r;
}

void lemma_suite() {
  Rng rng(7007);
  int accepted = 0, rejected = 0;
  const int count = 1000;
  for (int t = 0; t < count; ++t) {
    // Cases 0..2: scalar blocks for d = 2, 3, 4; case 3: quaternion blocks;
    // case 4: complex blocks.
    const int kind = t % 5;
    const int d = kind < 3 ? 2 + kind : (kind == 3 ? 4 : 2);
    const bool matrix = kind >= 3;
    auto xn = unit(rng, d);
    auto xm = unit(rng, d);
    const bool ok_valid = matrix ? matrix_feasibility_check(xn, xm, feasible_r(xn, xm))
                                 : lemma_feasibility_check(xn, xm, dot(xn, xm));
    accepted += ok_valid;

    // Exactly one hypothesis broken: |x_n| = 1, |x_m| = 1, or the coupling.
    const double mag = std::exp(uniform(rng, std::log(1e-3), std::log(0.3)));
    const double sign = uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0;
    const int which = (t / 5) % 3;
    std::vector<double> r = matrix ? feasible_r(xn, xm) : std::vector<double>{dot(xn, xm)};
    if (which == 0) {
      for (double& v : xn) v *= 1.0 + sign * mag;
    } else if (which == 1) {
      for (double& v : xm) v *= 1.0 + sign * mag;
    } else {
      const auto dir = unit(rng, static_cast<int>(r.size()));
      for (std::size_t i = 0; i < r.size(); ++i) r[i] += mag * dir[i];
    }
    const bool ok_violation = matrix ? matrix_feasibility_check(xn, xm, r) : lemma_feasibility_check(xn, xm, r[0]);
    rejected += !ok_violation;
  }
  report(7, "block feasibility checks", accepted == count && rejected == count,
         fmt("accepted %d/%d valid constructions, rejected %d/%d single-hypothesis violations (d=2,3,4 scalar; d=2,4 "
             "matrix blocks)",
             accepted, count, rejected, count));
}

void brute_force_spot_check() {
  Rng rng(8008);
  const double delta = 0.5 * kPi / 180.0;
  SolverConfig cfg;
  cfg.tol = 1e-10;
  cfg.max_iter = 100000;
  cfg.retract = true;
  int within = 0, non_tight = 0, failed = 0;
  double worst_gap = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Graph g = t % 2 ? line_graph(3) : Graph(3, {{0, 1}, {1, 2}, {0, 2}});
    const Weights wt = Weights::uniform(g, 1.0, 1.0);
    const SphereSignal y = random_signal(rng, 2, 3, true);
    const auto sol = admm_solve(y, g, wt, cfg);
    const auto bf = brute_force_min(y, wt, g, delta);
    double wy = 0.0;
    for (std::size_t n = 0; n < 3; ++n) wy += wt.vertex[n] * y.norm(n);
    double lam = 0.0;
    for (double l : wt.edge) lam += l;
    const double bound = 0.5 * delta * (wy + 2.0 * lam);
    const double gap = objective_tikhonov(sol.x, y, wt, g) - bf.value;
    if (std::abs(sol.mean_sphere_distance) > 1e-3) {
      ++non_tight;
      std::printf("  instance %d: relaxation not tight (distance %.3g), excluded\n", t, sol.mean_sphere_distance);
      continue;
    }
    worst_gap = std::max(worst_gap, std::abs(gap) / bound);
    if (std::abs(gap) <= bound)
      ++within;
    else
      ++failed;
  }
  report(8, "brute-force tightness", failed == 0,
         fmt("20 instances N=3 lambda=1: %d within the 0.5 deg grid bound, %d non-tight, %d outside; worst "
             "|gap|/bound %.3g",
             within, non_tight, failed, worst_gap));
}

void quaternion_suite() {
  Rng rng(9009);
  double worst_rodrigues = 0.0, worst_round = 0.0, worst_frob = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const auto v = unit(rng, 3);
    const double alpha = uniform(rng, -kPi, kPi);
    const RotationMatrix rq = quat_to_rotation(axis_angle_to_quat({v[0], v[1], v[2]}, alpha));
    // Rodrigues: cos a I + sin a [v]_x + (1 - cos a) v v^T.
    const double c = std::cos(alpha), s = std::sin(alpha);
    const double cross[9] = {0, -v[2], v[1], v[2], 0, -v[0], -v[1], v[0], 0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double ref = (i == j ? c : 0.0) + s * cross[i * 3 + j] + (1 - c) * v[i] * v[j];
        worst_rodrigues = std::max(worst_rodrigues, std::abs(rq(i, j) - ref));
      }

    const auto qv = unit(rng, 4);
    const Quaternion q{qv[0], qv[1], qv[2], qv[3]};
    const Quaternion back = rotation_to_quat(quat_to_rotation(q));
    const Quaternion ref = q.w >= 0 ? q : -q;
    worst_round = std::max({worst_round, std::abs(back.w - ref.w), std::abs(back.i - ref.i), std::abs(back.j - ref.j),
                            std::abs(back.k - ref.k)});

    const auto pv = unit(rng, 4);
    const auto [lhs, rhs] = frobenius_identity_check(q, {pv[0], pv[1], pv[2], pv[3]});
    worst_frob = std::max(worst_frob, std::abs(lhs - rhs));
  }
  const Quaternion one{1, 0, 0, 0}, i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
  const bool table = i * i == -one && j * j == -one && k * k == -one && i * j == k && j * k == i && k * i == j &&
                     j * i == -k && k * j == -i && i * k == -j && i * j * k == -one;
  report(9, "quaternions and rotations",
         worst_rodrigues <= 1e-12 && worst_round < 1e-9 && worst_frob <= 1e-10 && table,
         fmt("10^4 samples: R(q) vs Rodrigues %.2g, round trip %.2g, Frobenius identity %.2g, Hamilton table %s",
             worst_rodrigues, worst_round, worst_frob, table ? "exact" : "WRONG"));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  circle_line();
  circle_grid();
  so3_line();
  equivalence();
  projection();
  adjoint_and_primal();
  lemma_suite();
  brute_force_spot_check();
  quaternion_suite();
  std::printf("%d criteria failed, total %.1f s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
