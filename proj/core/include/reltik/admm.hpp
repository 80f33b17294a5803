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

// ADMM for the simplified relaxed model
//
//   min K(x, l) + G(U)  s.t.  Q(x, l) = U,
//
// where Q(x, l) collects the shifted blocks Q_(n,m) - I and G is the
// indicator of {A : A >= -I} applied blockwise. One iteration is
//
//   (x, l) <- closed-form minimizer of K + rho/2 |Q(x, l) - U + Z|^2
//   U_e    <- projection of Q(x, l)_e + Z_e onto {A >= -I}
//   Z      <- Z + Q(x, l) - U

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "reltik/graph.hpp"
#include "reltik/model.hpp"

namespace reltik {

struct SolverConfig {
  double rho = 3.0;
  std::size_t max_iter = 600;
  /// Stop once the 2-norm change of (x, l) drops below tol. 0 runs max_iter.
  double tol = 1e-4;
  /// Normalize the returned x onto the sphere.
  bool retract = false;
  /// Worker threads for the per-edge projections. Results do not depend on it.
  int threads = 1;

  /// Throws std::invalid_argument for rho <= 0, tol < 0, max_iter == 0 or
  /// threads < 1.
  void validate() const;
};

/// Solver state; all zero at k = 0.
struct AdmmState {
  SphereSignal x;
  EdgeScalars ell;
  BlockField u;
  BlockField z;
  std::size_t iteration = 0;

  static AdmmState zeros(int dim, const Graph& g);
};

struct PrimalIterate {
  SphereSignal x;
  EdgeScalars ell;
};

struct IterationInfo {
  std::size_t iteration;
  double residual;
  double objective;
  double mean_sphere_distance;
};
using IterationObserver = std::function<void(const IterationInfo&)>;

struct DenoiseResult {
  SphereSignal x;
  EdgeScalars ell;
  std::size_t iterations = 0;
  double final_residual = 0.0;
  /// K at the unretracted iterate.
  double objective_K = 0.0;
  /// Mean of 1 - |x_n| at the unretracted iterate.
  double mean_sphere_distance = 0.0;
  double wall_time_seconds = 0.0;
  /// Vertices whose iterate had norm < 1e-12 and were left unretracted.
  std::vector<std::size_t> degenerate_vertices;
};

/// x_n = (Q_x^*(U - Z)_n + w_n y_n / rho) / (2 nu_n),
/// l_e = (Q_l^*(U - Z)_e + lambda_e / rho) / 2.
/// Throws InvalidGraphError when some vertex has no incident edge.
PrimalIterate primal_update(const BlockField& u, const BlockField& z, const SphereSignal& y, const Weights& wt,
                            const Graph& g, double rho);

/// U_e = proj(Q(x, l)_e + Z_e) for every edge.
BlockField block_update(const SphereSignal& x, const EdgeScalars& ell, const BlockField& z, const Graph& g);

/// Z + Q(x, l) - U.
BlockField dual_update(const BlockField& z, const SphereSignal& x, const EdgeScalars& ell, const BlockField& u,
                       const Graph& g);

/// Euclidean norm of the concatenated difference of (x, l).
double residual(const PrimalIterate& prev, const PrimalIterate& next);

/// One full iteration in place; returns the residual.
double admm_step(AdmmState& state, const SphereSignal& y, const Weights& wt, const Graph& g, double rho,
                 int threads = 1);

/// Runs ADMM from zero. `observer`, when set, sees every iteration.
DenoiseResult admm_solve(const SphereSignal& y, const Graph& g, const Weights& wt, const SolverConfig& cfg,
                         const IterationObserver& observer = {});

/// Normalizes each x_n with |x_n| >= 1e-12; returns the indices of the rest.
std::vector<std::size_t> retract_to_sphere(SphereSignal& x);

}  // namespace reltik
