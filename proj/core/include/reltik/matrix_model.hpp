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

// ADMM for the non-simplified relaxed models whose per-edge blocks are the
// real representations (3d x 3d) of the complex (d = 2) or quaternion
// (d = 4) 3 x 3 Hermitian constraint matrices. Each edge carries a full
// vector r_e in R^d instead of a single scalar; only r_e[0] enters the
// objective
//
//   J(x, r) = -sum_n w_n <x_n, y_n> - sum_e lambda_e r_e[0].
//
// With P(x, r) the shifted blocks, every variable occupies its own set of
// entries and |M(z)|_F^2 = d |z|^2, so P^* P is diagonal:
//
//   (P_x^* P(x, r))_n = 2 d nu_n x_n,   (P_r^* P(x, r))_e = 2 d r_e.
//
// This solver exists to cross-check the simplified model on small graphs.

#pragma once

#include <cstddef>

#include "reltik/admm.hpp"
#include "reltik/graph.hpp"
#include "reltik/model.hpp"

namespace reltik {

enum class MatrixVariant { complex_d2, quaternion_d4 };

int variant_dim(MatrixVariant v);

/// Shifted blocks P_(n,m) - I for every edge; r holds one vector per edge.
BlockField apply_P(const SphereSignal& x, const SphereSignal& r, const Graph& g);

struct MatrixAdjointParts {
  SphereSignal x;
  SphereSignal r;
};
MatrixAdjointParts adjoint_P(const BlockField& u, const Graph& g);

double objective_J(const SphereSignal& x, const SphereSignal& r, const SphereSignal& y, const Weights& wt,
                   const Graph& g);

struct MatrixIterate {
  SphereSignal x;
  SphereSignal r;
};

/// Closed-form minimizer of J + rho/2 |P(x, r) - U + Z|^2.
MatrixIterate matrix_primal_update(const BlockField& u, const BlockField& z, const SphereSignal& y,
                                   const Weights& wt, const Graph& g, double rho);

struct MatrixModelResult {
  SphereSignal x;
  SphereSignal r;
  std::size_t iterations = 0;
  double final_residual = 0.0;
  double objective_J = 0.0;
};

/// Requires y.dim() to match the variant and N <= 50.
MatrixModelResult solve_matrix_model(const SphereSignal& y, const Graph& g, const Weights& wt,
                                     const SolverConfig& cfg, MatrixVariant variant);

}  // namespace reltik
