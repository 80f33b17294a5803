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

// Quaternions, rotations and the 2:1 covering of SO(3) by unit quaternions.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "reltik/graph.hpp"

namespace reltik {

using Vec3 = std::array<double, 3>;

/// w + i*x_i + j*x_j + k*x_k.
struct Quaternion {
  double w = 0.0;
  double i = 0.0;
  double j = 0.0;
  double k = 0.0;

  std::array<double, 4> to_array() const { return {w, i, j, k}; }
  static Quaternion from_span(std::span<const double> v) { return {v[0], v[1], v[2], v[3]}; }

  friend bool operator==(const Quaternion&, const Quaternion&) = default;
  friend Quaternion operator-(const Quaternion& q) { return {-q.w, -q.i, -q.j, -q.k}; }
  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.i + b.i, a.j + b.j, a.k + b.k};
  }
  friend Quaternion operator*(double s, const Quaternion& q) { return {s * q.w, s * q.i, s * q.j, s * q.k}; }
};

/// Hamilton product.
Quaternion quat_mul(const Quaternion& a, const Quaternion& b);
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return quat_mul(a, b); }
Quaternion quat_conj(const Quaternion& q);
double quat_norm(const Quaternion& q);
/// Re[a * conj(b)], equal to the Euclidean inner product of the 4-vectors.
double quat_real_of_product_conj(const Quaternion& a, const Quaternion& b);

/// 3x3 real matrix, row-major.
struct RotationMatrix {
  std::array<double, 9> m{};

  double operator()(int r, int c) const { return m[r * 3 + c]; }
  double& operator()(int r, int c) { return m[r * 3 + c]; }
  static RotationMatrix identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }

  /// max |R^T R - I| and |det R - 1| both <= tol.
  bool is_rotation(double tol) const;
};

double frobenius_distance_squared(const RotationMatrix& a, const RotationMatrix& b);

struct AxisAngle {
  Vec3 axis{0.0, 0.0, 1.0};
  double angle = 0.0;
};

/// cos(alpha/2) + sin(alpha/2)(i v1 + j v2 + k v3). Throws
/// std::invalid_argument if |v| differs from 1 by more than 1e-8.
Quaternion axis_angle_to_quat(const Vec3& v, double alpha);

/// R(q); identical for q and -q. Requires |q| = 1 +- 1e-8.
RotationMatrix quat_to_rotation(const Quaternion& q);

/// Rodrigues form of the rotation about unit axis v by angle alpha.
RotationMatrix axis_angle_to_rotation(const Vec3& v, double alpha);

/// Inverse of quat_to_rotation choosing the representative with Re >= 0.
/// When Re vanishes the first nonzero imaginary component is made positive.
/// Throws InvalidRotationError if the input is not a rotation within 1e-6.
Quaternion rotation_to_quat(const RotationMatrix& r);

/// Axis and angle in [0, pi]. For the identity the axis is e3.
AxisAngle rotation_to_axis_angle(const RotationMatrix& r);

struct LiftResult {
  std::vector<Quaternion> lifted;
  bool consistent = true;
  /// Edge indices with Re[q_n conj(q_m)] < 0 after lifting.
  std::vector<std::size_t> violating_edges;
};

/// Chooses quaternion signs so that Re[q_n conj(q_m)] >= 0 along a
/// breadth-first traversal from vertex 0 (edges visited in edge order),
/// then checks every edge. Ties keep the current sign.
LiftResult lift_signs(std::span<const Quaternion> q, const Graph& g);

/// (|R(qn) - R(qm)|_F^2, 8 (1 - Re[qn conj(qm)]^2)).
std::pair<double, double> frobenius_identity_check(const Quaternion& qn, const Quaternion& qm);

/// Real matrix representation of a complex number (d = 2) or a quaternion
/// (d = 4), row-major d x d. Multiplicative: M(a) M(b) = M(ab).
std::vector<double> matrix_rep(std::span<const double> z);

}  // namespace reltik
