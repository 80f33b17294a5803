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

#include "reltik/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "reltik/error.hpp"

namespace reltik {

namespace {

void require_unit_axis(const Vec3& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(std::abs(n - 1.0) <= 1e-8)) throw std::invalid_argument("rotation axis must be a unit vector");
}

}  // namespace

Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.i * b.i - a.j * b.j - a.k * b.k,
          a.w * b.i + a.i * b.w + a.j * b.k - a.k * b.j,
          a.w * b.j - a.i * b.k + a.j * b.w + a.k * b.i,
          a.w * b.k + a.i * b.j - a.j * b.i + a.k * b.w};
}

Quaternion quat_conj(const Quaternion& q) { return {q.w, -q.i, -q.j, -q.k}; }

double quat_norm(const Quaternion& q) { return std::sqrt(q.w * q.w + q.i * q.i + q.j * q.j + q.k * q.k); }

double quat_real_of_product_conj(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.i * b.i + a.j * b.j + a.k * b.k;
}

bool RotationMatrix::is_rotation(double tol) const {
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m[k * 3 + r] * m[k * 3 + c];
      if (!(std::abs(s - (r == c ? 1.0 : 0.0)) <= tol)) return false;
    }
  }
  const double det = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
                     m[2] * (m[3] * m[7] - m[4] * m[6]);
  return std::abs(det - 1.0) <= tol;
}

double frobenius_distance_squared(const RotationMatrix& a, const RotationMatrix& b) {
  double s = 0.0;
  for (int t = 0; t < 9; ++t) s += (a.m[t] - b.m[t]) * (a.m[t] - b.m[t]);
  return s;
}

Quaternion axis_angle_to_quat(const Vec3& v, double alpha) {
  require_unit_axis(v);
  const double c = std::cos(alpha / 2.0);
  const double s = std::sin(alpha / 2.0);
  return {c, s * v[0], s * v[1], s * v[2]};
}

RotationMatrix quat_to_rotation(const Quaternion& q) {
  if (!(std::abs(quat_norm(q) - 1.0) <= 1e-8)) throw std::invalid_argument("quat_to_rotation: quaternion is not unit");
  const double w = q.w, x = q.i, y = q.j, z = q.k;
  return {{1 - 2 * y * y - 2 * z * z, 2 * x * y - 2 * z * w, 2 * x * z + 2 * y * w,
           2 * x * y + 2 * z * w, 1 - 2 * x * x - 2 * z * z, 2 * y * z - 2 * x * w,
           2 * x * z - 2 * y * w, 2 * y * z + 2 * x * w, 1 - 2 * x * x - 2 * y * y}};
}

RotationMatrix axis_angle_to_rotation(const Vec3& v, double alpha) {
  require_unit_axis(v);
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  const double t = 1.0 - c;
  const double v1 = v[0], v2 = v[1], v3 = v[2];
  return {{t * v1 * v1 + c, t * v1 * v2 - v3 * s, t * v1 * v3 + v2 * s,
           t * v2 * v1 + v3 * s, t * v2 * v2 + c, t * v2 * v3 - v1 * s,
           t * v1 * v3 - v2 * s, t * v3 * v2 + v1 * s, t * v3 * v3 + c}};
}

Quaternion rotation_to_quat(const RotationMatrix& r) {
  if (!r.is_rotation(1e-6)) throw InvalidRotationError("rotation_to_quat: matrix is not a rotation");
  const double tr = r(0, 0) + r(1, 1) + r(2, 2);
  Quaternion q;
  // Shepperd: pivot on the largest of w^2, x^2, y^2, z^2.
  if (tr >= r(0, 0) && tr >= r(1, 1) && tr >= r(2, 2)) {
    q.w = 0.5 * std::sqrt(std::max(0.0, 1.0 + tr));
    const double f = 0.25 / q.w;
    q.i = (r(2, 1) - r(1, 2)) * f;
    q.j = (r(0, 2) - r(2, 0)) * f;
    q.k = (r(1, 0) - r(0, 1)) * f;
  } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
    q.i = 0.5 * std::sqrt(std::max(0.0, 1.0 + r(0, 0) - r(1, 1) - r(2, 2)));
    const double f = 0.25 / q.i;
    q.w = (r(2, 1) - r(1, 2)) * f;
    q.j = (r(0, 1) + r(1, 0)) * f;
    q.k = (r(0, 2) + r(2, 0)) * f;
  } else if (r(1, 1) >= r(2, 2)) {
    q.j = 0.5 * std::sqrt(std::max(0.0, 1.0 - r(0, 0) + r(1, 1) - r(2, 2)));
    const double f = 0.25 / q.j;
    q.w = (r(0, 2) - r(2, 0)) * f;
    q.i = (r(0, 1) + r(1, 0)) * f;
    q.k = (r(1, 2) + r(2, 1)) * f;
  } else {
    q.k = 0.5 * std::sqrt(std::max(0.0, 1.0 - r(0, 0) - r(1, 1) + r(2, 2)));
    const double f = 0.25 / q.k;
    q.w = (r(1, 0) - r(0, 1)) * f;
    q.i = (r(0, 2) + r(2, 0)) * f;
    q.j = (r(1, 2) + r(2, 1)) * f;
  }
  q = (1.0 / quat_norm(q)) * q;

  if (std::abs(q.w) > 1e-12) {
    if (q.w < 0.0) q = -q;
  } else {
    q.w = 0.0;
    const double first = q.i != 0.0 ? q.i : (q.j != 0.0 ? q.j : q.k);
    if (first < 0.0) q = -q;
  }
  return q;
}

AxisAngle rotation_to_axis_angle(const RotationMatrix& r) {
  const Quaternion q = rotation_to_quat(r);
  const double s = std::sqrt(q.i * q.i + q.j * q.j + q.k * q.k);
  AxisAngle out;
  if (s < 1e-15) return out;
  out.axis = {q.i / s, q.j / s, q.k / s};
  out.angle = 2.0 * std::atan2(s, q.w);
  return out;
}

LiftResult lift_signs(std::span<const Quaternion> q, const Graph& g) {
  if (q.size() != g.n_vertices()) throw std::invalid_argument("lift_signs: signal length does not match graph");
  LiftResult out;
  out.lifted.assign(q.begin(), q.end());
  std::vector<char> seen(q.size(), 0);
  std::queue<std::size_t> todo;
  todo.push(0);
  seen[0] = 1;
  while (!todo.empty()) {
    const std::size_t v = todo.front();
    todo.pop();
    for (std::size_t e : g.incident_edges(v)) {
      const Edge& edge = g.edge(e);
      const std::size_t u = edge.first == v ? edge.second : edge.first;
      if (seen[u]) continue;
      if (quat_real_of_product_conj(out.lifted[u], out.lifted[v]) < 0.0) out.lifted[u] = -out.lifted[u];
      seen[u] = 1;
      todo.push(u);
    }
  }
  for (std::size_t e = 0; e < g.n_edges(); ++e) {
    const Edge& edge = g.edge(e);
    if (quat_real_of_product_conj(out.lifted[edge.first], out.lifted[edge.second]) < 0.0)
      out.violating_edges.push_back(e);
  }
  out.consistent = out.violating_edges.empty();
  return out;
}

std::pair<double, double> frobenius_identity_check(const Quaternion& qn, const Quaternion& qm) {
  const double lhs = frobenius_distance_squared(quat_to_rotation(qn), quat_to_rotation(qm));
  const double re = quat_real_of_product_conj(qn, qm);
  return {lhs, 8.0 * (1.0 - re * re)};
}

std::vector<double> matrix_rep(std::span<const double> z) {
  if (z.size() == 2) return {z[0], -z[1], z[1], z[0]};
  if (z.size() == 4) {
    const double a = z[0], b = z[1], c = z[2], d = z[3];
    return {a, -b, -c, -d,
            b, a, -d, c,
            c, d, a, -b,
            d, -c, b, a};
  }
  throw std::invalid_argument("matrix_rep: dimension must be 2 or 4");
}

}  // namespace reltik
