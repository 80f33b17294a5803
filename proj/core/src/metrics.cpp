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

#include "reltik/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reltik {

namespace {

void check_same_shape(const SphereSignal& a, const SphereSignal& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) throw std::invalid_argument("signals differ in shape");
}

}  // namespace

double mean_sphere_distance(const SphereSignal& x) {
  if (x.size() == 0) return 0.0;
  double s = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) s += 1.0 - x.norm(n);
  return s / static_cast<double>(x.size());
}

double rmse(const SphereSignal& x, const SphereSignal& x_true) {
  check_same_shape(x, x_true);
  if (x.size() == 0) return 0.0;
  double s = 0.0;
  auto a = x.values();
  auto b = x_true.values();
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s / static_cast<double>(x.size()));
}

std::vector<double> angular_errors(const SphereSignal& x, const SphereSignal& x_true) {
  check_same_shape(x, x_true);
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double nx = x.norm(n);
    const double nt = x_true.norm(n);
    if (nx == 0.0 || nt == 0.0) continue;
    const double c = std::clamp(dot(x[n], x_true[n]) / (nx * nt), -1.0, 1.0);
    out[n] = std::acos(c);
  }
  return out;
}

}  // namespace reltik
