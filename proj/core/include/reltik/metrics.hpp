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

#pragma once

#include <vector>

#include "reltik/model.hpp"

namespace reltik {

/// Mean of 1 - |x_n| over all vertices.
double mean_sphere_distance(const SphereSignal& x);

/// sqrt(1/N sum |x_n - x_true_n|^2).
double rmse(const SphereSignal& x, const SphereSignal& x_true);

/// Angle between x_n and x_true_n in radians; 0 where either vector is 0.
std::vector<double> angular_errors(const SphereSignal& x, const SphereSignal& x_true);

}  // namespace reltik
