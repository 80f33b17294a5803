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

#include <stdexcept>
#include <string>

namespace reltik {

/// Leading block of a Schur complement is (numerically) singular.
class SingularBlockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graph violates a solver precondition (e.g. an isolated vertex).
class InvalidGraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix is not a rotation within tolerance.
class InvalidRotationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem instance exceeds what an exhaustive routine accepts.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Solver produced a non-finite iterate.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reltik
