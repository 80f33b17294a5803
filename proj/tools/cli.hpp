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

// Command-line front end. run_cli is the whole program minus process setup,
// so tests can drive it with argument vectors and string streams.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "reltik/admm.hpp"
#include "reltik/experiments.hpp"

namespace reltik::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kDivergence = 3,
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::json solver_to_json(const SolverConfig& cfg);
nlohmann::json report_to_json(const ExperimentReport& rep);

/// iteration,objective,mean_sphere_distance,residual with a header row.
void write_trace_csv(const std::string& path, const Trace& t);

}  // namespace reltik::cli
