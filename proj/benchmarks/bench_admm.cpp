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

#include <benchmark/benchmark.h>

#include "reltik/admm.hpp"
#include "reltik/synth.hpp"

using namespace reltik;

namespace {

void run_steps(benchmark::State& state, const Graph& g, const SphereSignal& y) {
  const Weights wt = Weights::uniform(g, 1.0, 1.0);
  AdmmState st = AdmmState::zeros(y.dim(), g);
  for (auto _ : state) benchmark::DoNotOptimize(admm_step(st, y, wt, g, 3.0));
  state.counters["edges"] = static_cast<double>(g.n_edges());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.n_edges()));
}

void BM_AdmmStepLine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const Graph g = line_graph(n);
  run_steps(state, g, add_vmf_noise(smooth_sphere_signal(n, d, 1), 10.0, 2));
}

void BM_AdmmStepGrid(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const Graph g = grid_graph(side, side);
  run_steps(state, g, add_vmf_noise(smooth_sphere_image(side, side, d, 1), 10.0, 2));
}

}  // namespace

BENCHMARK(BM_AdmmStepLine)->Args({1000, 2})->Args({1000, 4})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AdmmStepGrid)->Args({90, 2})->Args({100, 3})->Args({90, 4})->Unit(benchmark::kMillisecond);
