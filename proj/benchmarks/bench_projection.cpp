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

#include <random>
#include <vector>

#include "reltik/smallsym.hpp"

using namespace reltik;

namespace {

// A pool of random symmetric matrices, half of them already in the cone.
std::vector<smallsym::SymMatrix> pool(int n, bool feasible) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  std::vector<smallsym::SymMatrix> out;
  for (int t = 0; t < 64; ++t) {
    std::vector<double> a(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) a[i * n + j] = a[j * n + i] = g(rng);
    if (feasible) {
      std::vector<double> b(n * n, 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) b[i * n + j] += a[i * n + k] * a[j * n + k];
      a = b;
    }
    out.emplace_back(n, a);
  }
  return out;
}

void BM_ProjectInfeasible(benchmark::State& state) {
  const auto mats = pool(static_cast<int>(state.range(0)), false);
  std::size_t k = 0;
  for (auto _ : state) {
    auto p = smallsym::project_shifted_psd(mats[k++ % mats.size()]);
    benchmark::DoNotOptimize(p);
  }
}

void BM_ProjectFeasible(benchmark::State& state) {
  const auto mats = pool(static_cast<int>(state.range(0)), true);
  std::size_t k = 0;
  for (auto _ : state) {
    auto p = smallsym::project_shifted_psd(mats[k++ % mats.size()]);
    benchmark::DoNotOptimize(p);
  }
}

void BM_SymEig(benchmark::State& state) {
  const auto mats = pool(static_cast<int>(state.range(0)), false);
  std::size_t k = 0;
  for (auto _ : state) {
    auto e = smallsym::sym_eig(mats[k++ % mats.size()]);
    benchmark::DoNotOptimize(e);
  }
}

}  // namespace

BENCHMARK(BM_ProjectInfeasible)->Arg(4)->Arg(5)->Arg(6)->Arg(12);
BENCHMARK(BM_ProjectFeasible)->Arg(4)->Arg(5)->Arg(6)->Arg(12);
BENCHMARK(BM_SymEig)->Arg(4)->Arg(5)->Arg(6)->Arg(12);
