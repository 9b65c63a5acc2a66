// Copyright 2026 The superdiv Authors
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

#include <vector>

#include "superdiv/random.hpp"
#include "superdiv/spreading.hpp"
#include "superdiv/stats.hpp"

namespace superdiv {
namespace {

std::vector<double> valences(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = 10.0 * uniform_unit(rng);
  return v;
}

void BM_Pearson(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = valences(n, 1);
  const auto y = valences(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(pearson(x, y));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Pearson)->Arg(500)->Arg(50000);

void BM_InfectionValue(benchmark::State& state) {
  const auto vals = valences(static_cast<std::size_t>(state.range(0)), 3);
  const SpreadingParams params{10.0, 2.4};
  for (auto _ : state) benchmark::DoNotOptimize(infection_value(vals, params));
}
BENCHMARK(BM_InfectionValue)->Arg(8)->Arg(64)->Arg(1024);

void BM_Spearman(benchmark::State& state) {
  const auto x = valences(static_cast<std::size_t>(state.range(0)), 4);
  const auto y = valences(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(spearman(x, y));
}
BENCHMARK(BM_Spearman)->Arg(10)->Arg(10000);

}  // namespace
}  // namespace superdiv
