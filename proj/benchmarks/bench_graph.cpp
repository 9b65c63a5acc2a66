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

#include "superdiv/graph.hpp"
#include "superdiv/random.hpp"
#include "superdiv/synth.hpp"

namespace superdiv {
namespace {

Corpus corpus_of(std::size_t tweets) {
  SynthConfig config;
  config.regions = {{"AA", tweets, 0.3}};
  config.vocabulary = generate_vocabulary(600, 1);
  config.seed = 7;
  return generate_corpus(config);
}

void BM_BuildNetwork(benchmark::State& state) {
  const auto corpus = corpus_of(static_cast<std::size_t>(state.range(0)));
  const auto jobs = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_network(corpus, jobs));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildNetwork)->Args({2000, 1})->Args({20000, 1})->Args({20000, 4});

void BM_GenerateCorpus(benchmark::State& state) {
  SynthConfig config;
  config.regions = {{"AA", static_cast<std::size_t>(state.range(0)), 0.5}};
  config.vocabulary = generate_vocabulary(600, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_corpus(config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenerateCorpus)->Arg(2000)->Arg(20000);

}  // namespace
}  // namespace superdiv
