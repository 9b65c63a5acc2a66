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
#include "superdiv/si.hpp"
#include "superdiv/spreading.hpp"
#include "superdiv/synth.hpp"

namespace superdiv {
namespace {

struct Fixture {
  ValenceLexicon vocabulary = generate_vocabulary(600, 1);
  CooccurrenceNetwork network;

  explicit Fixture(std::size_t tweets) {
    SynthConfig config;
    config.regions = {{"AA", tweets, 0.3}};
    config.vocabulary = vocabulary;
    config.seed = 7;
    network = build_network(generate_corpus(config));
  }
};

void BM_Spreading(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  const auto split = split_lexicon(f.vocabulary, 0.5, 3);
  SpreadOptions options;
  options.jobs = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sentiment_spreading(f.network, split.train, {}, options));
  }
}
BENCHMARK(BM_Spreading)->Args({2000, 1})->Args({20000, 1})->Args({20000, 4});

void BM_SuperdiversityIndex(benchmark::State& state) {
  const Fixture f(2000);
  SIOptions options;
  options.iteration_count = 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(superdiversity_index(f.vocabulary, f.network, {}, {}, options));
  }
}
BENCHMARK(BM_SuperdiversityIndex)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace superdiv
