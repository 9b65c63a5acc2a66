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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "superdiv/corpus.hpp"
#include "superdiv/graph.hpp"
#include "superdiv/lexicon.hpp"
#include "superdiv/spreading.hpp"
#include "superdiv/stats.hpp"

namespace superdiv {

// SI = (1 - mean_r) / 2: 0 when community and standard valences agree
// perfectly, 0.5 when uncorrelated, 1 when opposed.
constexpr double si_from_mean_r(double mean_r) noexcept {
  return (1.0 - mean_r) / 2.0;
}

struct SIResult {
  std::string region;
  double si = 0.5;
  double mean_r = 0.0;
  // Correlations of the iterations that produced one.
  std::vector<double> per_iteration_r;
  // Matched test terms of every iteration, including skipped ones.
  std::vector<std::size_t> matched_test_terms;
  std::size_t skipped_iterations = 0;

  std::size_t iterations_used() const noexcept { return per_iteration_r.size(); }
};

struct SIOptions {
  std::size_t iteration_count = 10;
  std::uint64_t base_seed = 0;
  double split_fraction = 0.5;
  SpreadOptions spread;
};

// Repeats: split the standard lexicon (seed base_seed + i), spread over
// `network`, correlate modelled against standard valences of the matched
// test terms. Iterations with fewer than two matched terms, or with a
// constant side, are skipped and counted. Throws DataError("no signal")
// if every iteration was skipped and ConfigError if iteration_count < 1.
SIResult superdiversity_index(const ValenceLexicon& standard,
                              const CooccurrenceNetwork& network,
                              const SpreadingParams& params,
                              const ValenceLexicon& auxiliary,
                              const SIOptions& options);

SIResult superdiversity_index(const ValenceLexicon& standard,
                              const Corpus& corpus,
                              const SpreadingParams& params,
                              const ValenceLexicon& auxiliary,
                              const SIOptions& options);

// Pools every tweet, permutes the pool and deals it back so each region
// keeps exactly its original tweet count. Deterministic in `seed`. Throws
// DataError for fewer than two regions.
RegionPartition null_model_reshuffle(const RegionPartition& partitions,
                                     std::uint64_t seed);

using RegionValues = std::map<std::string, double, std::less<>>;

// region -> immigrant rate (or any other per-region reference value).
using GroundTruthTable = RegionValues;

// Accepts `region,immigrants,population` (rate = immigrants / population)
// or a two-column `region,<value>` table such as the synthetic
// `region,diversity_p` sidecar.
GroundTruthTable load_ground_truth(const std::filesystem::path& path);

// Pearson correlation over the regions present in both maps, in code
// order. Throws DataError if fewer than two regions are shared.
double correlate_with_groundtruth(const RegionValues& values,
                                  const GroundTruthTable& truth);
double correlate_with_groundtruth(const std::map<std::string, SIResult, std::less<>>& results,
                                  const GroundTruthTable& truth);

}  // namespace superdiv
