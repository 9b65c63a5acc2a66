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
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superdiv/corpus.hpp"
#include "superdiv/graph.hpp"
#include "superdiv/lexicon.hpp"

namespace superdiv {

// Gates of the infection rule. A node is infected only when the valences of
// its tagged neighbours have range < range_threshold and binned entropy
// < entropy_threshold.
struct SpreadingParams {
  double range_threshold = 3.0;
  double entropy_threshold = 1.09;
  int bin_count = 10;
  std::size_t min_tagged_neighbors = 1;

  // Throws ConfigError unless both thresholds are positive and
  // bin_count >= 2.
  void validate() const;
};

// Index of the equal-width bin over [0, 10] holding `valence`. Bin k covers
// [10k/n, 10(k+1)/n); the last bin is closed so 10.0 lands in it. Values
// outside [0, 10] are clamped to the end bins.
std::size_t valence_bin(double valence, int bin_count);

// Shannon entropy (natural log) of the binned valences. With 10 bins the
// maximum is ln 10 ~= 2.3026. Throws DataError for empty input.
double neighborhood_entropy(std::span<const double> vals, int bin_count);

// 90th minus 10th percentile, nearest-rank: the q-th percentile of n sorted
// values is element ceil(q n / 100) - 1, clamped to [0, n - 1].
// Throws DataError for empty input.
double neighborhood_range(std::span<const double> vals);

// Mean of the values inside the most populated bin (lowest bin wins ties).
// Throws DataError for empty input.
double binned_mode(std::span<const double> vals, int bin_count);

// The infection rule: nullopt if fewer than min_tagged_neighbors values or
// either gate fails, otherwise binned_mode(). Order of `neighbor_vals`
// does not matter.
std::optional<double> infection_value(std::span<const double> neighbor_vals,
                                      const SpreadingParams& params);

// Partial node -> valence assignment produced by spreading.
struct ValenceState {
  std::vector<double> valence;        // meaningful only where tagged
  std::vector<std::uint8_t> tagged;
  std::vector<std::uint8_t> is_seed;
  std::size_t rounds = 0;

  std::optional<double> valence_of(NodeId id) const {
    if (!tagged[id]) return std::nullopt;
    return valence[id];
  }
  std::size_t tagged_count() const;
};

struct RoundLogEntry {
  std::size_t round = 0;  // 0 for seeds
  NodeId node = 0;
  double valence = 0.0;

  friend bool operator==(const RoundLogEntry&, const RoundLogEntry&) = default;
};

struct SpreadOptions {
  // Seed entries carrying a POS tag only seed nodes seen with that POS.
  bool strict_pos = false;
  // Worker threads for evaluating one round's candidates.
  unsigned jobs = 1;
  // When set, receives one entry per assignment (seeds first).
  std::vector<RoundLogEntry>* round_log = nullptr;
};

struct SpreadResult {
  ValenceState state;
  std::size_t seeds_matched = 0;
  std::size_t seeds_unmatched = 0;
};

// Synchronous epidemic spreading from the seed lexicon. Each round every
// untagged node applies infection_value() to its tagged neighbours as they
// stood at the end of the previous round; assignments are committed
// together and never revised. Stops after the first round that assigns
// nothing, so `rounds` counts that confirming round too (0 for an empty
// network). Throws InvariantError if rounds exceeds the node count.
SpreadResult sentiment_spreading(const CooccurrenceNetwork& network,
                                 const ValenceLexicon& seed,
                                 const SpreadingParams& params,
                                 const SpreadOptions& options = {});

void write_round_log(std::ostream& out, const CooccurrenceNetwork& network,
                     std::span<const RoundLogEntry> log);

// Every tagged node's valence, keyed by lemma.
ValenceMap tagged_valences(const CooccurrenceNetwork& network,
                           const ValenceState& state);

// Seeds for one train/test split: the auxiliary lexicon without any test
// term, overlaid by the training half (train wins on collisions).
ValenceLexicon make_seed_lexicon(const ValenceLexicon& train,
                                 const ValenceLexicon& test,
                                 const ValenceLexicon& auxiliary);

// Spreads from make_seed_lexicon() and returns the valences assigned to
// test terms. Test terms that were never infected are absent.
ValenceMap compute_valences(const CooccurrenceNetwork& network,
                            const ValenceLexicon& train,
                            const ValenceLexicon& test,
                            const SpreadingParams& params,
                            const ValenceLexicon& auxiliary,
                            const SpreadOptions& options = {});

// Same, building the network from `corpus` first.
ValenceMap compute_valences(const ValenceLexicon& train,
                            const ValenceLexicon& test, const Corpus& corpus,
                            const SpreadingParams& params,
                            const ValenceLexicon& auxiliary,
                            const SpreadOptions& options = {});

}  // namespace superdiv
