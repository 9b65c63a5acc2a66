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
#include <optional>
#include <span>
#include <string>

#include "superdiv/corpus.hpp"

namespace superdiv {

// Alternative diversity measures computed from the same tweets as SI.
struct BaselineReport {
  std::string region;
  std::size_t tweet_count = 0;
  std::optional<double> tweets_per_capita;
  std::size_t language_count = 0;
  double language_entropy = 0.0;
  double ttr = 0.0;
};

// Type-token ratio: distinct lemmas / lemma tokens. Throws DataError when
// the corpus holds no lemma tokens.
double ttr(const Corpus& corpus);

// Entropy (natural log) of the tweet language distribution. Throws
// DataError for an empty input.
double language_entropy(std::span<const Tweet> tweets);

// `region_tweets` is the unfiltered multilingual stream of the region (used
// for the language measures); `local_corpus` its local-language subset
// (used for counts and TTR). Throws DataError if population is 0.
BaselineReport baseline_report(std::string region,
                               std::span<const Tweet> region_tweets,
                               const Corpus& local_corpus,
                               std::optional<std::uint64_t> population);

void write_baseline_header(std::ostream& out);
void write_baseline_row(std::ostream& out, const BaselineReport& report);

}  // namespace superdiv
