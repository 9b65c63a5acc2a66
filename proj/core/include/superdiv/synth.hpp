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
#include <string>
#include <vector>

#include "superdiv/corpus.hpp"
#include "superdiv/lexicon.hpp"
#include "superdiv/si.hpp"

namespace superdiv {

struct SynthRegion {
  std::string code;
  std::size_t n_tweets = 0;
  // Probability that a tweet's author uses the shifted valence map.
  double diversity_p = 0.0;
};

struct SynthLanguage {
  std::string code;
  double weight = 1.0;
};

// Generator settings. Every tweet picks an anchor word and co-selects words
// whose valence, under the author's valence map, lies within
// `cooccurrence_window` of the anchor's. Unshifted authors use the standard
// valences. Shifted authors use a per-region map in which each word, with
// probability `shifted_word_rate`, carries a valence perturbed by
// N(0, valence_shift_sigma) noise clamped to [0, 10].
struct SynthConfig {
  std::vector<SynthRegion> regions;
  std::size_t min_lemmas = 4;
  std::size_t max_lemmas = 8;
  double valence_shift_sigma = 1.0;
  double shifted_word_rate = 1.0;
  ValenceLexicon vocabulary;
  // Non-lexicon words with latent valences, named f0000, f0001, ...
  std::size_t filler_count = 200;
  // First language is the local one.
  std::vector<SynthLanguage> languages = {{"en", 1.0}};
  double cooccurrence_window = 1.0;
  // Fraction of tweets drawn uniformly from the vocabulary, ignoring valence.
  double mixed_tweet_rate = 0.1;
  double negation_rate = 0.05;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  // Throws ConfigError describing the first violated constraint.
  void validate() const;
};

// Deterministic in the config (including across `jobs`). Region codes are
// written to all three NUTS levels and to the location label. The valence
// shift noise is drawn from its own stream, so with diversity_p = 0 the
// output does not depend on valence_shift_sigma.
Corpus generate_corpus(const SynthConfig& config);

// A synthetic standard lexicon: terms w0000.. with valences uniform on
// [0, 10], rounded to two decimals.
ValenceLexicon generate_vocabulary(std::size_t n_terms, std::uint64_t seed);

// The configured diversity_p per region, usable as ground truth.
GroundTruthTable diversity_table(const SynthConfig& config);

// CSV `region,diversity_p`.
void write_diversity_sidecar(const std::filesystem::path& path,
                             const SynthConfig& config);

}  // namespace superdiv
