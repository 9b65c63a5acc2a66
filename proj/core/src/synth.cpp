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

#include "superdiv/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <thread>

#include "superdiv/error.hpp"
#include "superdiv/random.hpp"
#include "superdiv/text.hpp"

namespace superdiv {

namespace {

// Stream tags for derive_seed().
constexpr std::uint64_t kRegionStream = 1;
constexpr std::uint64_t kShiftStream = 2;
constexpr std::uint64_t kTweetStream = 3;
constexpr std::uint64_t kFillerStream = 4;

struct Word {
  std::string name;
  std::string pos;
  double valence = 0.0;
};

// Words ordered by valence under one valence map, for window lookups.
struct ValenceIndex {
  std::vector<double> values;        // per word
  std::vector<std::size_t> by_value; // word ids sorted by value

  explicit ValenceIndex(std::vector<double> vals) : values(std::move(vals)) {
    by_value.resize(values.size());
    std::iota(by_value.begin(), by_value.end(), std::size_t{0});
    std::stable_sort(by_value.begin(), by_value.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  }

  // Positions [first, last) in by_value with value in [lo, hi].
  std::pair<std::size_t, std::size_t> window(double lo, double hi) const {
    const auto first = std::lower_bound(
        by_value.begin(), by_value.end(), lo,
        [&](std::size_t w, double v) { return values[w] < v; });
    const auto last = std::upper_bound(
        by_value.begin(), by_value.end(), hi,
        [&](double v, std::size_t w) { return v < values[w]; });
    return {static_cast<std::size_t>(first - by_value.begin()),
            static_cast<std::size_t>(last - by_value.begin())};
  }
};

// prefix + index zero-padded to four digits: w0007, f0123, w12345.
std::string padded_name(char prefix, std::size_t i) {
  auto digits = std::to_string(i);
  if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
  return prefix + digits;
}

std::vector<Word> build_words(const SynthConfig& config) {
  std::vector<Word> words;
  for (const auto& [term, e] : config.vocabulary) {
    words.push_back(Word{term, e.pos ? std::string(to_string(*e.pos)) : "noun",
                         e.valence});
  }
  Rng rng(derive_seed(config.seed, kFillerStream, 0));
  for (std::size_t i = 0; i < config.filler_count; ++i) {
    words.push_back(
        Word{padded_name('f', i), "noun", uniform_unit(rng) * kMaxValence});
  }
  for (auto& w : words) {
    if (w.pos == "adjective") w.pos = "adj";
  }
  return words;
}

std::size_t pick_language(Rng& rng, const std::vector<SynthLanguage>& langs,
                          double total_weight) {
  const double u = uniform_unit(rng) * total_weight;
  double acc = 0.0;
  for (std::size_t i = 0; i < langs.size(); ++i) {
    acc += langs[i].weight;
    if (u < acc) return i;
  }
  return langs.size() - 1;
}

// Draws up to k distinct positions from [first, last) by partial shuffle.
void sample_positions(Rng& rng, std::size_t first, std::size_t last,
                      std::size_t k, std::vector<std::size_t>& out) {
  out.resize(last - first);
  std::iota(out.begin(), out.end(), first);
  const std::size_t take = std::min(k, out.size());
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_index(rng, out.size() - i));
    std::swap(out[i], out[j]);
  }
  out.resize(take);
}

std::vector<Tweet> generate_region(const SynthConfig& config,
                                   const std::vector<Word>& words,
                                   const ValenceIndex& standard,
                                   std::size_t region_index) {
  const auto& region = config.regions[region_index];
  const std::uint64_t region_seed =
      derive_seed(config.seed, kRegionStream, region_index);

  // Separate stream: the tweet stream never observes the shift noise.
  std::vector<double> shifted_values = standard.values;
  {
    Rng shift_rng(derive_seed(region_seed, kShiftStream, 0));
    for (auto& v : shifted_values) {
      const bool moves = bernoulli(shift_rng, config.shifted_word_rate);
      const double noise = config.valence_shift_sigma * standard_normal(shift_rng);
      if (moves) v = std::clamp(v + noise, kMinValence, kMaxValence);
    }
  }
  const ValenceIndex shifted(std::move(shifted_values));

  double total_weight = 0.0;
  for (const auto& l : config.languages) total_weight += l.weight;

  Rng rng(derive_seed(region_seed, kTweetStream, 0));
  std::vector<Tweet> tweets;
  tweets.reserve(region.n_tweets);
  std::vector<std::size_t> picks;
  const double half = config.cooccurrence_window / 2.0;
  for (std::size_t j = 0; j < region.n_tweets; ++j) {
    Tweet t;
    t.id = region.code + "-" + std::to_string(j);
    t.location_label = region.code;
    t.nuts = {region.code, region.code, region.code};
    t.language = config.languages[pick_language(rng, config.languages, total_weight)].code;
    const bool shifted_author = bernoulli(rng, region.diversity_p);
    const bool mixed = bernoulli(rng, config.mixed_tweet_rate);
    t.negated = bernoulli(rng, config.negation_rate);
    const std::size_t k =
        config.min_lemmas +
        static_cast<std::size_t>(uniform_index(rng, config.max_lemmas - config.min_lemmas + 1));

    if (mixed) {
      sample_positions(rng, 0, words.size(), k, picks);
      for (const auto p : picks) t.lemmas.push_back(Lemma{words[p].name, words[p].pos});
    } else {
      const ValenceIndex& map = shifted_author ? shifted : standard;
      const auto anchor = static_cast<std::size_t>(uniform_index(rng, words.size()));
      const double centre = map.values[anchor];
      const auto [first, last] = map.window(centre - half, centre + half);
      t.lemmas.push_back(Lemma{words[anchor].name, words[anchor].pos});
      sample_positions(rng, first, last, k, picks);
      for (const auto p : picks) {
        const std::size_t w = map.by_value[p];
        if (w == anchor) continue;
        if (t.lemmas.size() == k) break;
        t.lemmas.push_back(Lemma{words[w].name, words[w].pos});
      }
    }
    tweets.push_back(std::move(t));
  }
  return tweets;
}

}  // namespace

void SynthConfig::validate() const {
  if (regions.empty()) throw ConfigError("synth: no regions configured");
  std::set<std::string> codes;
  for (const auto& r : regions) {
    if (r.code.empty()) throw ConfigError("synth: empty region code");
    if (!codes.insert(r.code).second) {
      throw ConfigError("synth: duplicate region code " + r.code);
    }
    if (r.n_tweets < 1) throw ConfigError("synth: region " + r.code + " has no tweets");
    if (!(r.diversity_p >= 0.0 && r.diversity_p <= 1.0)) {
      throw ConfigError("synth: diversity_p of " + r.code + " outside [0,1]");
    }
  }
  if (min_lemmas < 1 || max_lemmas < min_lemmas) {
    throw ConfigError("synth: need 1 <= min_lemmas <= max_lemmas");
  }
  if (!(shifted_word_rate >= 0.0 && shifted_word_rate <= 1.0)) {
    throw ConfigError("synth: shifted_word_rate outside [0,1]");
  }
  if (!(valence_shift_sigma > 0.0)) {
    throw ConfigError("synth: valence_shift_sigma must be positive");
  }
  if (vocabulary.empty() && filler_count == 0) {
    throw ConfigError("synth: empty vocabulary");
  }
  if (languages.empty()) throw ConfigError("synth: no languages");
  for (const auto& l : languages) {
    if (l.code.empty() || !(l.weight > 0.0)) {
      throw ConfigError("synth: languages need a code and a positive weight");
    }
  }
  if (!(cooccurrence_window > 0.0)) {
    throw ConfigError("synth: cooccurrence_window must be positive");
  }
  for (const double p : {mixed_tweet_rate, negation_rate}) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("synth: rates must lie in [0,1]");
  }
}

Corpus generate_corpus(const SynthConfig& config) {
  config.validate();
  const auto words = build_words(config);
  std::vector<double> values;
  values.reserve(words.size());
  for (const auto& w : words) values.push_back(w.valence);
  const ValenceIndex standard(std::move(values));

  std::vector<std::vector<Tweet>> per_region(config.regions.size());
  const unsigned jobs = std::max(1u, config.jobs);
  if (jobs > 1 && config.regions.size() > 1) {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t r = w; r < config.regions.size(); r += jobs) {
          per_region[r] = generate_region(config, words, standard, r);
        }
      });
    }
  } else {
    for (std::size_t r = 0; r < config.regions.size(); ++r) {
      per_region[r] = generate_region(config, words, standard, r);
    }
  }

  Corpus corpus;
  for (auto& tweets : per_region) {
    for (auto& t : tweets) corpus.tweets.push_back(std::move(t));
  }
  return corpus;
}

ValenceLexicon generate_vocabulary(std::size_t n_terms, std::uint64_t seed) {
  Rng rng(mix_seed(seed));
  ValenceLexicon lex;
  for (std::size_t i = 0; i < n_terms; ++i) {
    const double v = std::round(uniform_unit(rng) * 1000.0) / 100.0;
    lex.insert(LexiconEntry{padded_name('w', i), v, std::nullopt,
                            LexiconSource::kStandard});
  }
  return lex;
}

GroundTruthTable diversity_table(const SynthConfig& config) {
  GroundTruthTable table;
  for (const auto& r : config.regions) table.emplace(r.code, r.diversity_p);
  return table;
}

void write_diversity_sidecar(const std::filesystem::path& path,
                             const SynthConfig& config) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "region,diversity_p\n";
  for (const auto& r : config.regions) {
    out << r.code << ',' << format_double(r.diversity_p) << '\n';
  }
}

}  // namespace superdiv
