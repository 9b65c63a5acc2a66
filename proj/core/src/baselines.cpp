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

#include "superdiv/baselines.hpp"

#include <map>
#include <ostream>
#include <unordered_set>
#include <vector>

#include "superdiv/error.hpp"
#include "superdiv/stats.hpp"
#include "superdiv/text.hpp"

namespace superdiv {

double ttr(const Corpus& corpus) {
  std::unordered_set<std::string_view> types;
  std::size_t tokens = 0;
  for (const auto& t : corpus.tweets) {
    for (const auto& l : t.lemmas) {
      types.insert(l.lemma);
      ++tokens;
    }
  }
  if (tokens == 0) throw DataError("ttr: corpus has no lemma tokens");
  return static_cast<double>(types.size()) / static_cast<double>(tokens);
}

double language_entropy(std::span<const Tweet> tweets) {
  if (tweets.empty()) throw DataError("language_entropy: no tweets");
  std::map<std::string_view, std::size_t> freq;
  for (const auto& t : tweets) ++freq[t.language];
  std::vector<std::size_t> counts;
  counts.reserve(freq.size());
  for (const auto& [lang, c] : freq) counts.push_back(c);
  return shannon_entropy(counts);
}

BaselineReport baseline_report(std::string region,
                               std::span<const Tweet> region_tweets,
                               const Corpus& local_corpus,
                               std::optional<std::uint64_t> population) {
  if (population && *population == 0) {
    throw DataError("population of region '" + region + "' is zero");
  }
  BaselineReport r;
  r.region = std::move(region);
  r.tweet_count = local_corpus.size();
  if (population) {
    r.tweets_per_capita = static_cast<double>(r.tweet_count) /
                          static_cast<double>(*population);
  }
  std::unordered_set<std::string_view> languages;
  for (const auto& t : region_tweets) languages.insert(t.language);
  r.language_count = languages.size();
  r.language_entropy = language_entropy(region_tweets);
  r.ttr = ttr(local_corpus);
  return r;
}

void write_baseline_header(std::ostream& out) {
  out << "region,tweet_count,tweets_per_capita,language_count,"
         "language_entropy,ttr\n";
}

void write_baseline_row(std::ostream& out, const BaselineReport& report) {
  out << report.region << ',' << report.tweet_count << ',';
  if (report.tweets_per_capita) out << format_double(*report.tweets_per_capita);
  out << ',' << report.language_count << ','
      << format_double(report.language_entropy) << ','
      << format_double(report.ttr) << '\n';
}

}  // namespace superdiv
