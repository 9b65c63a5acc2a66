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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace superdiv {

struct Lemma {
  std::string lemma;
  std::string pos;

  friend bool operator==(const Lemma&, const Lemma&) = default;
};

enum class NutsLevel { kNuts1 = 0, kNuts2 = 1, kNuts3 = 2 };

std::optional<NutsLevel> parse_nuts_level(std::string_view name);
std::string_view to_string(NutsLevel level);

struct Tweet {
  std::string id;
  std::vector<Lemma> lemmas;
  std::string language;
  std::string location_label;
  std::array<std::optional<std::string>, 3> nuts;
  bool negated = false;

  const std::optional<std::string>& region(NutsLevel level) const {
    return nuts[static_cast<std::size_t>(level)];
  }

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

struct Corpus {
  std::vector<Tweet> tweets;
  // Empty when the corpus was not language-filtered.
  std::string language_filter;

  std::size_t size() const noexcept { return tweets.size(); }
  bool empty() const noexcept { return tweets.empty(); }

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct IngestOptions {
  // Keep only tweets in this language; empty keeps every language.
  std::string language;
  // Raw tokens that mark a tweet as negated (exact, lowercased match).
  std::vector<std::string> negation_terms = {"not", "no", "never", "don't",
                                             "doesn't", "didn't", "isn't",
                                             "can't", "won't", "n't"};
  // POS tags to keep; empty keeps every tag.
  std::set<std::string, std::less<>> keep_pos = {"noun", "verb", "adj"};
};

struct IngestStats {
  std::size_t records = 0;
  std::size_t kept = 0;
  std::size_t dropped_language = 0;
  std::size_t dropped_empty = 0;
  std::size_t malformed = 0;
  // First few malformed-record diagnostics ("path:line: message").
  std::vector<std::string> diagnostics;
};

struct IngestResult {
  Corpus corpus;
  IngestStats stats;
};

// Reads a line-delimited JSON corpus. Each record has `id`, `lang`,
// `location` and either `lemmas` (array of [lemma, pos] pairs) or `text`,
// which goes through trivial_pipeline(). Optional `nuts1`..`nuts3` preset
// region codes and an optional boolean `negated`. Lemmas are lowercased; a
// tweet is negated iff `negated` is true or any raw token (before POS
// filtering) is in the negation list. Malformed records are
// skipped and counted. Throws DataError if the file cannot be opened.
IngestResult ingest_corpus(const std::filesystem::path& path,
                           const IngestOptions& options);
IngestResult ingest_corpus(std::istream& in, const IngestOptions& options,
                           std::string_view source = "<stream>");

// Parses a single corpus record (one JSONL line) without applying the
// language filter. Throws DataError describing the defect if malformed.
Tweet parse_tweet_record(std::string_view line, const IngestOptions& options);

// Degraded fallback for raw text: lowercases, splits on whitespace and
// punctuation (apostrophes stay inside words) and tags every token "noun".
std::vector<Lemma> trivial_pipeline(std::string_view text);

// Canonical JSONL form of a corpus; ingest_corpus() reads it back.
void write_corpus(std::ostream& out, const Corpus& corpus);
void write_corpus(const std::filesystem::path& path, const Corpus& corpus);

// Subset of tweets in `language`.
Corpus filter_language(const Corpus& corpus, std::string_view language);

struct RegionCodes {
  std::string nuts1;
  std::string nuts2;
  std::string nuts3;
};

// location label -> NUTS codes. Labels are matched case-insensitively.
class Gazetteer {
 public:
  // Throws DataError if nuts2 does not extend nuts1 or nuts3 does not
  // extend nuts2, or on a duplicate label.
  void add(std::string_view location, RegionCodes codes);
  const RegionCodes* find(std::string_view location) const;
  std::size_t size() const noexcept { return table_.size(); }
  bool empty() const noexcept { return table_.empty(); }

 private:
  std::map<std::string, RegionCodes, std::less<>> table_;
};

// CSV `location,nuts1,nuts2,nuts3`.
Gazetteer load_gazetteer(const std::filesystem::path& path);

struct RegionAssignment {
  Corpus corpus;
  std::size_t matched = 0;
  // matched / |tweets|, 0 for an empty corpus.
  double match_rate = 0.0;
};

// Sets all three codes on tweets whose location is in the gazetteer. Other
// tweets keep whatever codes they already carry.
RegionAssignment assign_regions(const Corpus& corpus, const Gazetteer& gaz);

using RegionPartition = std::map<std::string, Corpus, std::less<>>;

// Groups tweets by their code at `level`; uncoded tweets are excluded.
RegionPartition partition_by_region(const Corpus& corpus, NutsLevel level);

// Keeps the k largest regions; ties go to the lexicographically smaller
// code. Throws DataError if k < 1.
RegionPartition top_regions(const RegionPartition& partitions, std::size_t k);

// CSV `region,population`.
std::map<std::string, std::uint64_t, std::less<>> load_population(
    const std::filesystem::path& path);

}  // namespace superdiv
