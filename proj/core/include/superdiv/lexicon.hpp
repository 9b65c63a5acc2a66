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
#include <optional>
#include <string>
#include <string_view>

namespace superdiv {

inline constexpr double kMinValence = 0.0;
inline constexpr double kMaxValence = 10.0;
inline constexpr double kNeutralValence = 5.0;

enum class PartOfSpeech { kNoun, kVerb, kAdjective, kOther };

// Accepts full names and the usual one-letter / short tags
// (n, v, a, adj, ...). Unknown tags map to kOther.
PartOfSpeech parse_part_of_speech(std::string_view tag);
std::string_view to_string(PartOfSpeech pos);

enum class LexiconSource { kStandard, kAuxiliary, kBadwords };

std::string_view to_string(LexiconSource source);

struct LexiconEntry {
  std::string term;
  double valence = kNeutralValence;
  std::optional<PartOfSpeech> pos;
  LexiconSource source = LexiconSource::kStandard;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

// Term -> entry, ordered by term. Every stored entry satisfies the
// LexiconEntry invariants (non-empty, whitespace-free term; valence in
// [0, 10]); insert() enforces them.
class ValenceLexicon {
 public:
  using Map = std::map<std::string, LexiconEntry, std::less<>>;
  using const_iterator = Map::const_iterator;

  ValenceLexicon() = default;

  // Throws DataError on an invalid entry or a duplicate term.
  void insert(LexiconEntry entry);
  // Like insert(), but replaces an existing entry for the same term.
  void insert_or_assign(LexiconEntry entry);
  bool erase(std::string_view term);

  const LexiconEntry* find(std::string_view term) const;
  bool contains(std::string_view term) const { return find(term) != nullptr; }
  std::optional<double> valence(std::string_view term) const;

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const_iterator begin() const noexcept { return entries_.begin(); }
  const_iterator end() const noexcept { return entries_.end(); }

  friend bool operator==(const ValenceLexicon&, const ValenceLexicon&) =
      default;

 private:
  Map entries_;
};

// Plain term -> valence lookup, e.g. a community lexicon from spreading.
using ValenceMap = std::map<std::string, double, std::less<>>;

ValenceMap to_valence_map(const ValenceLexicon& lexicon);

enum class LexiconFormat {
  kSimpleCsv,  // term,valence[,pos]
  kSwnCsv,     // term,pos_score,neg_score[,pos]
  kWordlist,   // one term per line, '#' comments; valence 0.0
};

std::optional<LexiconFormat> parse_lexicon_format(std::string_view name);

// Loads a lexicon file. Terms are lowercased. The source tag defaults to
// kStandard for simple-csv, kAuxiliary for swn-csv and kBadwords for
// wordlist. Throws ParseError (with line number) on malformed rows,
// out-of-range valences and duplicate terms; DataError if unreadable.
ValenceLexicon load_lexicon(const std::filesystem::path& path,
                            LexiconFormat format,
                            std::optional<LexiconSource> source = {});

// Writes `term,valence[,pos]` rows; load_lexicon(kSimpleCsv) reads it back.
void save_lexicon(const std::filesystem::path& path,
                  const ValenceLexicon& lexicon);

// Maps a SentiWordNet positive/negative score pair onto [0, 10]:
// (pos - neg + 1) * 5. Throws DataError if either score is outside [0, 1].
double rescale_swn(double pos_score, double neg_score);

struct ClassBounds {
  double low = 4.0;
  double high = 6.0;
};

enum class ValenceClass { kNegative, kNeutral, kPositive };

// negative: v < low; neutral: low <= v <= high; positive: v > high.
ValenceClass classify_valence(double valence, ClassBounds bounds);

// Equalises the three valence classes to the size n of the smallest one,
// keeping from each class the n entries farthest from the scale midpoint
// (ties by term). Throws DataError if a class is empty or the bounds are
// not 0 <= low < high <= 10.
ValenceLexicon balance_lexicon(const ValenceLexicon& lexicon,
                               ClassBounds bounds = {});

struct LexiconSplit {
  ValenceLexicon train;
  ValenceLexicon test;
  std::uint64_t seed = 0;
};

// Uniform random partition with |train| = floor(|lexicon| * fraction).
// Deterministic in `seed`. Throws DataError for fewer than two entries or a
// fraction outside (0, 1).
LexiconSplit split_lexicon(const ValenceLexicon& lexicon, double fraction,
                           std::uint64_t seed);

}  // namespace superdiv
