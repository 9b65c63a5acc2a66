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

#include "superdiv/lexicon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <vector>

#include "superdiv/error.hpp"
#include "superdiv/random.hpp"
#include "superdiv/text.hpp"

namespace superdiv {

namespace {

bool valence_in_range(double v) {
  return v >= kMinValence && v <= kMaxValence;
}

void validate(const LexiconEntry& e) {
  if (e.term.empty()) throw DataError("lexicon term is empty");
  if (has_whitespace(e.term)) {
    throw DataError("lexicon term contains whitespace: '" + e.term + "'");
  }
  if (!valence_in_range(e.valence)) {
    throw DataError("valence out of range [0,10] for '" + e.term +
                    "': " + format_double(e.valence));
  }
}

// Shared row handling for the two CSV formats. `value_columns` is the number
// of numeric columns after the term.
ValenceLexicon load_csv_lexicon(const std::filesystem::path& path,
                                LexiconFormat format, LexiconSource source) {
  const auto lines = read_lines(path);
  const std::string where = path.string();
  const bool swn = format == LexiconFormat::kSwnCsv;
  const std::size_t required = swn ? 3 : 2;

  ValenceLexicon lexicon;
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line, ',');
    if (!header_seen) {
      header_seen = true;
      const auto first = to_lower(fields.front());
      if (first != "term") {
        throw ParseError(where, lineno,
                         swn ? "expected header term,pos_score,neg_score[,pos]"
                             : "expected header term,valence[,pos]");
      }
      continue;
    }
    if (fields.size() < required || fields.size() > required + 1) {
      throw ParseError(where, lineno,
                       "expected " + std::to_string(required) + " or " +
                           std::to_string(required + 1) + " fields, got " +
                           std::to_string(fields.size()));
    }

    LexiconEntry entry;
    entry.term = to_lower(fields[0]);
    entry.source = source;
    if (entry.term.empty() || has_whitespace(entry.term)) {
      throw ParseError(where, lineno, "invalid term '" + entry.term + "'");
    }

    if (swn) {
      const auto p = parse_double(fields[1]);
      const auto n = parse_double(fields[2]);
      if (!p || !n) throw ParseError(where, lineno, "non-numeric score");
      if (*p < 0.0 || *p > 1.0 || *n < 0.0 || *n > 1.0) {
        throw ParseError(where, lineno, "score outside [0,1]");
      }
      entry.valence = rescale_swn(*p, *n);
    } else {
      const auto v = parse_double(fields[1]);
      if (!v) throw ParseError(where, lineno, "non-numeric valence");
      if (!valence_in_range(*v)) {
        throw ParseError(where, lineno,
                         "valence out of range [0,10]: " + std::string(fields[1]));
      }
      entry.valence = *v;
    }
    if (fields.size() == required + 1 && !fields[required].empty()) {
      entry.pos = parse_part_of_speech(fields[required]);
    }
    if (lexicon.contains(entry.term)) {
      throw ParseError(where, lineno, "duplicate term '" + entry.term + "'");
    }
    lexicon.insert(std::move(entry));
  }
  if (!header_seen) throw ParseError(where, 1, "missing header");
  return lexicon;
}

ValenceLexicon load_wordlist(const std::filesystem::path& path,
                             LexiconSource source) {
  const auto lines = read_lines(path);
  const std::string where = path.string();
  ValenceLexicon lexicon;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    std::string term = to_lower(line);
    if (has_whitespace(term)) {
      throw ParseError(where, i + 1, "invalid term '" + term + "'");
    }
    if (lexicon.contains(term)) {
      throw ParseError(where, i + 1, "duplicate term '" + term + "'");
    }
    lexicon.insert(LexiconEntry{std::move(term), 0.0, std::nullopt, source});
  }
  return lexicon;
}

}  // namespace

PartOfSpeech parse_part_of_speech(std::string_view tag) {
  const auto t = to_lower(trim(tag));
  if (t == "noun" || t == "n" || t == "nn") return PartOfSpeech::kNoun;
  if (t == "verb" || t == "v" || t == "vb") return PartOfSpeech::kVerb;
  if (t == "adjective" || t == "adj" || t == "a" || t == "jj") {
    return PartOfSpeech::kAdjective;
  }
  return PartOfSpeech::kOther;
}

std::string_view to_string(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::kNoun: return "noun";
    case PartOfSpeech::kVerb: return "verb";
    case PartOfSpeech::kAdjective: return "adjective";
    case PartOfSpeech::kOther: return "other";
  }
  return "other";
}

std::string_view to_string(LexiconSource source) {
  switch (source) {
    case LexiconSource::kStandard: return "standard";
    case LexiconSource::kAuxiliary: return "auxiliary";
    case LexiconSource::kBadwords: return "badwords";
  }
  return "standard";
}

void ValenceLexicon::insert(LexiconEntry entry) {
  validate(entry);
  if (entries_.contains(entry.term)) {
    throw DataError("duplicate lexicon term '" + entry.term + "'");
  }
  auto key = entry.term;
  entries_.emplace(std::move(key), std::move(entry));
}

void ValenceLexicon::insert_or_assign(LexiconEntry entry) {
  validate(entry);
  auto key = entry.term;
  entries_.insert_or_assign(std::move(key), std::move(entry));
}

bool ValenceLexicon::erase(std::string_view term) {
  const auto it = entries_.find(term);
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

const LexiconEntry* ValenceLexicon::find(std::string_view term) const {
  const auto it = entries_.find(term);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<double> ValenceLexicon::valence(std::string_view term) const {
  const auto* e = find(term);
  if (e == nullptr) return std::nullopt;
  return e->valence;
}

ValenceMap to_valence_map(const ValenceLexicon& lexicon) {
  ValenceMap out;
  for (const auto& [term, e] : lexicon) out.emplace_hint(out.end(), term, e.valence);
  return out;
}

std::optional<LexiconFormat> parse_lexicon_format(std::string_view name) {
  const auto n = to_lower(trim(name));
  if (n == "simple-csv" || n == "csv") return LexiconFormat::kSimpleCsv;
  if (n == "swn-csv" || n == "swn") return LexiconFormat::kSwnCsv;
  if (n == "wordlist") return LexiconFormat::kWordlist;
  return std::nullopt;
}

ValenceLexicon load_lexicon(const std::filesystem::path& path,
                            LexiconFormat format,
                            std::optional<LexiconSource> source) {
  switch (format) {
    case LexiconFormat::kSimpleCsv:
      return load_csv_lexicon(path, format,
                              source.value_or(LexiconSource::kStandard));
    case LexiconFormat::kSwnCsv:
      return load_csv_lexicon(path, format,
                              source.value_or(LexiconSource::kAuxiliary));
    case LexiconFormat::kWordlist:
      return load_wordlist(path, source.value_or(LexiconSource::kBadwords));
  }
  throw DataError("unknown lexicon format");
}

void save_lexicon(const std::filesystem::path& path,
                  const ValenceLexicon& lexicon) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "term,valence,pos\n";
  for (const auto& [term, e] : lexicon) {
    out << term << ',' << format_double(e.valence) << ',';
    if (e.pos) out << to_string(*e.pos);
    out << '\n';
  }
}

double rescale_swn(double pos_score, double neg_score) {
  if (!(pos_score >= 0.0 && pos_score <= 1.0) ||
      !(neg_score >= 0.0 && neg_score <= 1.0)) {
    throw DataError("SentiWordNet scores must lie in [0,1]");
  }
  return (pos_score - neg_score + 1.0) * 5.0;
}

ValenceClass classify_valence(double valence, ClassBounds bounds) {
  if (valence < bounds.low) return ValenceClass::kNegative;
  if (valence > bounds.high) return ValenceClass::kPositive;
  return ValenceClass::kNeutral;
}

ValenceLexicon balance_lexicon(const ValenceLexicon& lexicon,
                               ClassBounds bounds) {
  if (!(bounds.low >= kMinValence && bounds.low < bounds.high &&
        bounds.high <= kMaxValence)) {
    throw DataError("class bounds must satisfy 0 <= low < high <= 10");
  }
  std::array<std::vector<const LexiconEntry*>, 3> classes;
  for (const auto& [term, e] : lexicon) {
    classes[static_cast<std::size_t>(classify_valence(e.valence, bounds))]
        .push_back(&e);
  }
  static constexpr std::array<const char*, 3> kNames = {"negative", "neutral",
                                                        "positive"};
  std::size_t n = lexicon.size();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) {
      throw DataError(std::string("cannot balance lexicon: ") + kNames[c] +
                      " class is empty");
    }
    n = std::min(n, classes[c].size());
  }

  ValenceLexicon out;
  for (auto& members : classes) {
    std::sort(members.begin(), members.end(),
              [](const LexiconEntry* a, const LexiconEntry* b) {
                const double pa = std::abs(a->valence - kNeutralValence);
                const double pb = std::abs(b->valence - kNeutralValence);
                if (pa != pb) return pa > pb;
                return a->term < b->term;
              });
    for (std::size_t i = 0; i < n; ++i) out.insert(*members[i]);
  }
  return out;
}

LexiconSplit split_lexicon(const ValenceLexicon& lexicon, double fraction,
                           std::uint64_t seed) {
  if (lexicon.size() < 2) {
    throw DataError("cannot split a lexicon with fewer than 2 entries");
  }
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw DataError("split fraction must lie in (0,1)");
  }
  std::vector<const LexiconEntry*> order;
  order.reserve(lexicon.size());
  for (const auto& [term, e] : lexicon) order.push_back(&e);

  Rng rng(mix_seed(seed));
  shuffle(std::span(order), rng);

  const auto n_train = static_cast<std::size_t>(
      std::floor(static_cast<double>(lexicon.size()) * fraction));
  LexiconSplit split;
  split.seed = seed;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_train ? split.train : split.test).insert(*order[i]);
  }
  return split;
}

}  // namespace superdiv
