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

#include "superdiv/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "superdiv/error.hpp"
#include "superdiv/text.hpp"

namespace superdiv {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxDiagnostics = 20;

struct RecordError {
  std::string message;
};

std::string string_field(const json& rec, const char* key, bool required) {
  const auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) {
    if (required) throw RecordError{std::string("missing field '") + key + "'"};
    return {};
  }
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<std::int64_t>());
  throw RecordError{std::string("field '") + key + "' must be a string"};
}

std::optional<std::string> optional_code(const json& rec, const char* key) {
  const auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw RecordError{std::string("field '") + key + "' must be a string"};
  }
  auto code = std::string(trim(it->get<std::string>()));
  if (code.empty()) return std::nullopt;
  return code;
}

std::vector<Lemma> parse_lemmas(const json& arr) {
  if (!arr.is_array()) throw RecordError{"field 'lemmas' must be an array"};
  std::vector<Lemma> out;
  out.reserve(arr.size());
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() ||
        !item[1].is_string()) {
      throw RecordError{"each lemma must be a [lemma, pos] pair of strings"};
    }
    out.push_back(Lemma{to_lower(trim(item[0].get<std::string>())),
                        to_lower(trim(item[1].get<std::string>()))});
  }
  return out;
}

Tweet parse_record(const json& rec, const IngestOptions& options,
                   const std::set<std::string, std::less<>>& negations) {
  if (!rec.is_object()) throw RecordError{"record is not a JSON object"};
  Tweet t;
  t.id = string_field(rec, "id", true);
  t.language = to_lower(trim(string_field(rec, "lang", true)));
  t.location_label = std::string(trim(string_field(rec, "location", false)));
  t.nuts[0] = optional_code(rec, "nuts1");
  t.nuts[1] = optional_code(rec, "nuts2");
  t.nuts[2] = optional_code(rec, "nuts3");

  std::vector<Lemma> raw;
  if (const auto it = rec.find("lemmas"); it != rec.end()) {
    raw = parse_lemmas(*it);
  } else if (const auto txt = rec.find("text");
             txt != rec.end() && txt->is_string()) {
    raw = trivial_pipeline(txt->get<std::string>());
  } else {
    throw RecordError{"record needs 'lemmas' or 'text'"};
  }

  if (const auto it = rec.find("negated"); it != rec.end() && !it->is_null()) {
    if (!it->is_boolean()) throw RecordError{"field 'negated' must be boolean"};
    t.negated = it->get<bool>();
  }
  for (const auto& l : raw) {
    if (negations.contains(l.lemma)) {
      t.negated = true;
      break;
    }
  }

  t.lemmas.reserve(raw.size());
  for (auto& l : raw) {
    if (l.lemma.empty()) continue;
    if (!options.keep_pos.empty() && !options.keep_pos.contains(l.pos)) {
      continue;
    }
    t.lemmas.push_back(std::move(l));
  }
  return t;
}

bool is_word_char(unsigned char c) {
  return std::isalnum(c) || c == '\'' || c >= 0x80;
}

}  // namespace

std::optional<NutsLevel> parse_nuts_level(std::string_view name) {
  const auto n = to_lower(trim(name));
  if (n == "nuts1" || n == "1") return NutsLevel::kNuts1;
  if (n == "nuts2" || n == "2") return NutsLevel::kNuts2;
  if (n == "nuts3" || n == "3") return NutsLevel::kNuts3;
  return std::nullopt;
}

std::string_view to_string(NutsLevel level) {
  switch (level) {
    case NutsLevel::kNuts1: return "nuts1";
    case NutsLevel::kNuts2: return "nuts2";
    case NutsLevel::kNuts3: return "nuts3";
  }
  return "nuts1";
}

std::vector<Lemma> trivial_pipeline(std::string_view text) {
  std::vector<Lemma> out;
  std::string current;
  auto flush = [&] {
    // Strip apostrophes hanging off either end ('quoted' words).
    std::string_view w = current;
    while (!w.empty() && w.front() == '\'') w.remove_prefix(1);
    while (!w.empty() && w.back() == '\'') w.remove_suffix(1);
    if (!w.empty()) out.push_back(Lemma{to_lower(w), "noun"});
    current.clear();
  };
  for (unsigned char c : text) {
    if (is_word_char(c)) {
      current.push_back(static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

Tweet parse_tweet_record(std::string_view line, const IngestOptions& options) {
  std::set<std::string, std::less<>> negations;
  for (const auto& n : options.negation_terms) negations.insert(to_lower(n));
  try {
    return parse_record(json::parse(line), options, negations);
  } catch (const json::exception& e) {
    throw DataError(e.what());
  } catch (const RecordError& e) {
    throw DataError(e.message);
  }
}

IngestResult ingest_corpus(std::istream& in, const IngestOptions& options,
                           std::string_view source) {
  std::set<std::string, std::less<>> negations;
  for (const auto& n : options.negation_terms) negations.insert(to_lower(n));
  const std::string language = to_lower(trim(options.language));

  IngestResult result;
  result.corpus.language_filter = language;
  auto& stats = result.stats;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    ++stats.records;
    Tweet tweet;
    try {
      const auto rec = json::parse(line);
      tweet = parse_record(rec, options, negations);
    } catch (const json::exception& e) {
      ++stats.malformed;
      if (stats.diagnostics.size() < kMaxDiagnostics) {
        stats.diagnostics.push_back(std::string(source) + ":" +
                                    std::to_string(lineno) + ": " + e.what());
      }
      continue;
    } catch (const RecordError& e) {
      ++stats.malformed;
      if (stats.diagnostics.size() < kMaxDiagnostics) {
        stats.diagnostics.push_back(std::string(source) + ":" +
                                    std::to_string(lineno) + ": " + e.message);
      }
      continue;
    }
    if (!language.empty() && tweet.language != language) {
      ++stats.dropped_language;
      continue;
    }
    if (tweet.lemmas.empty()) {
      ++stats.dropped_empty;
      continue;
    }
    ++stats.kept;
    result.corpus.tweets.push_back(std::move(tweet));
  }
  return result;
}

IngestResult ingest_corpus(const std::filesystem::path& path,
                           const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus " + path.string());
  return ingest_corpus(in, options, path.string());
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& t : corpus.tweets) {
    json rec = json::object();
    rec["id"] = t.id;
    rec["lang"] = t.language;
    rec["location"] = t.location_label;
    json lemmas = json::array();
    for (const auto& l : t.lemmas) lemmas.push_back(json::array({l.lemma, l.pos}));
    rec["lemmas"] = std::move(lemmas);
    static constexpr const char* kKeys[] = {"nuts1", "nuts2", "nuts3"};
    for (std::size_t i = 0; i < 3; ++i) {
      if (t.nuts[i]) rec[kKeys[i]] = *t.nuts[i];
    }
    rec["negated"] = t.negated;
    // nlohmann::json objects are key-sorted, so the output is canonical.
    out << rec.dump() << '\n';
  }
}

void write_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_corpus(out, corpus);
}

Corpus filter_language(const Corpus& corpus, std::string_view language) {
  Corpus out;
  out.language_filter = to_lower(language);
  for (const auto& t : corpus.tweets) {
    if (t.language == out.language_filter) out.tweets.push_back(t);
  }
  return out;
}

void Gazetteer::add(std::string_view location, RegionCodes codes) {
  auto key = to_lower(trim(location));
  if (key.empty()) throw DataError("gazetteer location is empty");
  if (codes.nuts1.empty() || !codes.nuts2.starts_with(codes.nuts1) ||
      !codes.nuts3.starts_with(codes.nuts2)) {
    throw DataError("gazetteer entry '" + key +
                    "' violates NUTS nesting: " + codes.nuts1 + "/" +
                    codes.nuts2 + "/" + codes.nuts3);
  }
  if (table_.contains(key)) {
    throw DataError("duplicate gazetteer location '" + key + "'");
  }
  table_.emplace(std::move(key), std::move(codes));
}

const RegionCodes* Gazetteer::find(std::string_view location) const {
  const auto it = table_.find(to_lower(trim(location)));
  return it == table_.end() ? nullptr : &it->second;
}

Gazetteer load_gazetteer(const std::filesystem::path& path) {
  const auto table = read_csv(path);
  const auto loc = table.column("location");
  const auto n1 = table.column("nuts1");
  const auto n2 = table.column("nuts2");
  const auto n3 = table.column("nuts3");
  if (!loc || !n1 || !n2 || !n3) {
    throw ParseError(table.source, 1,
                     "expected header location,nuts1,nuts2,nuts3");
  }
  Gazetteer gaz;
  for (const auto& row : table.rows) {
    if (row.fields.size() != table.header.size()) {
      throw ParseError(table.source, row.line, "wrong number of fields");
    }
    try {
      gaz.add(row.fields[*loc], RegionCodes{row.fields[*n1], row.fields[*n2],
                                            row.fields[*n3]});
    } catch (const DataError& e) {
      throw ParseError(table.source, row.line, e.what());
    }
  }
  return gaz;
}

RegionAssignment assign_regions(const Corpus& corpus, const Gazetteer& gaz) {
  RegionAssignment out;
  out.corpus = corpus;
  for (auto& t : out.corpus.tweets) {
    const auto* codes = gaz.find(t.location_label);
    if (codes == nullptr) continue;
    t.nuts = {codes->nuts1, codes->nuts2, codes->nuts3};
    ++out.matched;
  }
  if (!corpus.empty()) {
    out.match_rate = static_cast<double>(out.matched) /
                     static_cast<double>(corpus.size());
  }
  return out;
}

RegionPartition partition_by_region(const Corpus& corpus, NutsLevel level) {
  RegionPartition parts;
  for (const auto& t : corpus.tweets) {
    const auto& code = t.region(level);
    if (!code) continue;
    auto& part = parts[*code];
    part.language_filter = corpus.language_filter;
    part.tweets.push_back(t);
  }
  return parts;
}

RegionPartition top_regions(const RegionPartition& partitions, std::size_t k) {
  if (k < 1) throw DataError("top_regions: k must be at least 1");
  if (partitions.size() <= k) return partitions;
  std::vector<const RegionPartition::value_type*> order;
  order.reserve(partitions.size());
  for (const auto& kv : partitions) order.push_back(&kv);
  // The map is already code-ordered, so a stable sort keeps the tie rule.
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
    return a->second.size() > b->second.size();
  });
  RegionPartition out;
  for (std::size_t i = 0; i < k; ++i) out.insert(*order[i]);
  return out;
}

std::map<std::string, std::uint64_t, std::less<>> load_population(
    const std::filesystem::path& path) {
  const auto table = read_csv(path);
  const auto region = table.column("region");
  const auto pop = table.column("population");
  if (!region || !pop) {
    throw ParseError(table.source, 1, "expected header region,population");
  }
  std::map<std::string, std::uint64_t, std::less<>> out;
  for (const auto& row : table.rows) {
    if (row.fields.size() != table.header.size()) {
      throw ParseError(table.source, row.line, "wrong number of fields");
    }
    const auto v = parse_int(row.fields[*pop]);
    if (!v || *v < 0) {
      throw ParseError(table.source, row.line, "invalid population");
    }
    if (!out.emplace(row.fields[*region], static_cast<std::uint64_t>(*v))
             .second) {
      throw ParseError(table.source, row.line,
                       "duplicate region '" + row.fields[*region] + "'");
    }
  }
  return out;
}

}  // namespace superdiv
