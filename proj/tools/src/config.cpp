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

#include "superdiv/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "superdiv/error.hpp"
#include "superdiv/text.hpp"

namespace superdiv::cli {

namespace {

constexpr OptionSpec kOptions[] = {
    {"corpus", "input", "", "line-delimited JSON corpus"},
    {"language", "input", "en", "local language code"},
    {"negation_terms", "input", "not,no,never,don't,doesn't,didn't,isn't,can't,won't,n't",
     "comma-separated negation tokens"},
    {"keep_pos", "input", "noun,verb,adj", "comma-separated POS tags to keep"},
    {"region_source", "regions", "gazetteer", "gazetteer | records"},
    {"gazetteer", "regions", "", "CSV location,nuts1,nuts2,nuts3"},
    {"level", "regions", "nuts2", "nuts1 | nuts2 | nuts3"},
    {"top_k", "regions", "0", "keep the k regions with most tweets (0 = all)"},
    {"exclude_regions", "regions", "", "regions left out of ground-truth correlations"},
    {"population", "regions", "", "CSV region,population"},
    {"standard_lexicon", "lexicon", "", "standard valence lexicon"},
    {"standard_format", "lexicon", "simple-csv", "simple-csv | swn-csv | wordlist"},
    {"swn_lexicon", "lexicon", "", "auxiliary swn-csv lexicon"},
    {"badwords_lexicon", "lexicon", "", "auxiliary bad-words wordlist"},
    {"strict_pos", "lexicon", "false", "seed only nodes seen with the entry's POS"},
    {"range_threshold", "spreading", "3.0", "range gate R"},
    {"entropy_threshold", "spreading", "1.09", "entropy gate S"},
    {"bin_count", "spreading", "10", "valence bins"},
    {"min_tagged_neighbors", "spreading", "1", "tagged neighbours needed to infect"},
    {"iterations", "si", "10", "train/test splits per region"},
    {"base_seed", "si", "0", "split seed of iteration 0"},
    {"split_fraction", "si", "0.5", "training share of the standard lexicon"},
    {"null_seed", "si", "1", "null-model reshuffle seed"},
    {"ground_truth", "si", "", "CSV region,immigrants,population or region,value"},
    {"sweep_range", "sweep", "1:5:1", "range thresholds (lo:hi:step or list)"},
    {"sweep_entropy", "sweep", "0.5:2.3:0.2", "entropy thresholds (lo:hi:step or list)"},
    {"sweep_region", "sweep", "", "restrict the sweep to one region"},
    {"labeled_data", "classify", "", "labeled tweets (JSONL)"},
    {"classifier", "classify", "svm", "svm | majority"},
    {"repeats", "classify", "10", "cross-validation repeats"},
    {"train_fraction", "classify", "0.8", "training share per repeat"},
    {"cv_seed", "classify", "0", "cross-validation seed"},
    {"svm_lambda", "classify", "0.001", "L2 penalty"},
    {"svm_epochs", "classify", "400", "gradient steps"},
    {"synth_regions", "synth", "", "code:n_tweets:diversity_p,..."},
    {"synth_vocabulary_size", "synth", "600", "terms when no standard lexicon is given"},
    {"synth_fillers", "synth", "200", "non-lexicon filler lemmas"},
    {"synth_sigma", "synth", "1.0", "valence shift noise scale"},
    {"synth_shifted_word_rate", "synth", "1.0", "share of words a shifted author perturbs"},
    {"synth_min_lemmas", "synth", "4", "fewest lemmas per tweet"},
    {"synth_max_lemmas", "synth", "8", "most lemmas per tweet"},
    {"synth_window", "synth", "1.0", "co-occurrence valence window"},
    {"synth_mixed_rate", "synth", "0.1", "share of valence-blind tweets"},
    {"synth_negation_rate", "synth", "0.05", "share of negated tweets"},
    {"synth_languages", "synth", "en:1", "code:weight,..."},
    {"synth_seed", "synth", "0", "generator seed"},
    {"output_dir", "run", "out", "output directory"},
    {"jobs", "run", "1", "worker threads"},
};

const OptionSpec* find_spec(std::string_view key) {
  for (const auto& s : kOptions) {
    if (s.key == key) return &s;
  }
  return nullptr;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  for (auto f : split_fields(text, ',')) {
    if (!f.empty()) out.emplace_back(f);
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const Settings& s) : s_(s) {}

  const std::string& text(std::string_view key) const {
    const auto it = s_.find(key);
    if (it == s_.end()) throw ConfigError("missing setting " + std::string(key));
    return it->second;
  }

  double real(std::string_view key) const {
    const auto v = parse_double(trim(text(key)));
    if (!v || !std::isfinite(*v)) fail(key, "expected a number");
    return *v;
  }

  std::uint64_t unsigned_int(std::string_view key) const {
    const auto v = parse_int(trim(text(key)));
    if (!v || *v < 0) fail(key, "expected a non-negative integer");
    return static_cast<std::uint64_t>(*v);
  }

  bool boolean(std::string_view key) const {
    const auto v = to_lower(trim(text(key)));
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail(key, "expected true or false");
  }

  std::filesystem::path path(std::string_view key) const {
    return std::filesystem::path(std::string(trim(text(key))));
  }

  [[noreturn]] void fail(std::string_view key, std::string_view why) const {
    throw ConfigError(std::string(key) + "=" + text(key) + ": " + std::string(why));
  }

 private:
  const Settings& s_;
};

std::vector<SynthRegion> parse_synth_regions(const Reader& r) {
  std::vector<SynthRegion> out;
  for (const auto& item : split_list(r.text("synth_regions"))) {
    const auto parts = split_fields(item, ':');
    if (parts.size() != 3) r.fail("synth_regions", "expected code:n_tweets:diversity_p");
    const auto n = parse_int(parts[1]);
    const auto p = parse_double(parts[2]);
    if (!n || *n < 1 || !p) r.fail("synth_regions", "bad entry " + item);
    out.push_back(SynthRegion{std::string(parts[0]), static_cast<std::size_t>(*n), *p});
  }
  return out;
}

std::vector<SynthLanguage> parse_synth_languages(const Reader& r) {
  std::vector<SynthLanguage> out;
  for (const auto& item : split_list(r.text("synth_languages"))) {
    const auto parts = split_fields(item, ':');
    const auto w = parts.size() == 2 ? parse_double(parts[1]) : std::nullopt;
    if (!w || !(*w > 0.0) || parts[0].empty()) {
      r.fail("synth_languages", "expected code:weight with positive weight");
    }
    out.push_back(SynthLanguage{std::string(parts[0]), *w});
  }
  if (out.empty()) r.fail("synth_languages", "no languages");
  return out;
}

}  // namespace

std::span<const OptionSpec> option_specs() { return kOptions; }

Settings read_ini(const std::filesystem::path& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("cannot read config " + path.string() + ": " + e.message());
  }
  Settings out;
  auto put = [&](const std::string& section, const std::string& key,
                 const std::string& value) {
    const auto* spec = find_spec(key);
    if (spec == nullptr) throw ConfigError(path.string() + ": unknown key " + key);
    if (!section.empty() && spec->section != section) {
      throw ConfigError(path.string() + ": key " + key + " belongs in section [" +
                        std::string(spec->section) + "]");
    }
    if (!out.emplace(key, value).second) {
      throw ConfigError(path.string() + ": duplicate key " + key);
    }
  };
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      put("", name, node.data());
    } else {
      for (const auto& [key, leaf] : node) put(name, key, leaf.data());
    }
  }
  return out;
}

Settings resolve_settings(const std::optional<std::filesystem::path>& ini,
                          const Settings& overrides) {
  Settings out;
  for (const auto& s : kOptions) out.emplace(std::string(s.key), std::string(s.default_value));
  if (ini) {
    for (const auto& [k, v] : read_ini(*ini)) out[k] = v;
  }
  for (const auto& [k, v] : overrides) {
    if (find_spec(k) == nullptr) throw ConfigError("unknown option --" + k);
    out[k] = v;
  }
  return out;
}

std::vector<double> parse_grid(std::string_view key, std::string_view text) {
  const auto bad = [&](std::string_view why) {
    throw ConfigError(std::string(key) + "=" + std::string(text) + ": " +
                      std::string(why));
  };
  std::vector<double> out;
  const auto trimmed = trim(text);
  if (trimmed.find(':') != std::string_view::npos) {
    const auto parts = split_fields(trimmed, ':');
    if (parts.size() != 3) bad("expected lo:hi:step");
    const auto lo = parse_double(parts[0]);
    const auto hi = parse_double(parts[1]);
    const auto step = parse_double(parts[2]);
    if (!lo || !hi || !step || !(*step > 0.0) || *hi < *lo) bad("expected lo <= hi, step > 0");
    const auto count = static_cast<std::size_t>(std::floor((*hi - *lo) / *step + 1e-9)) + 1;
    if (count > 10000) bad("grid too large");
    for (std::size_t i = 0; i < count; ++i) {
      // Snap to 1e-9 so 0.5 + 3 * 0.2 prints as 1.1, not 1.1000000000000001.
      out.push_back(std::round((*lo + static_cast<double>(i) * *step) * 1e9) / 1e9);
    }
  } else {
    for (const auto& item : split_list(trimmed)) {
      const auto v = parse_double(item);
      if (!v) bad("bad value " + item);
      out.push_back(*v);
    }
  }
  if (out.empty()) bad("empty grid");
  return out;
}

RunConfig parse_run_config(const Settings& settings) {
  const Reader r(settings);
  RunConfig c;

  c.corpus = r.path("corpus");
  c.language = to_lower(trim(r.text("language")));
  c.ingest.language.clear();
  c.ingest.negation_terms.clear();
  for (const auto& t : split_list(r.text("negation_terms"))) c.ingest.negation_terms.push_back(to_lower(t));
  c.ingest.keep_pos.clear();
  for (const auto& t : split_list(r.text("keep_pos"))) c.ingest.keep_pos.insert(to_lower(t));

  const auto source = to_lower(trim(r.text("region_source")));
  if (source == "gazetteer") {
    c.region_source = RegionSource::kGazetteer;
  } else if (source == "records") {
    c.region_source = RegionSource::kRecords;
  } else {
    r.fail("region_source", "expected gazetteer or records");
  }
  c.gazetteer = r.path("gazetteer");
  const auto level = parse_nuts_level(to_lower(trim(r.text("level"))));
  if (!level) r.fail("level", "expected nuts1, nuts2 or nuts3");
  c.level = *level;
  c.top_k = static_cast<std::size_t>(r.unsigned_int("top_k"));
  c.exclude_regions = split_list(r.text("exclude_regions"));
  c.population = r.path("population");

  c.standard_lexicon = r.path("standard_lexicon");
  const auto format = parse_lexicon_format(to_lower(trim(r.text("standard_format"))));
  if (!format) r.fail("standard_format", "expected simple-csv, swn-csv or wordlist");
  c.standard_format = *format;
  c.swn_lexicon = r.path("swn_lexicon");
  c.badwords_lexicon = r.path("badwords_lexicon");
  c.strict_pos = r.boolean("strict_pos");

  c.spreading.range_threshold = r.real("range_threshold");
  c.spreading.entropy_threshold = r.real("entropy_threshold");
  const auto bins = r.unsigned_int("bin_count");
  if (bins > 1000) r.fail("bin_count", "too many bins");
  c.spreading.bin_count = static_cast<int>(bins);
  c.spreading.min_tagged_neighbors = static_cast<std::size_t>(r.unsigned_int("min_tagged_neighbors"));
  c.spreading.validate();

  c.iterations = static_cast<std::size_t>(r.unsigned_int("iterations"));
  if (c.iterations < 1) r.fail("iterations", "must be at least 1");
  c.base_seed = r.unsigned_int("base_seed");
  c.split_fraction = r.real("split_fraction");
  if (!(c.split_fraction > 0.0 && c.split_fraction < 1.0)) r.fail("split_fraction", "must lie in (0, 1)");
  c.null_seed = r.unsigned_int("null_seed");
  c.ground_truth = r.path("ground_truth");

  c.sweep.range_values = parse_grid("sweep_range", r.text("sweep_range"));
  c.sweep.entropy_values = parse_grid("sweep_entropy", r.text("sweep_entropy"));
  for (const double v : c.sweep.range_values) {
    if (!(v > 0.0)) r.fail("sweep_range", "thresholds must be positive");
  }
  for (const double v : c.sweep.entropy_values) {
    if (!(v > 0.0)) r.fail("sweep_entropy", "thresholds must be positive");
  }
  c.sweep_region = std::string(trim(r.text("sweep_region")));

  c.labeled_data = r.path("labeled_data");
  c.classifier = to_lower(trim(r.text("classifier")));
  if (c.classifier != "svm" && c.classifier != "majority") r.fail("classifier", "expected svm or majority");
  c.repeats = static_cast<std::size_t>(r.unsigned_int("repeats"));
  if (c.repeats < 1) r.fail("repeats", "must be at least 1");
  c.train_fraction = r.real("train_fraction");
  if (!(c.train_fraction > 0.0 && c.train_fraction < 1.0)) r.fail("train_fraction", "must lie in (0, 1)");
  c.cv_seed = r.unsigned_int("cv_seed");
  c.svm_lambda = r.real("svm_lambda");
  if (!(c.svm_lambda > 0.0)) r.fail("svm_lambda", "must be positive");
  c.svm_epochs = static_cast<std::size_t>(r.unsigned_int("svm_epochs"));
  if (c.svm_epochs < 1) r.fail("svm_epochs", "must be at least 1");

  c.synth.regions = parse_synth_regions(r);
  c.synth_vocabulary_size = static_cast<std::size_t>(r.unsigned_int("synth_vocabulary_size"));
  c.synth.filler_count = static_cast<std::size_t>(r.unsigned_int("synth_fillers"));
  c.synth.valence_shift_sigma = r.real("synth_sigma");
  c.synth.shifted_word_rate = r.real("synth_shifted_word_rate");
  c.synth.min_lemmas = static_cast<std::size_t>(r.unsigned_int("synth_min_lemmas"));
  c.synth.max_lemmas = static_cast<std::size_t>(r.unsigned_int("synth_max_lemmas"));
  c.synth.cooccurrence_window = r.real("synth_window");
  c.synth.mixed_tweet_rate = r.real("synth_mixed_rate");
  c.synth.negation_rate = r.real("synth_negation_rate");
  c.synth.languages = parse_synth_languages(r);
  c.synth.seed = r.unsigned_int("synth_seed");

  c.output_dir = r.path("output_dir");
  if (c.output_dir.empty()) r.fail("output_dir", "must not be empty");
  const auto jobs = r.unsigned_int("jobs");
  if (jobs < 1 || jobs > 1024) r.fail("jobs", "must lie in [1, 1024]");
  c.jobs = static_cast<unsigned>(jobs);
  c.synth.jobs = c.jobs;
  return c;
}

std::string canonical_settings(const Settings& settings) {
  std::ostringstream out;
  for (const auto& [k, v] : settings) out << k << '=' << v << '\n';
  return out.str();
}

}  // namespace superdiv::cli
