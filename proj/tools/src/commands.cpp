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

#include <algorithm>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "superdiv/baselines.hpp"
#include "superdiv/classify.hpp"
#include "superdiv/cli/app.hpp"
#include "superdiv/corpus.hpp"
#include "superdiv/graph.hpp"
#include "superdiv/lexicon.hpp"
#include "superdiv/random.hpp"
#include "superdiv/si.hpp"
#include "superdiv/spreading.hpp"
#include "superdiv/synth.hpp"
#include "superdiv/text.hpp"
#include "superdiv/version.hpp"

namespace superdiv::cli {

namespace {

using nlohmann::ordered_json;

// Collects output files and writes them, plus the manifest, in one go.
class OutputSet {
 public:
  using Writer = std::function<void(const std::filesystem::path&)>;

  void add_text(std::string name, std::string content) {
    add(std::move(name), [content = std::move(content)](const std::filesystem::path& p) {
      std::ofstream f(p, std::ios::binary);
      f << content;
      if (!f) throw DataError("cannot write " + p.string());
    });
  }

  void add(std::string name, Writer writer) {
    files_.emplace_back(std::move(name), std::move(writer));
  }

  // Returns name -> FNV-1a digest of the written bytes.
  std::map<std::string, std::string> commit(const std::filesystem::path& dir) const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
    std::map<std::string, std::string> digests;
    for (const auto& [name, writer] : files_) {
      const auto path = dir / name;
      writer(path);
      digests[name] = file_digest(path);
    }
    return digests;
  }

  static std::string file_digest(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot read back " + path.string());
    const std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return hex64(fnv1a64(bytes));
  }

 private:
  std::vector<std::pair<std::string, Writer>> files_;
};

struct Context {
  std::string command;
  const Settings& settings;
  RunConfig config;
  std::ostream& out;
  std::ostream& err;
  // Input key -> path, recorded in the manifest with a content digest.
  std::map<std::string, std::filesystem::path> inputs;
};

void require_file(Context& ctx, std::string_view key, const std::filesystem::path& path) {
  if (path.empty()) throw ConfigError(std::string(key) + " is required by " + ctx.command);
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw ConfigError(std::string(key) + ": no such file " + path.string());
  }
  ctx.inputs[std::string(key)] = path;
}

void optional_file(Context& ctx, std::string_view key, const std::filesystem::path& path) {
  if (!path.empty()) require_file(ctx, key, path);
}

void require_regions(Context& ctx) {
  if (ctx.config.region_source == RegionSource::kGazetteer) {
    require_file(ctx, "gazetteer", ctx.config.gazetteer);
  }
}

void require_lexicons(Context& ctx) {
  require_file(ctx, "standard_lexicon", ctx.config.standard_lexicon);
  optional_file(ctx, "swn_lexicon", ctx.config.swn_lexicon);
  optional_file(ctx, "badwords_lexicon", ctx.config.badwords_lexicon);
}

struct LoadedCorpus {
  Corpus all;    // every language, regions assigned
  Corpus local;  // the configured language only
};

LoadedCorpus load_corpus(Context& ctx) {
  const auto& c = ctx.config;
  auto ingested = ingest_corpus(c.corpus, c.ingest);
  const auto& st = ingested.stats;
  ctx.err << "corpus: " << st.records << " records, " << st.kept << " kept, "
          << st.dropped_empty << " empty, " << st.malformed << " malformed\n";
  for (const auto& d : st.diagnostics) ctx.err << "  " << d << '\n';

  LoadedCorpus out;
  if (c.region_source == RegionSource::kGazetteer) {
    const auto gaz = load_gazetteer(c.gazetteer);
    auto assigned = assign_regions(ingested.corpus, gaz);
    ctx.err << "gazetteer: matched " << assigned.matched << " of " << assigned.corpus.size()
            << " tweets (" << format_double(assigned.match_rate) << ")\n";
    out.all = std::move(assigned.corpus);
  } else {
    out.all = std::move(ingested.corpus);
  }
  out.local = c.language.empty() ? out.all : filter_language(out.all, c.language);
  if (out.local.empty()) throw DataError("no tweets in language '" + c.language + "'");
  return out;
}

RegionPartition select_regions(const Context& ctx, const Corpus& local) {
  auto parts = partition_by_region(local, ctx.config.level);
  if (ctx.config.top_k > 0) parts = top_regions(parts, ctx.config.top_k);
  if (parts.empty()) {
    throw DataError("no tweets carry a " + std::string(to_string(ctx.config.level)) + " code");
  }
  return parts;
}

ValenceLexicon load_standard(const Context& ctx) {
  return load_lexicon(ctx.config.standard_lexicon, ctx.config.standard_format,
                      LexiconSource::kStandard);
}

// SentiWordNet-derived entries, overridden by the bad-words list.
ValenceLexicon load_auxiliary(const Context& ctx) {
  ValenceLexicon aux;
  if (!ctx.config.swn_lexicon.empty()) {
    aux = load_lexicon(ctx.config.swn_lexicon, LexiconFormat::kSwnCsv);
  }
  if (!ctx.config.badwords_lexicon.empty()) {
    for (const auto& [term, e] : load_lexicon(ctx.config.badwords_lexicon, LexiconFormat::kWordlist)) {
      aux.insert_or_assign(e);
    }
  }
  return aux;
}

SIOptions si_options(const RunConfig& c) {
  SIOptions o;
  o.iteration_count = c.iterations;
  o.base_seed = c.base_seed;
  o.split_fraction = c.split_fraction;
  o.spread.strict_pos = c.strict_pos;
  o.spread.jobs = c.jobs;
  return o;
}

GroundTruthTable correlation_subset(const RunConfig& c, const GroundTruthTable& truth) {
  GroundTruthTable out = truth;
  for (const auto& r : c.exclude_regions) out.erase(r);
  return out;
}

std::string csv_number(double v) { return format_double(v); }

struct RegionSI {
  std::map<std::string, SIResult, std::less<>> results;
  std::vector<std::string> no_signal;
};

RegionSI compute_region_si(Context& ctx, const RegionPartition& parts,
                           const ValenceLexicon& standard, const ValenceLexicon& aux) {
  RegionSI out;
  const auto options = si_options(ctx.config);
  for (const auto& [code, corpus] : parts) {
    try {
      auto r = superdiversity_index(standard, corpus, ctx.config.spreading, aux, options);
      r.region = code;
      out.results.emplace(code, std::move(r));
    } catch (const DataError& e) {
      ctx.err << "region " << code << ": " << e.what() << '\n';
      out.no_signal.push_back(code);
    }
  }
  return out;
}

std::string si_csv(const RegionSI& si) {
  std::ostringstream csv;
  csv << "region,si,mean_r,n_iterations_used\n";
  for (const auto& [code, r] : si.results) {
    csv << code << ',' << csv_number(r.si) << ',' << csv_number(r.mean_r) << ','
        << r.iterations_used() << '\n';
  }
  return csv.str();
}

ordered_json si_detail(Context& ctx, const RegionSI& si, const RegionPartition& parts) {
  ordered_json regions = ordered_json::array();
  for (const auto& [code, r] : si.results) {
    regions.push_back({{"region", code},
                       {"tweets", parts.at(code).size()},
                       {"si", r.si},
                       {"mean_r", r.mean_r},
                       {"per_iteration_r", r.per_iteration_r},
                       {"matched_test_terms", r.matched_test_terms},
                       {"skipped_iterations", r.skipped_iterations}});
  }
  ordered_json detail = {{"level", std::string(to_string(ctx.config.level))},
                         {"iteration_count", ctx.config.iterations},
                         {"regions", regions},
                         {"no_signal", si.no_signal},
                         {"excluded_from_correlation", ctx.config.exclude_regions}};
  detail["groundtruth_correlation"] = nullptr;
  if (!ctx.config.ground_truth.empty()) {
    const auto truth = correlation_subset(ctx.config, load_ground_truth(ctx.config.ground_truth));
    try {
      const double r = correlate_with_groundtruth(si.results, truth);
      detail["groundtruth_correlation"] = r;
      ctx.out << "correlation with ground truth: " << csv_number(r) << '\n';
    } catch (const DataError& e) {
      ctx.err << "ground-truth correlation unavailable: " << e.what() << '\n';
    }
  }
  return detail;
}

void cmd_build_network(Context& ctx, OutputSet& outputs) {
  require_file(ctx, "corpus", ctx.config.corpus);
  require_regions(ctx);
  const auto corpus = load_corpus(ctx);
  const auto network = build_network(corpus.local, ctx.config.jobs);
  network.check_invariants();
  ctx.out << "network: " << network.node_count() << " nodes, " << network.edge_count()
          << " edges\n";
  outputs.add("network.tsv", [network](const std::filesystem::path& p) { write_network(p, network); });
}

void cmd_spread(Context& ctx, OutputSet& outputs) {
  require_file(ctx, "corpus", ctx.config.corpus);
  require_regions(ctx);
  require_lexicons(ctx);
  const auto corpus = load_corpus(ctx);
  const auto standard = load_standard(ctx);
  const auto aux = load_auxiliary(ctx);
  const auto network = build_network(corpus.local, ctx.config.jobs);
  const auto seed = make_seed_lexicon(standard, ValenceLexicon{}, aux);
  std::vector<RoundLogEntry> log;
  SpreadOptions options;
  options.strict_pos = ctx.config.strict_pos;
  options.jobs = ctx.config.jobs;
  options.round_log = &log;
  const auto result = sentiment_spreading(network, seed, ctx.config.spreading, options);
  const auto& st = result.state;
  ctx.out << "spread: " << st.tagged_count() << " of " << network.node_count()
          << " nodes tagged in " << st.rounds << " rounds; seeds matched "
          << result.seeds_matched << ", unmatched " << result.seeds_unmatched << '\n';

  std::ostringstream csv;
  csv << "lemma,valence,seed\n";
  for (NodeId id = 0; id < network.node_count(); ++id) {
    if (!st.tagged[id]) continue;
    csv << network.name(id) << ',' << csv_number(st.valence[id]) << ','
        << int{st.is_seed[id]} << '\n';
  }
  outputs.add_text("valences.csv", csv.str());
  std::ostringstream rounds;
  write_round_log(rounds, network, log);
  outputs.add_text("round_log.csv", rounds.str());
}

void cmd_si(Context& ctx, OutputSet& outputs) {
  require_file(ctx, "corpus", ctx.config.corpus);
  require_regions(ctx);
  require_lexicons(ctx);
  optional_file(ctx, "ground_truth", ctx.config.ground_truth);
  const auto corpus = load_corpus(ctx);
  const auto parts = select_regions(ctx, corpus.local);
  const auto standard = load_standard(ctx);
  const auto aux = load_auxiliary(ctx);
  const auto si = compute_region_si(ctx, parts, standard, aux);
  ctx.out << "si: " << si.results.size() << " regions, " << si.no_signal.size()
          << " without signal\n";
  auto detail = si_detail(ctx, si, parts);
  outputs.add_text("si.csv", si_csv(si));
  outputs.add_text("si_detail.json", detail.dump(2) + "\n");
}

void cmd_null_model(Context& ctx, OutputSet& outputs) {
  require_file(ctx, "corpus", ctx.config.corpus);
  require_regions(ctx);
  require_lexicons(ctx);
  optional_file(ctx, "ground_truth", ctx.config.ground_truth);
  const auto corpus = load_corpus(ctx);
  const auto parts = select_regions(ctx, corpus.local);
  const auto shuffled = null_model_reshuffle(parts, ctx.config.null_seed);
  const auto standard = load_standard(ctx);
  const auto aux = load_auxiliary(ctx);
  const auto si = compute_region_si(ctx, shuffled, standard, aux);
  ctx.out << "null-model: " << si.results.size() << " regions, " << si.no_signal.size()
          << " without signal\n";
  auto detail = si_detail(ctx, si, shuffled);
  detail["null_seed"] = ctx.config.null_seed;
  outputs.add_text("null_si.csv", si_csv(si));
  outputs.add_text("null_si_detail.json", detail.dump(2) + "\n");
}

void cmd_baselines(Context& ctx, OutputSet& outputs) {
  require_file(ctx, "corpus", ctx.config.corpus);
  require_regions(ctx);
  optional_file(ctx, "population", ctx.config.population);
  optional_file(ctx, "ground_truth", ctx.config.ground_truth);
  const auto corpus = load_corpus(ctx);
  const auto local_parts = select_regions(ctx, corpus.local);
  const auto all_parts = partition_by_region(corpus.all, ctx.config.level);
  std::map<std::string, std::uint64_t, std::less<>> population;
  if (!ctx.config.population.empty()) population = load_population(ctx.config.population);

  std::vector<BaselineReport> reports;
  for (const auto& [code, local] : local_parts) {
    std::optional<std::uint64_t> pop;
    if (const auto it = population.find(code); it != population.end()) pop = it->second;
    const auto& region_tweets = all_parts.at(code).tweets;
    reports.push_back(baseline_report(code, region_tweets, local, pop));
  }
  std::ostringstream csv;
  write_baseline_header(csv);
  for (const auto& r : reports) write_baseline_row(csv, r);
  outputs.add_text("baselines.csv", csv.str());
  ctx.out << "baselines: " << reports.size() << " regions\n";

  if (ctx.config.ground_truth.empty()) return;
  const auto truth = correlation_subset(ctx.config, load_ground_truth(ctx.config.ground_truth));
  const std::vector<std::pair<std::string, std::function<std::optional<double>(const BaselineReport&)>>>
      measures = {
          {"tweet_count", [](const BaselineReport& r) { return std::optional<double>(static_cast<double>(r.tweet_count)); }},
          {"tweets_per_capita", [](const BaselineReport& r) { return r.tweets_per_capita; }},
          {"language_count", [](const BaselineReport& r) { return std::optional<double>(static_cast<double>(r.language_count)); }},
          {"language_entropy", [](const BaselineReport& r) { return std::optional<double>(r.language_entropy); }},
          {"ttr", [](const BaselineReport& r) { return std::optional<double>(r.ttr); }},
      };
  std::ostringstream corr;
  corr << "measure,r\n";
  for (const auto& [name, get] : measures) {
    RegionValues values;
    for (const auto& r : reports) {
      if (const auto v = get(r)) values[r.region] = *v;
    }
    corr << name << ',';
    try {
      corr << csv_number(correlate_with_groundtruth(values, truth));
    } catch (const DataError& e) {
      ctx.err << "baseline " << name << ": " << e.what() << '\n';
    }
    corr << '\n';
  }
  outputs.add_text("baseline_correlations.csv", corr.str());
}

void cmd_classify_eval(Context& ctx, OutputSet& outputs) {
  require_file(ctx, "labeled_data", ctx.config.labeled_data);
  require_lexicons(ctx);
  optional_file(ctx, "corpus", ctx.config.corpus);
  const auto& c = ctx.config;
  const auto data = load_labeled_tweets(c.labeled_data, c.ingest);
  const auto standard = load_standard(ctx);

  std::vector<std::pair<std::string, ValenceMap>> lexicons;
  lexicons.emplace_back("standard", to_valence_map(standard));
  if (!c.corpus.empty()) {
    auto ingested = ingest_corpus(c.corpus, c.ingest);
    const auto local = c.language.empty() ? ingested.corpus : filter_language(ingested.corpus, c.language);
    const auto network = build_network(local, c.jobs);
    SpreadOptions options;
    options.strict_pos = c.strict_pos;
    options.jobs = c.jobs;
    const auto seed = make_seed_lexicon(standard, ValenceLexicon{}, load_auxiliary(ctx));
    const auto spread = sentiment_spreading(network, seed, c.spreading, options);
    lexicons.emplace_back("community", tagged_valences(network, spread.state));
  }

  ClassifierFactory factory;
  if (c.classifier == "majority") {
    factory = [] { return std::make_unique<MajorityClassifier>(); };
  } else {
    const LinearSvmClassifier::Options svm{c.svm_lambda, c.svm_epochs};
    factory = [svm] { return std::make_unique<LinearSvmClassifier>(svm); };
  }
  CrossValidationOptions cv;
  cv.repeats = c.repeats;
  cv.train_fraction = c.train_fraction;
  cv.seed = c.cv_seed;

  std::ostringstream csv;
  write_report_header(csv);
  for (const auto& [name, lexicon] : lexicons) {
    const auto report = cross_validate(data, lexicon, factory, cv);
    write_report_rows(csv, name, report);
    ctx.out << name << ": " << lexicon.size() << " terms, accuracy "
            << csv_number(report.accuracy.mean) << " over " << report.accuracy.defined
            << " repeats\n";
  }
  outputs.add_text("classify_report.csv", csv.str());
}

void cmd_synth_gen(Context& ctx, OutputSet& outputs) {
  auto synth = ctx.config.synth;
  if (synth.regions.empty()) throw ConfigError("synth_regions is required by synth-gen");
  if (!ctx.config.standard_lexicon.empty()) {
    require_file(ctx, "standard_lexicon", ctx.config.standard_lexicon);
    synth.vocabulary = load_standard(ctx);
  } else {
    synth.vocabulary = generate_vocabulary(
        ctx.config.synth_vocabulary_size, derive_seed(synth.seed, 5, 0));
  }
  synth.validate();
  const auto corpus = generate_corpus(synth);
  ctx.out << "synth: " << corpus.size() << " tweets over " << synth.regions.size()
          << " regions\n";
  std::ostringstream jsonl;
  write_corpus(jsonl, corpus);
  outputs.add_text("corpus.jsonl", jsonl.str());
  outputs.add("diversity.csv",
              [synth](const std::filesystem::path& p) { write_diversity_sidecar(p, synth); });
  outputs.add("lexicon.csv", [vocab = synth.vocabulary](const std::filesystem::path& p) {
    save_lexicon(p, vocab);
  });
}

void cmd_sweep_params(Context& ctx, OutputSet& outputs) {
  const auto& c = ctx.config;
  require_file(ctx, "corpus", c.corpus);
  if (!c.sweep_region.empty()) require_regions(ctx);
  require_lexicons(ctx);
  // Regions are irrelevant when sweeping the whole corpus.
  if (c.sweep_region.empty()) ctx.config.region_source = RegionSource::kRecords;
  const auto corpus = load_corpus(ctx);
  Corpus target = corpus.local;
  if (!c.sweep_region.empty()) {
    auto parts = partition_by_region(corpus.local, c.level);
    const auto it = parts.find(c.sweep_region);
    if (it == parts.end()) throw DataError("sweep_region " + c.sweep_region + " has no tweets");
    target = std::move(it->second);
  }
  const auto standard = load_standard(ctx);
  const auto aux = load_auxiliary(ctx);
  const auto network = build_network(target, c.jobs);
  const auto options = si_options(c);

  std::ostringstream csv;
  csv << "range_threshold,entropy_threshold,mean_r,si,n_iterations_used\n";
  std::optional<std::pair<double, std::string>> best;
  for (const double range : c.sweep.range_values) {
    for (const double entropy : c.sweep.entropy_values) {
      auto params = c.spreading;
      params.range_threshold = range;
      params.entropy_threshold = entropy;
      csv << csv_number(range) << ',' << csv_number(entropy) << ',';
      try {
        const auto r = superdiversity_index(standard, network, params, aux, options);
        csv << csv_number(r.mean_r) << ',' << csv_number(r.si) << ',' << r.iterations_used();
        if (!best || r.mean_r > best->first) {
          best.emplace(r.mean_r, "R=" + csv_number(range) + " S=" + csv_number(entropy));
        }
      } catch (const DataError&) {
        csv << ",,0";
      }
      csv << '\n';
    }
  }
  if (best) {
    ctx.out << "sweep: best mean r " << csv_number(best->first) << " at " << best->second << '\n';
  } else {
    ctx.out << "sweep: no grid point produced a correlation\n";
  }
  outputs.add_text("sweep.csv", csv.str());
}

using Command = void (*)(Context&, OutputSet&);

const std::map<std::string, Command, std::less<>>& commands() {
  static const std::map<std::string, Command, std::less<>> table = {
      {"build-network", cmd_build_network}, {"spread", cmd_spread},
      {"si", cmd_si},                       {"null-model", cmd_null_model},
      {"baselines", cmd_baselines},         {"classify-eval", cmd_classify_eval},
      {"synth-gen", cmd_synth_gen},         {"sweep-params", cmd_sweep_params},
  };
  return table;
}

ordered_json manifest(const Context& ctx, const std::map<std::string, std::string>& digests) {
  const auto canonical = canonical_settings(ctx.settings);
  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : ctx.settings) config[k] = v;
  ordered_json inputs = ordered_json::object();
  for (const auto& [key, path] : ctx.inputs) {
    inputs[key] = {{"path", path.string()}, {"fnv1a64", OutputSet::file_digest(path)}};
  }
  const auto& c = ctx.config;
  return {{"command", ctx.command},
          {"version", kVersion},
          {"config_fnv1a64", hex64(fnv1a64(canonical))},
          {"seeds",
           {{"base_seed", c.base_seed},
            {"null_seed", c.null_seed},
            {"cv_seed", c.cv_seed},
            {"synth_seed", c.synth.seed}}},
          {"config", config},
          {"inputs", inputs},
          {"outputs", digests}};
}

}  // namespace

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kConfig: return kExitConfig;
    case ErrorCategory::kData: return kExitData;
    case ErrorCategory::kInvariant: return kExitInvariant;
  }
  return kExitInternal;
}

void run_command(const std::string& command, const Settings& settings,
                 std::ostream& out, std::ostream& err) {
  const auto& table = commands();
  const auto it = table.find(command);
  if (it == table.end()) throw ConfigError("unknown command '" + command + "'");
  Context ctx{command, settings, parse_run_config(settings), out, err, {}};
  OutputSet outputs;
  it->second(ctx, outputs);
  const auto digests = outputs.commit(ctx.config.output_dir);
  const auto m = manifest(ctx, digests);
  std::ofstream f(ctx.config.output_dir / "manifest.json", std::ios::binary);
  f << m.dump(2) << '\n';
  if (!f) throw DataError("cannot write manifest");
}

}  // namespace superdiv::cli
