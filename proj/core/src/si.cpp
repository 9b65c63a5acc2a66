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

#include "superdiv/si.hpp"

#include <cmath>
#include <thread>

#include "superdiv/error.hpp"
#include "superdiv/random.hpp"
#include "superdiv/text.hpp"

namespace superdiv {

namespace {

struct IterationOutcome {
  std::size_t matched = 0;
  std::optional<double> r;
};

IterationOutcome run_iteration(const ValenceLexicon& standard,
                               const CooccurrenceNetwork& network,
                               const SpreadingParams& params,
                               const ValenceLexicon& auxiliary,
                               const SIOptions& options, std::size_t i) {
  const auto split = split_lexicon(standard, options.split_fraction,
                                   options.base_seed + i);
  SpreadOptions spread = options.spread;
  spread.jobs = 1;
  spread.round_log = nullptr;
  const auto modelled = compute_valences(network, split.train, split.test,
                                         params, auxiliary, spread);
  IterationOutcome out;
  out.matched = modelled.size();
  if (modelled.size() < 2) return out;
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(modelled.size());
  ys.reserve(modelled.size());
  for (const auto& [term, v] : modelled) {
    xs.push_back(v);
    ys.push_back(split.test.find(term)->valence);
  }
  try {
    out.r = pearson(xs, ys);
  } catch (const DataError&) {
    // Constant modelled or standard side: no correlation to report.
  }
  return out;
}

}  // namespace

SIResult superdiversity_index(const ValenceLexicon& standard,
                              const CooccurrenceNetwork& network,
                              const SpreadingParams& params,
                              const ValenceLexicon& auxiliary,
                              const SIOptions& options) {
  if (options.iteration_count < 1) {
    throw ConfigError("iteration_count must be at least 1");
  }
  params.validate();
  const std::size_t k = options.iteration_count;
  std::vector<IterationOutcome> outcomes(k);

  const unsigned jobs =
      std::min<unsigned>(std::max(1u, options.spread.jobs), static_cast<unsigned>(k));
  if (jobs > 1) {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < k; i += jobs) {
          outcomes[i] = run_iteration(standard, network, params, auxiliary,
                                      options, i);
        }
      });
    }
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      outcomes[i] =
          run_iteration(standard, network, params, auxiliary, options, i);
    }
  }

  SIResult result;
  for (const auto& o : outcomes) {
    result.matched_test_terms.push_back(o.matched);
    if (o.r) {
      result.per_iteration_r.push_back(*o.r);
    } else {
      ++result.skipped_iterations;
    }
  }
  if (result.per_iteration_r.empty()) {
    throw DataError("no signal: every iteration matched fewer than two "
                    "test terms or produced an undefined correlation");
  }
  result.mean_r = mean(result.per_iteration_r);
  result.si = si_from_mean_r(result.mean_r);
  return result;
}

SIResult superdiversity_index(const ValenceLexicon& standard,
                              const Corpus& corpus,
                              const SpreadingParams& params,
                              const ValenceLexicon& auxiliary,
                              const SIOptions& options) {
  const auto network = build_network(corpus, options.spread.jobs);
  return superdiversity_index(standard, network, params, auxiliary, options);
}

RegionPartition null_model_reshuffle(const RegionPartition& partitions,
                                     std::uint64_t seed) {
  if (partitions.size() < 2) {
    throw DataError("null model needs at least two regions");
  }
  std::vector<const Tweet*> pool;
  for (const auto& [code, corpus] : partitions) {
    for (const auto& t : corpus.tweets) pool.push_back(&t);
  }
  Rng rng(mix_seed(seed));
  shuffle(std::span(pool), rng);

  RegionPartition out;
  std::size_t next = 0;
  for (const auto& [code, corpus] : partitions) {
    auto& part = out[code];
    part.language_filter = corpus.language_filter;
    part.tweets.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      part.tweets.push_back(*pool[next++]);
    }
  }
  return out;
}

GroundTruthTable load_ground_truth(const std::filesystem::path& path) {
  const auto table = read_csv(path);
  const auto region = table.column("region");
  if (!region) throw ParseError(table.source, 1, "missing 'region' column");
  const auto immigrants = table.column("immigrants");
  const auto population = table.column("population");
  const bool rate_form = immigrants && population;
  if (!rate_form && table.header.size() != 2) {
    throw ParseError(table.source, 1,
                     "expected region,immigrants,population or region,value");
  }
  const std::size_t value_col = *region == 0 ? 1 : 0;

  GroundTruthTable truth;
  for (const auto& row : table.rows) {
    if (row.fields.size() != table.header.size()) {
      throw ParseError(table.source, row.line, "wrong number of fields");
    }
    double value = 0.0;
    if (rate_form) {
      const auto imm = parse_double(row.fields[*immigrants]);
      const auto pop = parse_double(row.fields[*population]);
      if (!imm || !pop || *imm < 0.0 || !(*pop > 0.0)) {
        throw ParseError(table.source, row.line,
                         "immigrants must be >= 0 and population > 0");
      }
      value = *imm / *pop;
    } else {
      const auto v = parse_double(row.fields[value_col]);
      if (!v || !std::isfinite(*v) || *v < 0.0) {
        throw ParseError(table.source, row.line,
                         "value must be finite and non-negative");
      }
      value = *v;
    }
    if (!truth.emplace(row.fields[*region], value).second) {
      throw ParseError(table.source, row.line,
                       "duplicate region '" + row.fields[*region] + "'");
    }
  }
  return truth;
}

double correlate_with_groundtruth(const RegionValues& values,
                                  const GroundTruthTable& truth) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [region, v] : values) {
    const auto it = truth.find(region);
    if (it == truth.end()) continue;
    xs.push_back(v);
    ys.push_back(it->second);
  }
  if (xs.size() < 2) {
    throw DataError("ground-truth correlation needs at least two shared "
                    "regions, found " + std::to_string(xs.size()));
  }
  return pearson(xs, ys);
}

double correlate_with_groundtruth(
    const std::map<std::string, SIResult, std::less<>>& results,
    const GroundTruthTable& truth) {
  RegionValues values;
  for (const auto& [region, r] : results) values.emplace(region, r.si);
  return correlate_with_groundtruth(values, truth);
}

}  // namespace superdiv
