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

#include "superdiv/spreading.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

#include "superdiv/error.hpp"
#include "superdiv/stats.hpp"
#include "superdiv/text.hpp"

namespace superdiv {

namespace {

std::size_t percentile_index(std::size_t n, std::size_t pct) {
  const std::size_t rank = (pct * n + 99) / 100;  // ceil(pct * n / 100)
  return rank == 0 ? 0 : std::min(rank - 1, n - 1);
}

double sorted_range(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  return sorted[percentile_index(n, 90)] - sorted[percentile_index(n, 10)];
}

// Mean of the modal bin of an ascending sequence; the members of a bin are
// contiguous, so summation order is fixed by the sort.
double sorted_binned_mode(std::span<const double> sorted,
                          std::span<std::size_t> counts, int bin_count) {
  std::fill(counts.begin(), counts.end(), std::size_t{0});
  for (const double v : sorted) ++counts[valence_bin(v, bin_count)];
  const auto modal = static_cast<std::size_t>(
      std::max_element(counts.begin(), counts.end()) - counts.begin());
  double sum = 0.0;
  for (const double v : sorted) {
    if (valence_bin(v, bin_count) == modal) sum += v;
  }
  return sum / static_cast<double>(counts[modal]);
}

void require_non_empty(std::span<const double> vals, const char* what) {
  if (vals.empty()) throw DataError(std::string(what) + ": empty input");
}

// Reusable scratch space for evaluating one neighbourhood at a time.
class InfectionEvaluator {
 public:
  explicit InfectionEvaluator(const SpreadingParams& params)
      : params_(params), counts_(static_cast<std::size_t>(params.bin_count)) {}

  // `vals` is sorted in place.
  std::optional<double> operator()(std::vector<double>& vals) {
    if (vals.empty() || vals.size() < params_.min_tagged_neighbors) {
      return std::nullopt;
    }
    std::sort(vals.begin(), vals.end());
    if (!(sorted_range(vals) < params_.range_threshold)) return std::nullopt;
    std::fill(counts_.begin(), counts_.end(), std::size_t{0});
    for (const double v : vals) ++counts_[valence_bin(v, params_.bin_count)];
    if (!(shannon_entropy(counts_) < params_.entropy_threshold)) {
      return std::nullopt;
    }
    return sorted_binned_mode(vals, counts_, params_.bin_count);
  }

 private:
  const SpreadingParams& params_;
  std::vector<std::size_t> counts_;
};

void gather_tagged(const CooccurrenceNetwork& network,
                   const ValenceState& state, NodeId v,
                   std::vector<double>& out) {
  out.clear();
  for (const NodeId u : network.neighbors(v)) {
    if (state.tagged[u]) out.push_back(state.valence[u]);
  }
}

}  // namespace

void SpreadingParams::validate() const {
  if (!(range_threshold > 0.0)) {
    throw ConfigError("range_threshold must be positive");
  }
  if (!(entropy_threshold > 0.0)) {
    throw ConfigError("entropy_threshold must be positive");
  }
  if (bin_count < 2) throw ConfigError("bin_count must be at least 2");
}

std::size_t valence_bin(double valence, int bin_count) {
  const auto n = static_cast<std::size_t>(bin_count);
  if (!(valence > kMinValence)) return 0;
  if (valence >= kMaxValence) return n - 1;
  const auto edge = [&](std::size_t k) {
    return kMaxValence * static_cast<double>(k) / static_cast<double>(bin_count);
  };
  auto k = std::min(n - 1, static_cast<std::size_t>(valence * bin_count / kMaxValence));
  // The estimate can be off by one at a bin edge; settle against the edges.
  while (k > 0 && valence < edge(k)) --k;
  while (k + 1 < n && valence >= edge(k + 1)) ++k;
  return k;
}

double neighborhood_entropy(std::span<const double> vals, int bin_count) {
  require_non_empty(vals, "neighborhood_entropy");
  std::vector<std::size_t> counts(static_cast<std::size_t>(bin_count), 0);
  for (const double v : vals) ++counts[valence_bin(v, bin_count)];
  return shannon_entropy(counts);
}

double neighborhood_range(std::span<const double> vals) {
  require_non_empty(vals, "neighborhood_range");
  std::vector<double> sorted(vals.begin(), vals.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted_range(sorted);
}

double binned_mode(std::span<const double> vals, int bin_count) {
  require_non_empty(vals, "binned_mode");
  std::vector<double> sorted(vals.begin(), vals.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> counts(static_cast<std::size_t>(bin_count), 0);
  return sorted_binned_mode(sorted, counts, bin_count);
}

std::optional<double> infection_value(std::span<const double> neighbor_vals,
                                      const SpreadingParams& params) {
  std::vector<double> vals(neighbor_vals.begin(), neighbor_vals.end());
  InfectionEvaluator evaluate(params);
  return evaluate(vals);
}

std::size_t ValenceState::tagged_count() const {
  return static_cast<std::size_t>(
      std::count(tagged.begin(), tagged.end(), std::uint8_t{1}));
}

SpreadResult sentiment_spreading(const CooccurrenceNetwork& network,
                                 const ValenceLexicon& seed,
                                 const SpreadingParams& params,
                                 const SpreadOptions& options) {
  params.validate();
  const std::size_t n = network.node_count();
  SpreadResult result;
  auto& state = result.state;
  state.valence.assign(n, 0.0);
  state.tagged.assign(n, 0);
  state.is_seed.assign(n, 0);

  for (const auto& [term, entry] : seed) {
    const auto id = network.find(term);
    if (!id || (options.strict_pos && entry.pos &&
                (network.pos_mask(*id) & pos_bit(*entry.pos)) == 0)) {
      ++result.seeds_unmatched;
      continue;
    }
    ++result.seeds_matched;
    state.valence[*id] = entry.valence;
    state.tagged[*id] = 1;
    state.is_seed[*id] = 1;
    if (options.round_log) options.round_log->push_back({0, *id, entry.valence});
  }
  if (n == 0) return result;

  // Round one looks at every untagged node. Afterwards a node's tagged
  // neighbourhood only changes when a neighbour was just assigned, so only
  // those nodes can change outcome and need re-evaluation.
  std::vector<NodeId> candidates;
  for (NodeId v = 0; v < n; ++v) {
    if (!state.tagged[v]) candidates.push_back(v);
  }

  const unsigned jobs = std::max(1u, options.jobs);
  std::vector<std::optional<double>> outcome;
  std::vector<NodeId> assigned;
  std::vector<std::uint8_t> queued(n, 0);

  while (true) {
    ++state.rounds;
    if (state.rounds > n) {
      throw InvariantError("spreading exceeded one round per node");
    }
    outcome.assign(candidates.size(), std::nullopt);
    auto evaluate_range = [&](std::size_t begin, std::size_t end) {
      InfectionEvaluator evaluate(params);
      std::vector<double> vals;
      for (std::size_t i = begin; i < end; ++i) {
        gather_tagged(network, state, candidates[i], vals);
        outcome[i] = evaluate(vals);
      }
    };
    if (jobs > 1 && candidates.size() >= 4096) {
      std::vector<std::jthread> workers;
      for (unsigned w = 0; w < jobs; ++w) {
        const std::size_t begin = candidates.size() * w / jobs;
        const std::size_t end = candidates.size() * (w + 1) / jobs;
        workers.emplace_back(evaluate_range, begin, end);
      }
    } else {
      evaluate_range(0, candidates.size());
    }

    // Commit between rounds so every evaluation above saw the same snapshot.
    assigned.clear();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!outcome[i]) continue;
      const NodeId v = candidates[i];
      state.valence[v] = *outcome[i];
      state.tagged[v] = 1;
      assigned.push_back(v);
      if (options.round_log) {
        options.round_log->push_back({state.rounds, v, *outcome[i]});
      }
    }
    if (assigned.empty()) break;

    candidates.clear();
    for (const NodeId v : assigned) {
      for (const NodeId u : network.neighbors(v)) {
        if (!state.tagged[u] && !queued[u]) {
          queued[u] = 1;
          candidates.push_back(u);
        }
      }
    }
    for (const NodeId u : candidates) queued[u] = 0;
    std::sort(candidates.begin(), candidates.end());
  }
  return result;
}

void write_round_log(std::ostream& out, const CooccurrenceNetwork& network,
                     std::span<const RoundLogEntry> log) {
  out << "round,node,valence\n";
  for (const auto& e : log) {
    out << e.round << ',' << network.name(e.node) << ','
        << format_double(e.valence) << '\n';
  }
}

ValenceMap tagged_valences(const CooccurrenceNetwork& network,
                           const ValenceState& state) {
  ValenceMap out;
  for (NodeId v = 0; v < network.node_count(); ++v) {
    if (state.tagged[v]) out.emplace(network.name(v), state.valence[v]);
  }
  return out;
}

ValenceLexicon make_seed_lexicon(const ValenceLexicon& train,
                                 const ValenceLexicon& test,
                                 const ValenceLexicon& auxiliary) {
  ValenceLexicon seeds;
  for (const auto& [term, entry] : auxiliary) {
    if (!test.contains(term)) seeds.insert(entry);
  }
  for (const auto& [term, entry] : train) seeds.insert_or_assign(entry);
  return seeds;
}

ValenceMap compute_valences(const CooccurrenceNetwork& network,
                            const ValenceLexicon& train,
                            const ValenceLexicon& test,
                            const SpreadingParams& params,
                            const ValenceLexicon& auxiliary,
                            const SpreadOptions& options) {
  for (const auto& [term, entry] : train) {
    if (test.contains(term)) {
      throw DataError("train and test lexicons overlap on '" + term + "'");
    }
  }
  const auto seeds = make_seed_lexicon(train, test, auxiliary);
  const auto spread = sentiment_spreading(network, seeds, params, options);
  ValenceMap out;
  for (const auto& [term, entry] : test) {
    const auto id = network.find(term);
    if (!id) continue;
    if (const auto v = spread.state.valence_of(*id)) out.emplace(term, *v);
  }
  return out;
}

ValenceMap compute_valences(const ValenceLexicon& train,
                            const ValenceLexicon& test, const Corpus& corpus,
                            const SpreadingParams& params,
                            const ValenceLexicon& auxiliary,
                            const SpreadOptions& options) {
  const auto network = build_network(corpus, options.jobs);
  return compute_valences(network, train, test, params, auxiliary, options);
}

}  // namespace superdiv
