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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "superdiv/error.hpp"
#include "superdiv/spreading.hpp"
#include "support/support.hpp"

namespace superdiv {
namespace {

namespace oracle = testing::oracle;

LexiconEntry seed(std::string term, double v) {
  return LexiconEntry{std::move(term), v, std::nullopt, LexiconSource::kStandard};
}

ValenceLexicon lexicon(std::initializer_list<std::pair<const char*, double>> items) {
  ValenceLexicon lex;
  for (const auto& [t, v] : items) lex.insert(seed(t, v));
  return lex;
}

CooccurrenceNetwork edges(std::initializer_list<std::pair<const char*, const char*>> list) {
  NetworkBuilder b;
  for (const auto& [x, y] : list) b.add_edge(x, y);
  return b.finalize();
}

SpreadingParams params(double R, double S) {
  SpreadingParams p;
  p.range_threshold = R;
  p.entropy_threshold = S;
  return p;
}

TEST(Spreading, EntropyExamples) {
  const std::vector<double> spread = {0.5, 1.5, 2.5, 3.5, 4.5, 5.5, 6.5, 7.5, 8.5, 9.5};
  EXPECT_NEAR(neighborhood_entropy(spread, 10), 2.302585, 1e-6);
  EXPECT_NEAR(neighborhood_entropy(spread, 10), std::log(10.0), 1e-12);
  const std::vector<double> same = {3.1, 3.2, 3.9};
  EXPECT_EQ(neighborhood_entropy(same, 10), 0.0);
  const std::vector<double> two = {1.2, 1.4, 8.0, 8.5};
  EXPECT_NEAR(neighborhood_entropy(two, 10), std::log(2.0), 1e-15);
  EXPECT_THROW(neighborhood_entropy(std::vector<double>{}, 10), DataError);
}

TEST(Spreading, BinEdges) {
  EXPECT_EQ(valence_bin(0.0, 10), 0u);
  EXPECT_EQ(valence_bin(0.999, 10), 0u);
  EXPECT_EQ(valence_bin(1.0, 10), 1u);
  EXPECT_EQ(valence_bin(9.99, 10), 9u);
  EXPECT_EQ(valence_bin(10.0, 10), 9u);
  for (int i = 0; i <= 1000; ++i) {
    const double v = i / 100.0;
    ASSERT_EQ(static_cast<int>(valence_bin(v, 10)), oracle::bin_of(v, 10)) << v;
    ASSERT_EQ(static_cast<int>(valence_bin(v, 7)), oracle::bin_of(v, 7)) << v;
  }
}

TEST(Spreading, RangeExamples) {
  EXPECT_EQ(neighborhood_range(std::vector<double>{5.0}), 0.0);
  EXPECT_EQ(neighborhood_range(std::vector<double>{1, 1, 1, 1, 1, 9, 9, 9, 9, 9}), 8.0);
  EXPECT_EQ(neighborhood_range(std::vector<double>{0.0, 10.0}), 10.0);
  EXPECT_THROW(neighborhood_range(std::vector<double>{}), DataError);
}

TEST(Spreading, BinnedModeExamples) {
  EXPECT_EQ(binned_mode(std::vector<double>{8.0}, 10), 8.0);
  EXPECT_DOUBLE_EQ(binned_mode(std::vector<double>{2.1, 2.4, 7.8}, 10), 2.25);
  EXPECT_EQ(binned_mode(std::vector<double>{1.5, 8.5}, 10), 1.5);
  EXPECT_EQ(binned_mode(std::vector<double>{8.5, 1.5}, 10), 1.5);
  EXPECT_THROW(binned_mode(std::vector<double>{}, 10), DataError);
}

TEST(Spreading, InfectionValueExamples) {
  const auto p = params(3.0, 1.09);
  const auto v = infection_value(std::vector<double>{5.1, 5.2, 5.3}, p);
  ASSERT_TRUE(v.has_value());
  EXPECT_DOUBLE_EQ(*v, 5.2);
  EXPECT_FALSE(infection_value(std::vector<double>{0.5, 9.5}, p).has_value());
  EXPECT_FALSE(infection_value(std::vector<double>{}, p).has_value());
}

TEST(Spreading, GatesAreStrict) {
  // Range exactly R and entropy exactly S both block.
  EXPECT_FALSE(infection_value(std::vector<double>{2.0, 5.0}, params(3.0, 2.0)).has_value());
  EXPECT_TRUE(infection_value(std::vector<double>{2.0, 5.0}, params(3.0001, 2.0)).has_value());
  const std::vector<double> halves = {1.5, 2.5};
  EXPECT_FALSE(infection_value(halves, params(5.0, std::log(2.0))).has_value());
  EXPECT_TRUE(infection_value(halves, params(5.0, std::log(2.0) + 1e-9)).has_value());
  auto p = params(3.0, 1.09);
  p.min_tagged_neighbors = 2;
  EXPECT_FALSE(infection_value(std::vector<double>{5.0}, p).has_value());
}

TEST(Spreading, InfectionIgnoresOrder) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(0, 1000);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> vals(1 + t % 9);
    for (auto& v : vals) v = u(rng) / 100.0;
    const auto a = infection_value(vals, params(10.0, 2.3));
    std::shuffle(vals.begin(), vals.end(), rng);
    const auto b = infection_value(vals, params(10.0, 2.3));
    ASSERT_EQ(a, b);
  }
}

TEST(Spreading, EntropyBoundedByLogBins) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> vals(1 + t % 40);
    for (auto& v : vals) v = u(rng);
    ASSERT_LE(neighborhood_entropy(vals, 10), std::log(10.0) + 1e-15);
  }
}

TEST(Spreading, ChainExample) {
  const auto g = edges({{"a", "b"}, {"b", "c"}});
  const auto r = sentiment_spreading(g, lexicon({{"a", 8.0}}), params(3.0, 1.09));
  EXPECT_EQ(r.state.rounds, 3u);
  for (const char* n : {"a", "b", "c"}) EXPECT_EQ(r.state.valence_of(*g.find(n)), 8.0);
  EXPECT_EQ(r.seeds_matched, 1u);
}

TEST(Spreading, FullSeedNeedsOneRound) {
  const auto g = edges({{"a", "b"}, {"b", "c"}});
  const auto seeds = lexicon({{"a", 1.0}, {"b", 5.0}, {"c", 9.0}});
  const auto r = sentiment_spreading(g, seeds, params(3.0, 1.09));
  EXPECT_EQ(r.state.rounds, 1u);
  EXPECT_EQ(tagged_valences(g, r.state), to_valence_map(seeds));
}

TEST(Spreading, StarBlockedByRange) {
  const auto g = edges({{"center", "x"}, {"center", "y"}});
  const auto r = sentiment_spreading(g, lexicon({{"x", 1.0}, {"y", 9.0}}), params(3.0, 1.09));
  EXPECT_FALSE(r.state.valence_of(*g.find("center")).has_value());
  EXPECT_EQ(r.state.rounds, 1u);
}

TEST(Spreading, UnmatchedSeedsCountedAndEmptyNetwork) {
  const auto g = edges({{"a", "b"}});
  const auto r = sentiment_spreading(g, lexicon({{"a", 2.0}, {"zzz", 3.0}}), params(3.0, 1.09));
  EXPECT_EQ(r.seeds_matched, 1u);
  EXPECT_EQ(r.seeds_unmatched, 1u);
  const auto empty = sentiment_spreading(CooccurrenceNetwork{}, lexicon({{"a", 2.0}}), params(3.0, 1.09));
  EXPECT_EQ(empty.state.rounds, 0u);
}

TEST(Spreading, StrictPosRestrictsSeeding) {
  NetworkBuilder b;
  b.add_node("run", pos_bit(PartOfSpeech::kVerb));
  b.add_node("walk", pos_bit(PartOfSpeech::kVerb));
  b.add_edge("run", "walk");
  const auto g = b.finalize();
  ValenceLexicon seeds;
  seeds.insert(LexiconEntry{"run", 7.0, PartOfSpeech::kNoun, LexiconSource::kStandard});
  SpreadOptions strict;
  strict.strict_pos = true;
  EXPECT_EQ(sentiment_spreading(g, seeds, params(3, 1.09), strict).state.tagged_count(), 0u);
  EXPECT_EQ(sentiment_spreading(g, seeds, params(3, 1.09)).state.tagged_count(), 2u);
}

CooccurrenceNetwork build(const testing::RandomSpreadCase& c) {
  NetworkBuilder b;
  for (std::size_t i = 0; i < c.n; ++i) b.add_node(testing::node_name(i));
  for (const auto& [x, y] : c.edges) b.add_edge(testing::node_name(x), testing::node_name(y));
  return b.finalize();
}

ValenceLexicon seeds_of(const testing::RandomSpreadCase& c) {
  ValenceLexicon lex;
  for (const auto& [node, v] : c.seeds) lex.insert(seed(testing::node_name(node), v));
  return lex;
}

TEST(Spreading, MatchesReferenceSimulator) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = testing::random_spread_case(rng, 12);
    const auto g = build(c);
    const auto got = sentiment_spreading(g, seeds_of(c), params(c.R, c.S));
    const auto want = oracle::spread(c.n, c.edges, c.seeds, c.R, c.S);
    ASSERT_EQ(got.state.rounds, want.rounds) << "trial " << trial;
    ASSERT_LE(got.state.rounds, c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
      const auto id = *g.find(testing::node_name(i));
      ASSERT_EQ(got.state.valence_of(id), want.valence[i]) << "trial " << trial << " node " << i;
    }
  }
}

TEST(Spreading, WriteOnceAndSeedsImmutable) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = testing::random_spread_case(rng, 30);
    const auto g = build(c);
    std::vector<RoundLogEntry> log;
    SpreadOptions o;
    o.round_log = &log;
    const auto r = sentiment_spreading(g, seeds_of(c), params(c.R, c.S), o);
    std::set<NodeId> seen;
    std::size_t last_round = 0;
    for (const auto& e : log) {
      ASSERT_TRUE(seen.insert(e.node).second) << "node assigned twice";
      ASSERT_GE(e.round, last_round);
      last_round = e.round;
      ASSERT_EQ(r.state.valence_of(e.node), e.valence);
      ASSERT_GE(e.valence, 0.0);
      ASSERT_LE(e.valence, 10.0);
    }
    ASSERT_EQ(seen.size(), r.state.tagged_count());
    for (const auto& [node, v] : c.seeds) {
      const auto id = *g.find(testing::node_name(node));
      ASSERT_TRUE(r.state.is_seed[id]);
      ASSERT_EQ(r.state.valence_of(id), v);
    }
  }
}

TEST(Spreading, ParallelRoundsMatchSerial) {
  NetworkBuilder b;
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20000; ++i) {
    b.add_edge("v" + std::to_string(rng() % 6000), "v" + std::to_string(rng() % 6000));
  }
  const auto g = b.finalize();
  ValenceLexicon seeds;
  for (int i = 0; i < 6000; i += 5) {
    const auto name = "v" + std::to_string(i);
    if (g.find(name)) seeds.insert(seed(name, static_cast<double>(rng() % 1001) / 100.0));
  }
  const auto serial = sentiment_spreading(g, seeds, params(10.0, 2.3));
  SpreadOptions o;
  o.jobs = 4;
  const auto parallel = sentiment_spreading(g, seeds, params(10.0, 2.3), o);
  EXPECT_EQ(serial.state.valence, parallel.state.valence);
  EXPECT_EQ(serial.state.tagged, parallel.state.tagged);
  EXPECT_EQ(serial.state.rounds, parallel.state.rounds);
}

TEST(Spreading, RoundLogFormat) {
  const auto g = edges({{"a", "b"}});
  std::vector<RoundLogEntry> log;
  SpreadOptions o;
  o.round_log = &log;
  sentiment_spreading(g, lexicon({{"a", 8.0}}), params(3.0, 1.09), o);
  std::ostringstream out;
  write_round_log(out, g, log);
  EXPECT_EQ(out.str(), "round,node,valence\n0,a,8\n1,b,8\n");
}

TEST(Spreading, SeedLexiconHoldsOutTestTerms) {
  const auto train = lexicon({{"a", 8.0}});
  const auto test = lexicon({{"t", 2.0}});
  const auto aux = lexicon({{"t", 1.0}, {"a", 3.0}, {"x", 7.5}});
  const auto s = make_seed_lexicon(train, test, aux);
  EXPECT_FALSE(s.contains("t"));
  EXPECT_EQ(s.valence("a"), 8.0);
  EXPECT_EQ(s.valence("x"), 7.5);
}

TEST(Spreading, HeldOutAuxiliaryTermIsInfectedNotSeeded) {
  // Five nodes: t's neighbours a, b (train) and x (aux) agree on ~8; aux
  // also lists t itself at 1.0, which must not leak into the result.
  const auto g = edges({{"t", "a"}, {"t", "b"}, {"t", "x"}, {"x", "y"}});
  const auto train = lexicon({{"a", 8.0}, {"b", 8.2}});
  const auto test = lexicon({{"t", 2.0}, {"y", 5.0}, {"absent", 4.0}});
  const auto aux = lexicon({{"t", 1.0}, {"x", 8.4}});
  const auto out = compute_valences(g, train, test, params(3.0, 1.09), aux);
  ASSERT_TRUE(out.contains("t"));
  EXPECT_DOUBLE_EQ(out.at("t"), (8.0 + 8.2 + 8.4) / 3.0);
  EXPECT_EQ(out.at("y"), 8.4);
  EXPECT_FALSE(out.contains("absent"));
  EXPECT_FALSE(out.contains("a"));
}

TEST(Spreading, ComputeValencesFromCorpus) {
  Corpus negated_only;
  Tweet t;
  t.language = "en";
  t.negated = true;
  t.lemmas = {{"a", "noun"}, {"t", "noun"}};
  negated_only.tweets = {t};
  const auto train = lexicon({{"a", 8.0}});
  const auto test = lexicon({{"t", 2.0}});
  EXPECT_TRUE(compute_valences(train, test, negated_only, params(3, 1.09), ValenceLexicon{}).empty());
  negated_only.tweets[0].negated = false;
  EXPECT_EQ(compute_valences(train, test, negated_only, params(3, 1.09), ValenceLexicon{}).at("t"), 8.0);
  EXPECT_THROW(compute_valences(train, train, negated_only, params(3, 1.09), ValenceLexicon{}), DataError);
}

TEST(Spreading, ParamsValidation) {
  EXPECT_THROW(params(0.0, 1.0).validate(), ConfigError);
  EXPECT_THROW(params(1.0, -1.0).validate(), ConfigError);
  auto p = params(1.0, 1.0);
  p.bin_count = 1;
  EXPECT_THROW(p.validate(), ConfigError);
  EXPECT_THROW(sentiment_spreading(CooccurrenceNetwork{}, ValenceLexicon{}, params(0.0, 1.0)), ConfigError);
}

}  // namespace
}  // namespace superdiv
