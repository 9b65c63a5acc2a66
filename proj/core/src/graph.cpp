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

#include "superdiv/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <thread>

#include "superdiv/error.hpp"

namespace superdiv {

namespace {

constexpr std::uint64_t pack(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}
constexpr NodeId first_of(std::uint64_t e) { return static_cast<NodeId>(e >> 32); }
constexpr NodeId second_of(std::uint64_t e) {
  return static_cast<NodeId>(e & 0xffffffffULL);
}

}  // namespace

std::optional<NodeId> CooccurrenceNetwork::find(std::string_view lemma) const {
  const auto it = std::lower_bound(names_.begin(), names_.end(), lemma);
  if (it == names_.end() || *it != lemma) return std::nullopt;
  return static_cast<NodeId>(it - names_.begin());
}

bool CooccurrenceNetwork::has_edge(NodeId a, NodeId b) const {
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

bool CooccurrenceNetwork::has_edge(std::string_view a,
                                   std::string_view b) const {
  const auto ia = find(a);
  const auto ib = find(b);
  return ia && ib && has_edge(*ia, *ib);
}

void CooccurrenceNetwork::check_invariants() const {
  if (offsets_.size() != names_.size() + 1 ||
      pos_masks_.size() != names_.size()) {
    throw InvariantError("network: inconsistent array sizes");
  }
  if (!std::is_sorted(names_.begin(), names_.end()) ||
      std::adjacent_find(names_.begin(), names_.end()) != names_.end()) {
    throw InvariantError("network: node names not strictly sorted");
  }
  for (NodeId v = 0; v < node_count(); ++v) {
    const auto nb = neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] == v) throw InvariantError("network: self-loop on " + name(v));
      if (i > 0 && nb[i - 1] >= nb[i]) {
        throw InvariantError("network: neighbour list not sorted for " +
                             name(v));
      }
      if (!has_edge(nb[i], v)) {
        throw InvariantError("network: asymmetric edge " + name(v) + "-" +
                             name(nb[i]));
      }
    }
  }
}

NodeId NetworkBuilder::add_node(std::string_view lemma, PosMask pos) {
  auto [it, inserted] =
      ids_.try_emplace(std::string(lemma), static_cast<NodeId>(names_.size()));
  if (inserted) {
    names_.emplace_back(lemma);
    masks_.push_back(pos);
  } else {
    masks_[it->second] |= pos;
  }
  return it->second;
}

void NetworkBuilder::add_edge_ids(NodeId a, NodeId b) {
  if (a == b) return;
  edges_.push_back(pack(a, b));
  if (edges_.size() > 2 * compacted_size_ + 4096) compact();
}

void NetworkBuilder::compact() {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  compacted_size_ = edges_.size();
}

void NetworkBuilder::add_edge(std::string_view a, std::string_view b) {
  const NodeId ia = add_node(a);
  const NodeId ib = add_node(b);
  add_edge_ids(ia, ib);
}

void NetworkBuilder::add_tweet(std::span<const Lemma> lemmas) {
  std::vector<NodeId> ids;
  ids.reserve(lemmas.size());
  for (const auto& l : lemmas) {
    ids.push_back(add_node(l.lemma, pos_bit(parse_part_of_speech(l.pos))));
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) add_edge_ids(ids[i], ids[j]);
  }
}

void NetworkBuilder::merge(const NetworkBuilder& other) {
  std::vector<NodeId> remap(other.names_.size());
  for (std::size_t i = 0; i < other.names_.size(); ++i) {
    remap[i] = add_node(other.names_[i], other.masks_[i]);
  }
  for (const auto e : other.edges_) {
    add_edge_ids(remap[first_of(e)], remap[second_of(e)]);
  }
}

CooccurrenceNetwork NetworkBuilder::finalize() const {
  const std::size_t n = names_.size();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(),
            [&](NodeId a, NodeId b) { return names_[a] < names_[b]; });
  std::vector<NodeId> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = static_cast<NodeId>(r);

  std::vector<std::uint64_t> edges;
  edges.reserve(edges_.size());
  for (const auto e : edges_) edges.push_back(pack(rank[first_of(e)], rank[second_of(e)]));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  CooccurrenceNetwork net;
  net.names_.reserve(n);
  net.pos_masks_.reserve(n);
  for (const auto id : order) {
    net.names_.push_back(names_[id]);
    net.pos_masks_.push_back(masks_[id]);
  }
  std::vector<std::size_t> degree(n, 0);
  for (const auto e : edges) {
    ++degree[first_of(e)];
    ++degree[second_of(e)];
  }
  net.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) net.offsets_[v + 1] = net.offsets_[v] + degree[v];
  net.adjacency_.resize(net.offsets_[n]);
  std::vector<std::size_t> cursor(net.offsets_.begin(), net.offsets_.end() - 1);
  for (const auto e : edges) {
    net.adjacency_[cursor[first_of(e)]++] = second_of(e);
    net.adjacency_[cursor[second_of(e)]++] = first_of(e);
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(net.adjacency_.begin() + static_cast<std::ptrdiff_t>(net.offsets_[v]),
              net.adjacency_.begin() + static_cast<std::ptrdiff_t>(net.offsets_[v + 1]));
  }
  return net;
}

CooccurrenceNetwork build_network(const Corpus& corpus, unsigned jobs) {
  const std::size_t n = corpus.tweets.size();
  jobs = std::max(1u, jobs);
  if (jobs == 1 || n < 2 * static_cast<std::size_t>(jobs)) {
    NetworkBuilder builder;
    for (const auto& t : corpus.tweets) {
      if (!t.negated) builder.add_tweet(t.lemmas);
    }
    return builder.finalize();
  }

  std::vector<NetworkBuilder> parts(jobs);
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        const std::size_t begin = n * w / jobs;
        const std::size_t end = n * (w + 1) / jobs;
        for (std::size_t i = begin; i < end; ++i) {
          const auto& t = corpus.tweets[i];
          if (!t.negated) parts[w].add_tweet(t.lemmas);
        }
      });
    }
  }
  for (unsigned w = 1; w < jobs; ++w) parts[0].merge(parts[w]);
  return parts[0].finalize();
}

void write_network(std::ostream& out, const CooccurrenceNetwork& network) {
  for (NodeId v = 0; v < network.node_count(); ++v) {
    for (const NodeId u : network.neighbors(v)) {
      if (u > v) out << network.name(v) << '\t' << network.name(u) << '\n';
    }
  }
  for (NodeId v = 0; v < network.node_count(); ++v) {
    if (network.degree(v) == 0) out << network.name(v) << '\n';
  }
}

void write_network(const std::filesystem::path& path,
                   const CooccurrenceNetwork& network) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_network(out, network);
}

CooccurrenceNetwork read_network(std::istream& in, std::string_view source) {
  NetworkBuilder builder;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      builder.add_node(line, kAnyPos);
      continue;
    }
    const std::string_view a(line.data(), tab);
    const std::string_view b = std::string_view(line).substr(tab + 1);
    if (a.empty() || b.empty() || b.find('\t') != std::string_view::npos) {
      throw ParseError(std::string(source), lineno, "expected lemma<TAB>neighbor");
    }
    if (a == b) throw ParseError(std::string(source), lineno, "self-loop");
    builder.add_node(a, kAnyPos);
    builder.add_node(b, kAnyPos);
    builder.add_edge(a, b);
  }
  return builder.finalize();
}

CooccurrenceNetwork read_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open network " + path.string());
  return read_network(in, path.string());
}

}  // namespace superdiv
