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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "superdiv/corpus.hpp"
#include "superdiv/lexicon.hpp"

namespace superdiv {

using NodeId = std::uint32_t;

// Bit set over PartOfSpeech values observed for a lemma.
using PosMask = std::uint8_t;
inline constexpr PosMask kAnyPos = 0x0f;

constexpr PosMask pos_bit(PartOfSpeech pos) {
  return static_cast<PosMask>(1u << static_cast<unsigned>(pos));
}

// Unweighted, undirected lemma co-occurrence graph without self-loops.
// Node ids follow the lexicographic order of the lemmas and every neighbour
// list is sorted, so two networks with the same edge set compare equal and
// iterate identically. Immutable once built.
class CooccurrenceNetwork {
 public:
  CooccurrenceNetwork() = default;

  std::size_t node_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  const std::string& name(NodeId id) const { return names_[id]; }
  std::span<const std::string> names() const noexcept { return names_; }
  std::optional<NodeId> find(std::string_view lemma) const;

  std::span<const NodeId> neighbors(NodeId id) const {
    return {adjacency_.data() + offsets_[id],
            adjacency_.data() + offsets_[id + 1]};
  }
  std::size_t degree(NodeId id) const {
    return offsets_[id + 1] - offsets_[id];
  }
  bool has_edge(NodeId a, NodeId b) const;
  bool has_edge(std::string_view a, std::string_view b) const;

  // Parts of speech the lemma was seen with; kAnyPos for loaded networks.
  PosMask pos_mask(NodeId id) const { return pos_masks_[id]; }

  // Symmetric, sorted, self-loop free. Throws InvariantError otherwise.
  void check_invariants() const;

  // Topology equality; POS masks are not compared.
  friend bool operator==(const CooccurrenceNetwork& a,
                         const CooccurrenceNetwork& b) {
    return a.names_ == b.names_ && a.offsets_ == b.offsets_ &&
           a.adjacency_ == b.adjacency_;
  }

 private:
  friend class NetworkBuilder;

  std::vector<std::string> names_;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<NodeId> adjacency_;
  std::vector<PosMask> pos_masks_;
};

// Accumulates nodes and edges; finalize() produces the immutable network.
// Adding never removes anything, so construction is monotone.
class NetworkBuilder {
 public:
  NodeId add_node(std::string_view lemma, PosMask pos = 0);
  void add_edge(std::string_view a, std::string_view b);
  // Adds a clique over the distinct lemmas of one tweet.
  void add_tweet(std::span<const Lemma> lemmas);
  void merge(const NetworkBuilder& other);

  std::size_t node_count() const noexcept { return names_.size(); }

  CooccurrenceNetwork finalize() const;

 private:
  void add_edge_ids(NodeId a, NodeId b);
  void compact();

  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::string> names_;
  std::vector<PosMask> masks_;
  // Packed (min << 32 | max) pairs; may hold duplicates until compact().
  std::vector<std::uint64_t> edges_;
  std::size_t compacted_size_ = 0;
};

// Network over all non-negated tweets. `jobs` > 1 splits the tweets into
// chunks built on separate threads and merged.
CooccurrenceNetwork build_network(const Corpus& corpus, unsigned jobs = 1);

// `a<TAB>b` per edge with a < b, then one line per isolated node; both
// blocks sorted. Byte-identical for equal networks.
void write_network(std::ostream& out, const CooccurrenceNetwork& network);
void write_network(const std::filesystem::path& path,
                   const CooccurrenceNetwork& network);
CooccurrenceNetwork read_network(std::istream& in,
                                 std::string_view source = "<stream>");
CooccurrenceNetwork read_network(const std::filesystem::path& path);

}  // namespace superdiv
