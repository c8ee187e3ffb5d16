// Copyright 2026 The lexnet Authors
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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lexnet/timeutil.hpp"
#include "lexnet/types.hpp"

namespace lexnet {

// Mentions from one author to another.
struct DirectedMentions {
  std::size_t count = 0;
  Timestamp first = 0;
  Timestamp last = 0;
};

// Undirected edge with a < b. The timestamps are the qualifying pair of
// cross-direction mentions (a->b and b->a) with the widest separation.
struct Edge {
  std::string a;
  std::string b;
  Timestamp forward_mention = 0;
  Timestamp reverse_mention = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class SocialGraph {
 public:
  SocialGraph() = default;

  // Nodes are deduplicated and sorted; edge endpoints must be nodes and
  // self-edges are rejected.
  SocialGraph(std::vector<std::string> nodes, std::vector<Edge> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<std::size_t> index_of(std::string_view id) const;
  bool contains(std::string_view id) const { return index_of(id).has_value(); }

  std::span<const std::size_t> neighbors(std::size_t node) const { return adjacency_[node]; }
  std::vector<std::string> neighbor_ids(std::string_view id) const;
  // 0 for ids not in the graph.
  std::size_t degree(std::string_view id) const;
  bool has_edge(std::string_view a, std::string_view b) const;

  // Subgraph on the given ids (ids absent from the graph are ignored).
  SocialGraph induced(const std::unordered_set<std::string>& keep) const;

  // Directed mention records observed while building (empty for graphs
  // built from an edge list).
  const std::map<std::pair<std::string, std::string>, DirectedMentions>& mentions() const {
    return mentions_;
  }

 private:
  friend SocialGraph build_mention_graph(std::span<const RawMessage>, Timestamp);

  std::vector<std::string> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Edge> edges_;
  std::map<std::pair<std::string, std::string>, DirectedMentions> mentions_;
};

inline constexpr Timestamp kMutualMentionSeparation = 14 * kSecondsPerDay;

// Every message author becomes a node. (a, b) is an edge iff there is a
// mention a->b at t1 and b->a at t2 with |t2 - t1| >= min_separation.
// Self-mentions are ignored. Independent of message order.
SocialGraph build_mention_graph(std::span<const RawMessage> messages,
                                Timestamp min_separation = kMutualMentionSeparation);

using GenderMap = std::unordered_map<std::string, Gender>;

struct NetworkComposition {
  std::size_t friends = 0;  // neighbours with known gender
  std::size_t female = 0;
  std::size_t male = 0;

  double female_share() const;
  double male_share() const;
  std::size_t count(Gender g) const { return g == Gender::female ? female : male; }
};

// Gender counts over the author's neighbours; unknown-gender neighbours are
// left out of every count. Throws InvalidArgument when the author is not
// in the graph or has no gendered friends.
NetworkComposition network_composition(std::string_view author, const SocialGraph& graph,
                                       const GenderMap& genders);

// Upper tail Pr(Y >= same) for Y ~ Binomial(total, 0.5).
double skew_p_value(std::size_t same, std::size_t total);

// True iff skew_p_value(same, total) < significance. Skew toward the other
// gender is the same test on (total - same, total).
bool skew_test(std::size_t same, std::size_t total, double significance = 0.05);

struct HomophilyStats {
  std::string author_id;
  Gender gender = Gender::unknown;
  std::size_t friends = 0;      // M_n
  std::size_t same_gender = 0;  // l_n
  double same_gender_proportion = 0.0;
  bool skewed_same = false;   // significantly toward own gender
  bool skewed_other = false;  // significantly toward the other gender
};

// One row per gendered node with at least one gendered friend, in node order.
std::vector<HomophilyStats> homophily_stats(const SocialGraph& graph, const GenderMap& genders,
                                            double significance = 0.05);

// Same-gender edges over edges whose endpoints are both gendered. Throws
// InvalidArgument when no edge qualifies.
double edge_homophily_rate(const SocialGraph& graph, const GenderMap& genders);

// CSV "author_a,author_b,first_mention_ts,reverse_mention_ts" (ISO-8601).
void write_edge_csv(std::ostream& out, const SocialGraph& graph);
std::vector<Edge> read_edge_csv(const std::filesystem::path& path);

}  // namespace lexnet
