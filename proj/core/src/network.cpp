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

#include "lexnet/network.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

#include "lexnet/error.hpp"
#include "lexnet/io.hpp"
#include "lexnet/stats.hpp"

namespace lexnet {

SocialGraph::SocialGraph(std::vector<std::string> nodes, std::vector<Edge> edges) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  nodes_ = std::move(nodes);
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], i);
  adjacency_.resize(nodes_.size());

  for (auto& e : edges) {
    if (e.a == e.b) throw InvalidArgument("self-edge on " + e.a);
    if (e.b < e.a) {
      std::swap(e.a, e.b);
      std::swap(e.forward_mention, e.reverse_mention);
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& x, const Edge& y) { return x.a == y.a && x.b == y.b; }),
              edges.end());
  for (const auto& e : edges) {
    const auto ia = index_of(e.a);
    const auto ib = index_of(e.b);
    if (!ia || !ib) throw InvalidArgument("edge endpoint is not a node: " + e.a + "," + e.b);
    adjacency_[*ia].push_back(*ib);
    adjacency_[*ib].push_back(*ia);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  edges_ = std::move(edges);
}

std::optional<std::size_t> SocialGraph::index_of(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> SocialGraph::neighbor_ids(std::string_view id) const {
  std::vector<std::string> out;
  if (const auto i = index_of(id)) {
    for (std::size_t j : adjacency_[*i]) out.push_back(nodes_[j]);
  }
  return out;
}

std::size_t SocialGraph::degree(std::string_view id) const {
  const auto i = index_of(id);
  return i ? adjacency_[*i].size() : 0;
}

bool SocialGraph::has_edge(std::string_view a, std::string_view b) const {
  const auto ia = index_of(a);
  const auto ib = index_of(b);
  if (!ia || !ib) return false;
  const auto& adj = adjacency_[*ia];
  return std::binary_search(adj.begin(), adj.end(), *ib);
}

SocialGraph SocialGraph::induced(const std::unordered_set<std::string>& keep) const {
  std::vector<std::string> nodes;
  for (const auto& n : nodes_) {
    if (keep.count(n)) nodes.push_back(n);
  }
  std::vector<Edge> edges;
  for (const auto& e : edges_) {
    if (keep.count(e.a) && keep.count(e.b)) edges.push_back(e);
  }
  SocialGraph g(std::move(nodes), std::move(edges));
  for (const auto& [key, rec] : mentions_) {
    if (keep.count(key.first) && keep.count(key.second)) g.mentions_.emplace(key, rec);
  }
  return g;
}

SocialGraph build_mention_graph(std::span<const RawMessage> messages, Timestamp min_separation) {
  std::vector<std::string> authors;
  std::map<std::pair<std::string, std::string>, DirectedMentions> directed;
  for (const auto& msg : messages) {
    authors.push_back(msg.author_id);
    for (const auto& target : msg.mentions) {
      if (target == msg.author_id) continue;
      auto [it, fresh] = directed.try_emplace({msg.author_id, target});
      auto& rec = it->second;
      if (fresh) {
        rec.first = rec.last = msg.timestamp;
      } else {
        rec.first = std::min(rec.first, msg.timestamp);
        rec.last = std::max(rec.last, msg.timestamp);
      }
      ++rec.count;
    }
  }

  std::vector<Edge> edges;
  for (const auto& [key, ab] : directed) {
    const auto& [a, b] = key;
    if (!(a < b)) continue;
    const auto rev = directed.find({b, a});
    if (rev == directed.end()) continue;
    const auto& ba = rev->second;
    // The widest cross-direction gap is attained at an extreme of each side.
    const Timestamp gap_late_reply = ba.last - ab.first;
    const Timestamp gap_early_reply = ab.last - ba.first;
    if (std::max(gap_late_reply, gap_early_reply) < min_separation) continue;
    if (gap_late_reply >= gap_early_reply) {
      edges.push_back({a, b, ab.first, ba.last});
    } else {
      edges.push_back({a, b, ab.last, ba.first});
    }
  }

  SocialGraph g(std::move(authors), std::move(edges));
  g.mentions_ = std::move(directed);
  return g;
}

double NetworkComposition::female_share() const {
  return friends ? static_cast<double>(female) / static_cast<double>(friends) : 0.0;
}

double NetworkComposition::male_share() const {
  return friends ? static_cast<double>(male) / static_cast<double>(friends) : 0.0;
}

NetworkComposition network_composition(std::string_view author, const SocialGraph& graph,
                                       const GenderMap& genders) {
  const auto idx = graph.index_of(author);
  if (!idx) throw InvalidArgument("author not in graph: " + std::string(author));
  NetworkComposition c;
  for (std::size_t j : graph.neighbors(*idx)) {
    const auto it = genders.find(graph.nodes()[j]);
    if (it == genders.end()) continue;
    if (it->second == Gender::female) {
      ++c.female;
    } else if (it->second == Gender::male) {
      ++c.male;
    }
  }
  c.friends = c.female + c.male;
  if (c.friends == 0) {
    throw InvalidArgument("author has no gendered friends: " + std::string(author));
  }
  return c;
}

double skew_p_value(std::size_t same, std::size_t total) {
  if (total == 0) throw InvalidArgument("skew test needs at least one friend");
  if (same > total) throw InvalidArgument("skew test: same-gender count exceeds total");
  return stats::binomial_tail(static_cast<long>(same), static_cast<long>(total), 0.5);
}

bool skew_test(std::size_t same, std::size_t total, double significance) {
  return skew_p_value(same, total) < significance;
}

std::vector<HomophilyStats> homophily_stats(const SocialGraph& graph, const GenderMap& genders,
                                            double significance) {
  std::vector<HomophilyStats> out;
  for (const auto& id : graph.nodes()) {
    const auto g = genders.find(id);
    if (g == genders.end() || g->second == Gender::unknown) continue;
    NetworkComposition comp;
    try {
      comp = network_composition(id, graph, genders);
    } catch (const InvalidArgument&) {
      continue;
    }
    HomophilyStats s;
    s.author_id = id;
    s.gender = g->second;
    s.friends = comp.friends;
    s.same_gender = comp.count(g->second);
    s.same_gender_proportion =
        static_cast<double>(s.same_gender) / static_cast<double>(s.friends);
    s.skewed_same = skew_test(s.same_gender, s.friends, significance);
    s.skewed_other = skew_test(s.friends - s.same_gender, s.friends, significance);
    out.push_back(std::move(s));
  }
  return out;
}

double edge_homophily_rate(const SocialGraph& graph, const GenderMap& genders) {
  std::size_t same = 0, total = 0;
  auto gender_of = [&](const std::string& id) {
    const auto it = genders.find(id);
    return it == genders.end() ? Gender::unknown : it->second;
  };
  for (const auto& e : graph.edges()) {
    const Gender ga = gender_of(e.a);
    const Gender gb = gender_of(e.b);
    if (ga == Gender::unknown || gb == Gender::unknown) continue;
    ++total;
    if (ga == gb) ++same;
  }
  if (total == 0) throw InvalidArgument("no edges between gendered authors");
  return static_cast<double>(same) / static_cast<double>(total);
}

void write_edge_csv(std::ostream& out, const SocialGraph& graph) {
  out << "author_a,author_b,first_mention_ts,reverse_mention_ts\n";
  for (const auto& e : graph.edges()) {
    io::write_csv_row(out, {e.a, e.b, format_iso8601(e.forward_mention),
                            format_iso8601(e.reverse_mention)});
  }
}

std::vector<Edge> read_edge_csv(const std::filesystem::path& path) {
  const auto lines = io::read_utf8_lines(path);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty() || (i == 0 && lines[i].rfind("author_a,", 0) == 0)) continue;
    std::vector<std::string> f;
    try {
      f = io::csv_split(lines[i]);
    } catch (const InvalidArgument& e) {
      throw ParseError(path.string(), i + 1, e.what());
    }
    if (f.size() != 4) throw ParseError(path.string(), i + 1, "expected 4 fields");
    const auto t1 = parse_iso8601(f[2]);
    const auto t2 = parse_iso8601(f[3]);
    if (!t1 || !t2) throw ParseError(path.string(), i + 1, "bad timestamp");
    edges.push_back({f[0], f[1], *t1, *t2});
  }
  return edges;
}

}  // namespace lexnet
