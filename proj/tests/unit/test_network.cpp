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

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "lexnet/error.hpp"
#include "lexnet/network.hpp"
#include "oracles.hpp"

using namespace lexnet;

namespace {

constexpr Timestamp kDay = kSecondsPerDay;

RawMessage mention(std::string from, std::string to, Timestamp t) {
  return RawMessage{from, from, t, "@" + to, {to}};
}

GenderMap genders(std::initializer_list<std::pair<const char*, Gender>> list) {
  GenderMap m;
  for (auto [id, g] : list) m[id] = g;
  return m;
}

SocialGraph graph_of(std::vector<std::string> nodes, std::vector<std::pair<std::string, std::string>> e) {
  std::vector<Edge> edges;
  for (auto& [a, b] : e) edges.push_back({std::min(a, b), std::max(a, b), 0, 0});
  return SocialGraph(std::move(nodes), std::move(edges));
}

}  // namespace

TEST_CASE("mutual mentions two weeks apart form an edge") {
  const std::vector<RawMessage> yes{mention("a", "b", 0), mention("b", "a", 15 * kDay)};
  const std::vector<RawMessage> no{mention("a", "b", 0), mention("b", "a", 10 * kDay)};
  const std::vector<RawMessage> one_way{mention("a", "b", 0), mention("a", "b", 20 * kDay)};
  const std::vector<RawMessage> exact{mention("a", "b", 0), mention("b", "a", 14 * kDay)};
  CHECK(build_mention_graph(yes).has_edge("a", "b"));
  CHECK_FALSE(build_mention_graph(no).has_edge("a", "b"));
  CHECK_FALSE(build_mention_graph(one_way).has_edge("a", "b"));
  CHECK(build_mention_graph(exact).has_edge("b", "a"));
}

TEST_CASE("any qualifying cross-direction pair suffices") {
  const std::vector<RawMessage> msgs{mention("b", "a", 5 * kDay), mention("a", "b", 0),
                                     mention("a", "b", 30 * kDay)};
  const auto g = build_mention_graph(msgs);
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edges()[0].a == "a");
  CHECK(std::abs(g.edges()[0].reverse_mention - g.edges()[0].forward_mention) >= 14 * kDay);
}

TEST_CASE("self mentions are ignored and the graph is symmetric and order invariant") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> who(0, 14);
  std::uniform_int_distribution<Timestamp> when(0, 90 * kDay);
  std::vector<RawMessage> msgs;
  for (int i = 0; i < 400; ++i) {
    msgs.push_back(mention("u" + std::to_string(who(rng)), "u" + std::to_string(who(rng)), when(rng)));
  }
  const auto g = build_mention_graph(msgs);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    for (auto m : g.neighbors(n)) {
      CHECK(m != n);
      const auto back = g.neighbors(m);
      CHECK(std::find(back.begin(), back.end(), n) != back.end());
    }
  }
  std::shuffle(msgs.begin(), msgs.end(), rng);
  const auto h = build_mention_graph(msgs);
  CHECK(g.edges() == h.edges());
}

TEST_CASE("network composition") {
  const auto g = graph_of({"n", "f1", "f2", "m1", "x"},
                          {{"n", "f1"}, {"n", "f2"}, {"n", "m1"}, {"n", "x"}});
  const auto gm = genders({{"n", Gender::male}, {"f1", Gender::female}, {"f2", Gender::female},
                           {"m1", Gender::male}, {"x", Gender::unknown}});
  const auto c = network_composition("n", g, gm);
  CHECK(c.friends == 3);
  CHECK(c.female == 2);
  CHECK(c.male == 1);
  CHECK_THROWS_AS(network_composition("nobody", g, gm), InvalidArgument);
  CHECK_THROWS_AS(network_composition("x", g, genders({})), InvalidArgument);
}

TEST_CASE("skew test matches exact summation") {
  CHECK(skew_p_value(10, 10) == doctest::Approx(std::ldexp(1.0, -10)));
  CHECK(skew_test(10, 10));
  CHECK(skew_p_value(4, 4) == doctest::Approx(0.0625));
  CHECK_FALSE(skew_test(4, 4));
  CHECK(skew_p_value(5, 10) == doctest::Approx(638.0 / 1024.0));
  CHECK_FALSE(skew_test(5, 10));
  CHECK_THROWS_AS(skew_test(0, 0), InvalidArgument);
  for (long M = 1; M <= 60; ++M) {
    for (long l = 0; l <= M; ++l) {
      CHECK(skew_test(static_cast<std::size_t>(l), static_cast<std::size_t>(M)) == lexnet::testing::skewed_exact(l, M));
      if (l < M && skew_test(static_cast<std::size_t>(l), static_cast<std::size_t>(M))) {
        CHECK(skew_test(static_cast<std::size_t>(l + 1), static_cast<std::size_t>(M)));
      }
    }
  }
}

TEST_CASE("edge homophily rate") {
  const auto clique = graph_of({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  CHECK(edge_homophily_rate(clique, genders({{"a", Gender::female}, {"b", Gender::female},
                                             {"c", Gender::female}})) == 1.0);
  CHECK(edge_homophily_rate(clique, genders({{"a", Gender::female}, {"b", Gender::female},
                                             {"c", Gender::male}})) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(edge_homophily_rate(clique, genders({})), InvalidArgument);
}

TEST_CASE("edge homophily equals pooled per-author same-gender share") {
  std::mt19937_64 rng(4);
  std::vector<std::string> nodes;
  GenderMap gm;
  for (int i = 0; i < 40; ++i) {
    nodes.push_back("n" + std::to_string(i));
    gm[nodes.back()] = (rng() % 3 == 0) ? Gender::female : (rng() % 5 == 0 ? Gender::unknown : Gender::male);
  }
  std::vector<std::pair<std::string, std::string>> e;
  for (int i = 0; i < 40; ++i) {
    for (int j = i + 1; j < 40; ++j) {
      if (rng() % 6 == 0) e.emplace_back(nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]);
    }
  }
  const auto g = graph_of(nodes, e);
  double same = 0, total = 0;
  for (const auto& h : homophily_stats(g, gm)) {
    CHECK(h.same_gender <= h.friends);
    CHECK(h.same_gender_proportion == doctest::Approx(double(h.same_gender) / double(h.friends)));
    CHECK(h.skewed_same == skew_test(h.same_gender, h.friends));
    CHECK(h.skewed_other == skew_test(h.friends - h.same_gender, h.friends));
    same += static_cast<double>(h.same_gender);
    total += static_cast<double>(h.friends);
  }
  CHECK(edge_homophily_rate(g, gm) == doctest::Approx(same / total).epsilon(1e-12));
}

TEST_CASE("edge csv round trip") {
  const std::vector<RawMessage> msgs{mention("a", "b", 0), mention("b", "a", 15 * kDay),
                                     mention("c", "b", 0), mention("b", "c", 40 * kDay)};
  const auto g = build_mention_graph(msgs);
  std::ostringstream out;
  write_edge_csv(out, g);
  CHECK(out.str().rfind("author_a,author_b,first_mention_ts,reverse_mention_ts\n", 0) == 0);
  lexnet::testing::TempDir dir("edges");
  const auto back = read_edge_csv(dir.write("e.csv", out.str()));
  CHECK(back == g.edges());
}

TEST_CASE("graph rejects self edges and unknown endpoints") {
  CHECK_THROWS_AS(graph_of({"a"}, {{"a", "a"}}), InvalidArgument);
  CHECK_THROWS_AS(graph_of({"a"}, {{"a", "b"}}), InvalidArgument);
}
