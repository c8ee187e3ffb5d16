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
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "lexnet/error.hpp"
#include "lexnet/markers.hpp"
#include "lexnet/stats.hpp"

using namespace lexnet;
using lexnet::testing::make_author;

namespace {

// Two equal groups; term t<i> is used by fem[i] women and mal[i] men.
TermCounts counts_from(const std::vector<std::string>& terms, const std::vector<std::uint64_t>& fem,
                       const std::vector<std::uint64_t>& mal, std::uint64_t group_size) {
  TermCounts c;
  c.terms = terms;
  c.n = 2 * group_size;
  c.groups = {"female", "male"};
  c.group_size = {group_size, group_size};
  c.k_group = {fem, mal};
  for (std::size_t i = 0; i < terms.size(); ++i) c.k.push_back(fem[i] + mal[i]);
  return c;
}

TermCounts random_counts(std::size_t V, std::uint64_t group_size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> terms;
  std::vector<std::uint64_t> fem, mal;
  for (std::size_t i = 0; i < V; ++i) {
    terms.push_back("t" + std::to_string(i));
    const double base = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
    const double skew = (i % 4 == 0) ? 1.8 : (i % 4 == 1 ? 0.55 : 1.0);
    std::binomial_distribution<std::uint64_t> f(group_size, std::min(0.95, base * skew));
    std::binomial_distribution<std::uint64_t> m(group_size, base);
    fem.push_back(f(rng));
    mal.push_back(m(rng));
  }
  return counts_from(terms, fem, mal, group_size);
}

}  // namespace

TEST_CASE("term usage counts authors, not tokens") {
  std::vector<Author> authors{make_author("a", Gender::female, {"x", "x", "y"}),
                              make_author("b", Gender::male, {"x"}),
                              make_author("c", Gender::unknown, {"y"})};
  const Corpus corpus(authors);
  const Vocabulary v({"x", "y", "z"}, {2, 2, 0});
  const auto c = count_term_usage(corpus, v);
  CHECK(c.n == 3);
  CHECK(c.k == std::vector<std::uint64_t>{2, 2, 0});
  CHECK(c.group_size == std::vector<std::uint64_t>{1, 1});
  CHECK(c.k_group[0] == std::vector<std::uint64_t>{1, 1, 0});
  CHECK(c.k_group[1] == std::vector<std::uint64_t>{1, 0, 0});
  c.validate();
}

TEST_CASE("inconsistent counts are rejected") {
  auto c = counts_from({"a"}, {5}, {1}, 4);
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("bonferroni threshold and p-values") {
  const auto c = random_counts(10, 200, 1);
  MarkerConfig cfg;
  const auto t = find_markers(c, 0, cfg);
  CHECK(t.tests == 20);
  CHECK(t.threshold == doctest::Approx(0.0025));
  for (const auto& r : t.rows) {
    const auto i = static_cast<std::size_t>(std::find(c.terms.begin(), c.terms.end(), r.term) - c.terms.begin());
    const double p = stats::beta_binomial_tail(static_cast<long>(c.k_group[0][i]), 200,
                                               static_cast<double>(c.k[i]),
                                               static_cast<double>(c.n - c.k[i]));
    CHECK(r.p_value == doctest::Approx(p).epsilon(1e-9));
    CHECK(r.p_value < t.threshold);
    CHECK(r.n_total == 400);
  }
}

TEST_CASE("corrected markers are a subset of uncorrected ones and rows are sorted") {
  const auto c = random_counts(300, 150, 2);
  MarkerConfig strict, loose;
  loose.bonferroni = false;
  for (std::size_t g = 0; g < 2; ++g) {
    const auto a = find_markers(c, g, strict);
    const auto b = find_markers(c, g, loose);
    const auto bt = b.terms();
    const std::set<std::string> loose_set(bt.begin(), bt.end());
    CHECK(a.rows.size() <= b.rows.size());
    for (const auto& r : a.rows) CHECK(loose_set.contains(r.term));
    for (std::size_t i = 1; i < b.rows.size(); ++i) CHECK(b.rows[i - 1].log_p <= b.rows[i].log_p);
  }
}

TEST_CASE("top-k cut keeps the smallest p-values") {
  const auto c = random_counts(300, 300, 3);
  MarkerConfig cfg;
  const auto all = find_markers(c, 0, cfg);
  cfg.top_k = 5;
  const auto top = find_markers(c, 0, cfg);
  REQUIRE(all.rows.size() > 5);
  CHECK(top.rows.size() == 5);
  CHECK(top.significant == all.rows.size());
  for (std::size_t i = 0; i < 5; ++i) CHECK(top.rows[i].term == all.rows[i].term);
}

TEST_CASE("degenerate terms are skipped") {
  const auto c = counts_from({"none", "all", "some"}, {0, 50, 50}, {0, 50, 0}, 50);
  MarkerConfig cfg;
  cfg.bonferroni = false;
  const auto t = find_markers(c, 0, cfg);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].term == "some");
}

TEST_CASE("swapping equal groups swaps marker tables") {
  const auto c = random_counts(200, 250, 4);
  auto swapped = c;
  std::swap(swapped.k_group[0], swapped.k_group[1]);
  MarkerConfig cfg;
  const auto f = find_markers(c, 0, cfg), m = find_markers(c, 1, cfg);
  const auto f2 = find_markers(swapped, 1, cfg), m2 = find_markers(swapped, 0, cfg);
  CHECK(f.terms() == f2.terms());
  CHECK(m.terms() == m2.terms());
}

TEST_CASE("marker table is invariant to term enumeration order") {
  const auto c = random_counts(150, 200, 5);
  std::vector<std::size_t> perm(c.terms.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(8);
  std::shuffle(perm.begin(), perm.end(), rng);
  TermCounts p = c;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    p.terms[i] = c.terms[perm[i]];
    p.k[i] = c.k[perm[i]];
    p.k_group[0][i] = c.k_group[0][perm[i]];
    p.k_group[1][i] = c.k_group[1][perm[i]];
  }
  CHECK(find_markers(c, 0, MarkerConfig{}).terms() == find_markers(p, 0, MarkerConfig{}).terms());
}

TEST_CASE("same-gender marker proportion") {
  const std::vector<std::string> female{"cute", "omg"}, male{"bro", "dude"};
  const GenderMarkers markers(female, male);
  auto man = make_author("m", Gender::male, {"bro", "bro", "dude", "cute", "plain"});
  CHECK(same_gender_marker_proportion(man, markers).value() == doctest::Approx(0.75));
  auto woman = make_author("w", Gender::female, {"cute", "omg", "cute"});
  CHECK(same_gender_marker_proportion(woman, markers).value() == 1.0);
  auto quiet = make_author("q", Gender::female, {"plain"});
  CHECK_FALSE(same_gender_marker_proportion(quiet, markers).has_value());
  const std::vector<std::string> overlap{"bro"};
  CHECK_THROWS_AS(GenderMarkers(overlap, male), InvalidArgument);
}
