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
#include <unordered_set>

#include "fixtures.hpp"
#include "lexnet/corpus.hpp"
#include "lexnet/data.hpp"
#include "lexnet/error.hpp"

using namespace lexnet;
using lexnet::testing::make_author;

TEST_CASE("name table sums duplicate rows") {
  const std::vector<NameRow> rows{{"emma", "F", "100"}, {"Emma", "F", "50"}};
  const auto t = build_name_table(rows);
  REQUIRE(t.lookup("emma"));
  CHECK(t.lookup("EMMA")->female == 150);
  CHECK(t.lookup("emma")->male == 0);
  CHECK(build_name_table({}).empty());
  const std::vector<NameRow> alex{{"alex", "F", "40000"}, {"alex", "M", "60000"}};
  const auto a = build_name_table(alex);
  CHECK(a.lookup("alex")->female == 40000);
  CHECK(a.lookup("alex")->male == 60000);
}

TEST_CASE("malformed name rows report their row") {
  const std::vector<NameRow> rows{{"emma", "F", "100"}, {"bob", "X", "5"}};
  try {
    build_name_table(rows, "names.csv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.file() == "names.csv");
  }
  const std::vector<NameRow> negative{{"bob", "M", "-5"}};
  CHECK_THROWS_AS(build_name_table(negative), ParseError);
}

TEST_CASE("name table file") {
  lexnet::testing::TempDir dir("names");
  const auto p = dir.write("n.csv", "name,sex,count\nemma,F,10\nemma,M,2\nbad,Q,1\n");
  try {
    read_name_table(p);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  const auto ok = read_name_table(dir.write("ok.csv", "emma,F,10\r\nemma,M,2\r\n"));
  CHECK(ok.lookup("emma")->total() == 12);
}

TEST_CASE("gender assignment") {
  NameGenderTable t;
  t.add("alex", Gender::female, 40000);
  t.add("alex", Gender::male, 60000);
  t.add("kai", Gender::female, 600);
  t.add("kai", Gender::male, 350);
  t.add("pat", Gender::female, 500);
  t.add("pat", Gender::male, 500);
  CHECK(assign_gender("alex", t, 1000) == Gender::male);
  CHECK(assign_gender("Alex", t, 1000) == Gender::male);
  CHECK(assign_gender("kai", t, 1000) == Gender::unknown);
  CHECK(assign_gender("pat", t, 1) == Gender::unknown);
  CHECK(assign_gender("zed", t, 1) == Gender::unknown);
}

TEST_CASE("ties never produce a gender") {
  NameGenderTable t;
  for (std::uint64_t c : {1u, 7u, 1000u, 123456u}) {
    const std::string name = "n" + std::to_string(c);
    t.add(name, Gender::female, c);
    t.add(name, Gender::male, c);
    CHECK(assign_gender(name, t, 1) == Gender::unknown);
  }
}

TEST_CASE("first name extraction") {
  CHECK(extract_first_name("Mary-Ann Smith") == "maryann");
  CHECK(extract_first_name("  Bob") == "bob");
  CHECK(extract_first_name("42") == "");
}

TEST_CASE("messages derive mentions from @ tokens") {
  const Tokenizer tok;
  const auto m = make_message("Ann", "Ann B", 0, "hi @Bob and @carl_1 bye", tok);
  CHECK(m.author_id == "ann");
  CHECK(m.mentions == std::vector<std::string>{"bob", "carl_1"});
}

TEST_CASE("jsonl reader") {
  lexnet::testing::TempDir dir("jsonl");
  const Tokenizer tok;
  const auto good = dir.write(
      "m.jsonl",
      R"({"author_id":"a","name":"Ann","timestamp":"2011-01-01T00:00:00Z","text":"hi @b"})"
      "\n\n"
      R"({"author_id":"b","name":"Bob","timestamp":"yesterday","text":"hey"})"
      "\n"
      R"({"author_id":"b","name":"Bob","timestamp":"2011-01-20T10:00:00+02:00","text":"yo @a"})"
      "\n");
  lexnet::testing::CaptureWarnings warnings;
  const auto msgs = read_messages_jsonl(good, tok);
  REQUIRE(msgs.size() == 2);
  CHECK(warnings.messages.size() == 1);
  CHECK(msgs[0].timestamp == 1293840000);
  CHECK(msgs[1].timestamp == 1293840000 + 19 * 86400 + 8 * 3600);
  CHECK(msgs[1].mentions == std::vector<std::string>{"a"});

  const auto bad_utf8 = dir.write("u.jsonl", std::string("{\"author_id\":\"a\"}\n{\"x\":\"\xff\"}\n"));
  try {
    read_messages_jsonl(bad_utf8, tok);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);  // decoding is checked before parsing
  }
  const auto bad_bytes = dir.write("v.jsonl", std::string(
      R"({"author_id":"a","name":"A","timestamp":"2011-01-01","text":"ok"})" "\n{\"x\":\"\xff\"}\n"));
  try {
    read_messages_jsonl(bad_bytes, tok);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("authors concatenate tokens in timestamp order") {
  const Tokenizer tok;
  NameGenderTable names;
  names.add("ann", Gender::female, 5000);
  std::vector<RawMessage> msgs{make_message("a", "Zed", 20, "later @b", tok),
                               make_message("a", "Ann X", 10, "first words", tok),
                               make_message("c", "Nobody", 5, "solo", tok)};
  const auto authors = build_authors(msgs, tok, names, 1000);
  REQUIRE(authors.size() == 2);
  CHECK(authors[0].author_id == "a");
  CHECK(authors[0].first_name == "ann");
  CHECK(authors[0].gender == Gender::female);
  CHECK(authors[0].tokens == std::vector<std::string>{"first", "words", "later"});
  CHECK(authors[0].message_count == 2);
  CHECK(authors[1].gender == Gender::unknown);
}

namespace {

// Star-free fixture: every author uses `common` plus extra words; graph
// degrees are set by explicit edges.
struct FilterFixture {
  std::vector<Author> authors;
  SocialGraph graph;
};

std::vector<std::string> words(std::size_t n, std::size_t offset = 0) {
  std::vector<std::string> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back("w" + std::to_string(offset + i));
  return w;
}

FilterFixture ring_fixture(std::size_t n, std::size_t degree_half) {
  FilterFixture f;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back("a" + std::to_string(100 + i));
    f.authors.push_back(make_author(ids.back(), i % 2 ? Gender::male : Gender::female, words(60)));
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 1; d <= degree_half; ++d) {
      const auto& a = ids[i];
      const auto& b = ids[(i + d) % n];
      edges.push_back({std::min(a, b), std::max(a, b), 0, 0});
    }
  }
  f.graph = SocialGraph(ids, edges);
  return f;
}

}  // namespace

TEST_CASE("filter removes low degree, unknown gender, and low english overlap") {
  auto f = ring_fixture(30, 2);  // every degree is 4
  f.authors[0].gender = Gender::unknown;
  f.authors[5].tokens = words(49);
  // author 10 loses an edge: replace graph with one missing (a110, a111).
  std::vector<Edge> edges;
  for (const auto& e : f.graph.edges()) {
    if (!(e.a == "a110" && e.b == "a111")) edges.push_back(e);
  }
  SocialGraph g(f.graph.nodes(), edges);
  FilterReport rep;
  CorpusFilterConfig cfg;
  cfg.english_top_n = 1000;
  const auto out = filter_corpus(f.authors, g, cfg, &rep);
  CHECK(out.find("a100") == nullptr);
  CHECK(out.find("a105") == nullptr);
  CHECK(out.find("a110") == nullptr);
  CHECK(out.find("a111") == nullptr);
  CHECK(rep.removed_unknown_gender == 1);
  CHECK(rep.removed_low_english == 1);
  CHECK(rep.removed_degree == 2);
  CHECK(rep.retained == out.size());
  for (const auto& a : out.authors()) CHECK(a.gender != Gender::unknown);
}

TEST_CASE("filter output is a subset, order invariant, and degree-consistent") {
  auto f = ring_fixture(40, 3);
  f.authors[3].gender = Gender::unknown;
  f.authors[17].gender = Gender::unknown;
  f.authors[18].gender = Gender::unknown;
  f.authors[19].gender = Gender::unknown;
  CorpusFilterConfig cfg;
  cfg.min_friends = 5;
  const auto a = filter_corpus(f.authors, f.graph, cfg);
  auto shuffled = f.authors;
  std::mt19937_64 rng(11);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto b = filter_corpus(shuffled, f.graph, cfg);
  REQUIRE(a.size() == b.size());
  std::unordered_set<std::string> input_ids, first_pass;
  for (const auto& x : f.authors) input_ids.insert(x.author_id);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].author_id == b[i].author_id);
    CHECK(input_ids.contains(a[i].author_id));
  }
  // Degree rule on the graph restricted to first-pass survivors.
  for (const auto& x : f.authors) {
    if (x.gender != Gender::unknown && f.graph.degree(x.author_id) >= 5) first_pass.insert(x.author_id);
  }
  const auto restricted = f.graph.induced(first_pass);
  for (const auto& x : a.authors()) {
    CHECK(restricted.degree(x.author_id) >= 5);
    CHECK(restricted.degree(x.author_id) <= 100);
  }
}

TEST_CASE("filter that removes everyone raises empty corpus") {
  auto f = ring_fixture(10, 1);  // degree 2 everywhere
  CHECK_THROWS_AS(filter_corpus(f.authors, f.graph, CorpusFilterConfig{}), EmptyCorpusError);
}

TEST_CASE("filter config validation") {
  CorpusFilterConfig cfg;
  cfg.english_min_overlap = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.english_min_overlap = 2000;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.min_friends = 10;
  cfg.max_friends = 5;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("corpus rejects duplicate ids") {
  std::vector<Author> a{make_author("x", Gender::male, {"a"}), make_author("x", Gender::female, {"b"})};
  CHECK_THROWS_AS(Corpus{a}, InvalidArgument);
}
