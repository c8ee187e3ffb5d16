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

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fixtures.hpp"
#include "lexnet/corpus.hpp"
#include "lexnet/error.hpp"
#include "lexnet/network.hpp"
#include "lexnet/synth.hpp"
#include "lexnet/tokenizer.hpp"

using namespace lexnet;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SynthConfig small(std::uint64_t seed) {
  SynthConfig cfg;
  cfg.n_authors = 300;
  cfg.tokens_per_author = 60;
  cfg.messages_per_author = 4;
  cfg.vocab_size = 800;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("pseudo-words are distinct and pronounceable") {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < 20000; ++i) {
    const auto w = synth_word(i);
    CHECK_FALSE(w.empty());
    CHECK(seen.insert(w).second);
  }
  CHECK(synth_word(0).find_first_of("aeiou") != std::string::npos);
}

TEST_CASE("same seed gives byte-identical files") {
  const auto a = generate_synthetic_corpus(small(4));
  const auto b = generate_synthetic_corpus(small(4));
  const auto c = generate_synthetic_corpus(small(5));
  lexnet::testing::TempDir da("synth-a"), db("synth-b");
  write_synthetic_corpus(a, da.path());
  write_synthetic_corpus(b, db.path());
  for (const char* f : {"messages.jsonl", "names.csv", "ground_truth.json"}) {
    CHECK(slurp(da.path() / f) == slurp(db.path() / f));
  }
  CHECK(a.truth.edges != c.truth.edges);
}

TEST_CASE("ingesting the files reconstructs the ground truth") {
  auto cfg = small(6);
  cfg.rho = 0.5;
  const auto synth = generate_synthetic_corpus(cfg);
  lexnet::testing::TempDir dir("synth-rt");
  write_synthetic_corpus(synth, dir.path());

  const Tokenizer tokenizer;
  const auto messages = read_messages_jsonl(dir.path() / "messages.jsonl", tokenizer);
  const auto names = read_name_table(dir.path() / "names.csv");
  const auto authors = build_authors(messages, tokenizer, names, 1000);
  REQUIRE(authors.size() == cfg.n_authors);
  std::unordered_map<std::string, Gender> truth;
  for (std::size_t i = 0; i < synth.truth.author_ids.size(); ++i) {
    truth[synth.truth.author_ids[i]] = synth.truth.genders[i];
  }
  for (const auto& a : authors) {
    REQUIRE(truth.contains(a.author_id));
    CHECK(a.gender == truth[a.author_id]);
    CHECK(a.tokens.size() == cfg.tokens_per_author);
  }

  const auto graph = build_mention_graph(messages);
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : graph.edges()) edges.emplace_back(e.a, e.b);
  std::sort(edges.begin(), edges.end());
  CHECK(edges == synth.truth.edges);
}

TEST_CASE("degrees respect the bounds") {
  auto cfg = small(7);
  cfg.rho = 0.8;
  const auto synth = generate_synthetic_corpus(cfg);
  std::unordered_map<std::string, std::size_t> degree;
  std::set<std::pair<std::string, std::string>> unique;
  for (const auto& [a, b] : synth.truth.edges) {
    CHECK(a < b);
    CHECK(unique.insert({a, b}).second);
    ++degree[a];
    ++degree[b];
  }
  for (const auto& id : synth.truth.author_ids) {
    CHECK(degree[id] >= 4);
    CHECK(degree[id] <= 100);
  }
}

TEST_CASE("infeasible degree constraints are rejected") {
  auto cfg = small(8);
  cfg.n_authors = 4;
  CHECK_THROWS_AS(generate_synthetic_corpus(cfg), InvalidArgument);
  cfg = small(8);
  cfg.rho = 1.5;
  CHECK_THROWS_AS(generate_synthetic_corpus(cfg), InvalidArgument);
  cfg = small(8);
  cfg.marker_strength = 0.5;
  CHECK_THROWS_AS(generate_synthetic_corpus(cfg), InvalidArgument);
}

TEST_CASE("planted markers are used at the configured odds") {
  SynthConfig cfg;
  cfg.marker_strength = 3.0;
  cfg.markers_per_gender = 50;
  cfg.seed = 21;
  const auto synth = generate_synthetic_corpus(cfg);
  const std::unordered_set<std::string> fm(synth.truth.female_markers.begin(),
                                           synth.truth.female_markers.end());
  std::unordered_map<std::string, Gender> gender;
  for (std::size_t i = 0; i < synth.truth.author_ids.size(); ++i) {
    gender[synth.truth.author_ids[i]] = synth.truth.genders[i];
  }
  double used[2] = {0, 0}, total[2] = {0, 0};
  for (const auto& m : synth.messages) {
    if (m.text.starts_with("@")) continue;
    const int g = gender[m.author_id] == Gender::female ? 0 : 1;
    for (const auto& tok : lexnet::testing::split(m.text)) {
      total[g] += 1;
      if (fm.contains(tok)) used[g] += 1;
    }
  }
  const double female_rate = used[0] / total[0];
  const double male_rate = used[1] / total[1];
  CHECK(female_rate / male_rate == doctest::Approx(3.0).epsilon(0.2));
}

TEST_CASE("without coupling the edge homophily matches random pairing") {
  SynthConfig cfg;
  cfg.rho = 0.0;
  cfg.tokens_per_author = 10;
  cfg.messages_per_author = 1;
  cfg.vocab_size = 200;
  cfg.seed = 33;
  const auto synth = generate_synthetic_corpus(cfg);
  std::unordered_map<std::string, Gender> gender;
  for (std::size_t i = 0; i < synth.truth.author_ids.size(); ++i) {
    gender[synth.truth.author_ids[i]] = synth.truth.genders[i];
  }
  double female_stubs = 0, stubs = 0, same = 0;
  for (const auto& [a, b] : synth.truth.edges) {
    for (const auto* id : {&a, &b}) {
      stubs += 1;
      if (gender[*id] == Gender::female) female_stubs += 1;
    }
    if (gender[a] == gender[b]) same += 1;
  }
  const double f = female_stubs / stubs;
  const double p = f * f + (1 - f) * (1 - f);
  const double E = static_cast<double>(synth.truth.edges.size());
  const double sigma = std::sqrt(p * (1 - p) / E);
  CHECK(std::abs(same / E - p) <= 3 * sigma);

  cfg.rho = 0.9;
  const auto homophilous = generate_synthetic_corpus(cfg);
  double same_h = 0;
  for (const auto& [a, b] : homophilous.truth.edges) same_h += gender[a] == gender[b];
  CHECK(same_h / static_cast<double>(homophilous.truth.edges.size()) > p + 10 * sigma);
}

TEST_CASE("planted clusters follow the gender skew") {
  SynthConfig cfg = small(40);
  cfg.n_authors = 2000;
  cfg.n_clusters = 4;
  cfg.cluster_gender_skew = 0.4;
  const auto synth = generate_synthetic_corpus(cfg);
  REQUIRE(synth.truth.cluster_lexica.size() == 4);
  std::set<std::string> all;
  for (const auto& lex : synth.truth.cluster_lexica) {
    CHECK(lex.size() == cfg.cluster_lexicon_size);
    all.insert(lex.begin(), lex.end());
  }
  CHECK(all.size() == 4 * cfg.cluster_lexicon_size);
  std::vector<double> female(4, 0), size(4, 0);
  for (std::size_t i = 0; i < synth.truth.clusters.size(); ++i) {
    const auto k = static_cast<std::size_t>(synth.truth.clusters[i]);
    size[k] += 1;
    female[k] += synth.truth.genders[i] == Gender::female;
  }
  for (std::size_t k = 1; k < 4; ++k) CHECK(female[k] / size[k] > female[k - 1] / size[k - 1]);
}

TEST_CASE("gender-blind clusters have equal sizes") {
  SynthConfig cfg = small(41);
  cfg.n_authors = 2000;
  cfg.n_clusters = 4;
  const auto synth = generate_synthetic_corpus(cfg);
  std::vector<std::size_t> size(4, 0);
  for (int k : synth.truth.clusters) ++size[static_cast<std::size_t>(k)];
  CHECK(size == std::vector<std::size_t>{500, 500, 500, 500});
}
