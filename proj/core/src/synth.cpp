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

#include "lexnet/synth.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>

#include "lexnet/error.hpp"
#include "lexnet/io.hpp"
#include "lexnet/rng.hpp"

namespace lexnet {
namespace {

constexpr Timestamp kBaseTime = 1293840000;  // 2011-01-01T00:00:00Z
constexpr Timestamp kSpan = 300 * kSecondsPerDay;
constexpr std::size_t kFemaleNameBase = 1'000'000;
constexpr std::size_t kMaleNameBase = 2'000'000;
constexpr std::size_t kNamesPerGender = 40;

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

using Stub = std::size_t;
using EdgeKey = std::pair<std::size_t, std::size_t>;

EdgeKey key(std::size_t a, std::size_t b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

// Pairs stubs and removes self-loops and multi-edges by endpoint swaps,
// preferring partners from the same pool.
std::vector<EdgeKey> pair_stubs(std::vector<std::vector<Stub>> pools, Rng& rng) {
  std::vector<EdgeKey> edges;
  std::vector<std::size_t> pool_of;
  for (std::size_t p = 0; p < pools.size(); ++p) {
    std::shuffle(pools[p].begin(), pools[p].end(), rng);
    for (std::size_t i = 0; i + 1 < pools[p].size(); i += 2) {
      edges.push_back({pools[p][i], pools[p][i + 1]});
      pool_of.push_back(p);
    }
  }
  std::map<EdgeKey, int> seen;
  for (const auto& [a, b] : edges) ++seen[key(a, b)];
  auto bad = [&](std::size_t i) {
    const auto [a, b] = edges[i];
    return a == b || seen[key(a, b)] > 1;
  };
  std::vector<std::vector<std::size_t>> by_pool(pools.size());
  for (std::size_t i = 0; i < edges.size(); ++i) by_pool[pool_of[i]].push_back(i);

  const std::size_t budget = 200 * edges.size() + 1000;
  std::size_t attempts = 0;
  for (;;) {
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (bad(i)) todo.push_back(i);
    }
    if (todo.empty()) break;
    for (std::size_t i : todo) {
      while (bad(i)) {
        if (++attempts > budget) {
          throw InvalidArgument("synthetic graph: degree constraints are infeasible");
        }
        const auto& same = by_pool[pool_of[i]];
        const bool local = same.size() > 1 && attempts % 4 != 0;
        std::uniform_int_distribution<std::size_t> pick(0, (local ? same.size() : edges.size()) - 1);
        const std::size_t j = local ? same[pick(rng)] : pick(rng);
        if (j == i) continue;
        const auto [a, b] = edges[i];
        const auto [c, d] = edges[j];
        if (a == d || c == b) continue;
        const EdgeKey e1 = key(a, d), e2 = key(c, b);
        if (e1 == e2 || seen[e1] > 0 || seen[e2] > 0) continue;
        --seen[key(a, b)];
        --seen[key(c, d)];
        ++seen[e1];
        ++seen[e2];
        edges[i] = {a, d};
        edges[j] = {c, b};
      }
    }
  }
  for (auto& e : edges) e = key(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_authors < 2) throw InvalidArgument("synth.n_authors must be >= 2");
  if (vocab_size == 0) throw InvalidArgument("synth.vocab_size must be positive");
  if (!(zipf_exponent > 0.0)) throw InvalidArgument("synth.zipf_exponent must be positive");
  if (!(female_fraction > 0.0 && female_fraction < 1.0)) {
    throw InvalidArgument("synth.female_fraction must lie in (0, 1)");
  }
  if (!(marker_strength >= 1.0)) throw InvalidArgument("synth.marker_strength must be >= 1");
  if (!(marker_rate >= 0.0) || 2.0 * static_cast<double>(markers_per_gender) * marker_rate >= 1.0) {
    throw InvalidArgument("synth.marker_rate must be >= 0 with total marker mass below 1");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidArgument("synth.rho must lie in [0, 1]");
  if (!(cluster_strength >= 1.0)) throw InvalidArgument("synth.cluster_strength must be >= 1");
  if (!(cluster_gender_skew >= 0.0 && cluster_gender_skew < 0.5)) {
    throw InvalidArgument("synth.cluster_gender_skew must lie in [0, 0.5)");
  }
  if (cluster_lexicon_offset + n_clusters * cluster_lexicon_size > vocab_size) {
    throw InvalidArgument("synth: cluster lexica do not fit in the background vocabulary");
  }
  if (min_degree == 0 || min_degree > max_degree) {
    throw InvalidArgument("synth: need 0 < min_degree <= max_degree");
  }
  if (max_degree >= n_authors) throw InvalidArgument("synth.max_degree must be below n_authors");
  if (!(mean_degree >= static_cast<double>(min_degree) &&
        mean_degree <= static_cast<double>(max_degree))) {
    throw InvalidArgument("synth.mean_degree must lie in [min_degree, max_degree]");
  }
  if (messages_per_author == 0) throw InvalidArgument("synth.messages_per_author must be positive");
}

std::string synth_word(std::size_t index) {
  static constexpr std::string_view kOnset = "bcdfghjklmnprstvz";
  static constexpr std::string_view kVowel = "aeiou";
  constexpr std::size_t kBase = 17 * 5;
  std::size_t v = index + kBase;  // at least two syllables, leading digit nonzero
  std::string digits;
  while (v > 0) {
    const std::size_t s = v % kBase;
    digits.insert(0, {kOnset[s / 5], kVowel[s % 5]});
    v /= kBase;
  }
  return digits;
}

SynthCorpus generate_synthetic_corpus(const SynthConfig& cfg) {
  cfg.validate();
  const std::size_t N = cfg.n_authors;
  const std::size_t V = cfg.vocab_size;
  const std::size_t M = cfg.markers_per_gender;
  const std::size_t K = cfg.n_clusters;

  SynthCorpus out;
  GroundTruth& truth = out.truth;
  std::vector<std::string> background(V);
  for (std::size_t w = 0; w < V; ++w) background[w] = synth_word(w);
  for (std::size_t i = 0; i < M; ++i) {
    truth.female_markers.push_back(synth_word(V + i));
    truth.male_markers.push_back(synth_word(V + M + i));
  }
  // Cluster k takes ranks offset + k, offset + k + K, ...
  std::vector<std::vector<std::size_t>> lexicon_idx(K);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t j = 0; j < cfg.cluster_lexicon_size; ++j) {
      lexicon_idx[k].push_back(cfg.cluster_lexicon_offset + k + K * j);
    }
    std::vector<std::string> words;
    for (auto w : lexicon_idx[k]) words.push_back(background[w]);
    truth.cluster_lexica.push_back(std::move(words));
  }

  // Authors.
  const int width = std::max(5, static_cast<int>(std::to_string(N).size()));
  Rng attr_rng = make_rng(cfg.seed, "synth-authors");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> female_weight(K, 0.5);
  for (std::size_t k = 0; k < K && K > 1; ++k) {
    female_weight[k] = 0.5 - cfg.cluster_gender_skew +
                       2.0 * cfg.cluster_gender_skew * static_cast<double>(k) / static_cast<double>(K - 1);
  }
  for (std::size_t n = 0; n < N; ++n) {
    truth.author_ids.push_back(fmt::format("u{:0{}}", n + 1, width));
    const Gender g = unit(attr_rng) < cfg.female_fraction ? Gender::female : Gender::male;
    truth.genders.push_back(g);
    truth.expressiveness.push_back(unit(attr_rng));
    if (K == 0) {
      truth.clusters.push_back(-1);
    } else if (cfg.cluster_gender_skew == 0.0) {
      truth.clusters.push_back(0);  // dealt below
    } else {
      std::vector<double> w(K);
      for (std::size_t k = 0; k < K; ++k) {
        w[k] = g == Gender::female ? female_weight[k] : 1.0 - female_weight[k];
      }
      std::discrete_distribution<int> pick(w.begin(), w.end());
      truth.clusters.push_back(pick(attr_rng));
    }
  }

  if (K > 0 && cfg.cluster_gender_skew == 0.0) {
    // Gender-blind clusters of equal size (up to one).
    std::vector<int> deal(N);
    for (std::size_t n = 0; n < N; ++n) deal[n] = static_cast<int>(n % K);
    std::shuffle(deal.begin(), deal.end(), attr_rng);
    truth.clusters = std::move(deal);
  }

  // Names: each pseudo-name is overwhelmingly one gender.
  std::vector<std::string> female_names, male_names;
  for (std::size_t i = 0; i < kNamesPerGender; ++i) {
    female_names.push_back(synth_word(kFemaleNameBase + i));
    male_names.push_back(synth_word(kMaleNameBase + i));
  }
  for (std::size_t i = 0; i < kNamesPerGender; ++i) {
    out.names.push_back({female_names[i], "F", "5000", 0});
    out.names.push_back({female_names[i], "M", "40", 0});
    out.names.push_back({male_names[i], "M", "5000", 0});
    out.names.push_back({male_names[i], "F", "40", 0});
  }
  std::vector<std::string> profile(N);
  {
    std::uniform_int_distribution<std::size_t> pick(0, kNamesPerGender - 1);
    for (std::size_t n = 0; n < N; ++n) {
      const auto& pool = truth.genders[n] == Gender::female ? female_names : male_names;
      profile[n] = capitalize(pool[pick(attr_rng)]) + " " + capitalize(synth_word(3'000'000 + n));
    }
  }

  // Text. Background Zipf weights, optionally boosted by a cluster lexicon.
  std::vector<double> zipf(V);
  for (std::size_t w = 0; w < V; ++w) zipf[w] = std::pow(static_cast<double>(w + 1), -cfg.zipf_exponent);
  double zsum = 0.0;
  for (double z : zipf) zsum += z;
  for (double& z : zipf) z /= zsum;
  std::vector<std::discrete_distribution<std::size_t>> bg_dist;
  std::vector<double> bg_mass;  // mass of the boosted background, before (1 - pi)
  for (std::size_t k = 0; k < std::max<std::size_t>(K, 1); ++k) {
    std::vector<double> w = zipf;
    if (K > 0) {
      for (auto idx : lexicon_idx[k]) w[idx] *= cfg.cluster_strength;
    }
    double mass = 0.0;
    for (double x : w) mass += x;
    bg_mass.push_back(mass);
    bg_dist.emplace_back(w.begin(), w.end());
  }
  const double q = cfg.marker_rate;
  const double pi = 2.0 * static_cast<double>(M) * q;

  Rng text_rng = make_rng(cfg.seed, "synth-text");
  std::uniform_int_distribution<std::size_t> marker_pick(0, M > 0 ? M - 1 : 0);
  for (std::size_t n = 0; n < N; ++n) {
    const std::size_t k = K > 0 ? static_cast<std::size_t>(truth.clusters[n]) : 0;
    const double g = truth.expressiveness[n];
    const double s = cfg.coupling_link ? 1.0 + (cfg.marker_strength - 1.0) * 2.0 * g
                                       : cfg.marker_strength;
    const double w_bg = (1.0 - pi) * bg_mass[k];
    const double w_own = static_cast<double>(M) * q * s;
    const double w_other = static_cast<double>(M) * q;
    std::discrete_distribution<int> component({w_bg, w_own, w_other});
    const bool female = truth.genders[n] == Gender::female;
    const auto& own = female ? truth.female_markers : truth.male_markers;
    const auto& other = female ? truth.male_markers : truth.female_markers;

    std::vector<std::string> tokens;
    tokens.reserve(cfg.tokens_per_author);
    for (std::size_t t = 0; t < cfg.tokens_per_author; ++t) {
      switch (component(text_rng)) {
        case 0: tokens.push_back(background[bg_dist[k](text_rng)]); break;
        case 1: tokens.push_back(own[marker_pick(text_rng)]); break;
        default: tokens.push_back(other[marker_pick(text_rng)]); break;
      }
    }
    std::vector<Timestamp> times(cfg.messages_per_author);
    std::uniform_int_distribution<Timestamp> when(0, kSpan - 1);
    for (auto& t : times) t = kBaseTime + when(text_rng);
    std::sort(times.begin(), times.end());
    const std::size_t per = cfg.messages_per_author;
    for (std::size_t m = 0; m < per; ++m) {
      const std::size_t lo = cfg.tokens_per_author * m / per;
      const std::size_t hi = cfg.tokens_per_author * (m + 1) / per;
      if (lo == hi) continue;
      std::string text;
      for (std::size_t t = lo; t < hi; ++t) {
        if (!text.empty()) text += ' ';
        text += tokens[t];
      }
      out.messages.push_back({truth.author_ids[n], profile[n], times[m], std::move(text), {}});
    }
  }

  // Graph: configuration model with gender-homophilous stubs.
  Rng graph_rng = make_rng(cfg.seed, "synth-graph");
  std::vector<std::size_t> degree(N);
  {
    std::poisson_distribution<std::size_t> extra(cfg.mean_degree - static_cast<double>(cfg.min_degree));
    std::size_t total = 0;
    for (auto& d : degree) {
      d = std::min(cfg.max_degree, cfg.min_degree + extra(graph_rng));
      total += d;
    }
    if (total % 2 == 1) {
      auto it = std::find_if(degree.begin(), degree.end(), [&](auto d) { return d < cfg.max_degree; });
      if (it == degree.end()) throw InvalidArgument("synthetic graph: degree sum cannot be made even");
      ++*it;
    }
  }
  std::vector<std::vector<Stub>> pools(3);  // female-homophilous, male-homophilous, random
  for (std::size_t n = 0; n < N; ++n) {
    const double p = cfg.coupling_link ? std::clamp(2.0 * cfg.rho * truth.expressiveness[n], 0.0, 1.0)
                                       : cfg.rho;
    const std::size_t own_pool = truth.genders[n] == Gender::female ? 0 : 1;
    for (std::size_t s = 0; s < degree[n]; ++s) {
      pools[unit(graph_rng) < p ? own_pool : 2].push_back(n);
    }
  }
  for (std::size_t p = 0; p < 2; ++p) {
    if (pools[p].size() % 2 == 1) {
      std::uniform_int_distribution<std::size_t> pick(0, pools[p].size() - 1);
      const std::size_t i = pick(graph_rng);
      pools[2].push_back(pools[p][i]);
      pools[p].erase(pools[p].begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  const auto edges = pair_stubs(std::move(pools), graph_rng);

  std::uniform_int_distribution<Timestamp> when(0, kSpan - 1);
  std::uniform_int_distribution<Timestamp> gap(15 * kSecondsPerDay, 30 * kSecondsPerDay);
  for (const auto& [a, b] : edges) {
    truth.edges.emplace_back(truth.author_ids[a], truth.author_ids[b]);
    const bool a_first = unit(graph_rng) < 0.5;
    const std::size_t first = a_first ? a : b, second = a_first ? b : a;
    const Timestamp t1 = kBaseTime + when(graph_rng);
    const Timestamp t2 = t1 + gap(graph_rng);
    out.messages.push_back({truth.author_ids[first], profile[first], t1,
                            "@" + truth.author_ids[second], {truth.author_ids[second]}});
    out.messages.push_back({truth.author_ids[second], profile[second], t2,
                            "@" + truth.author_ids[first], {truth.author_ids[first]}});
  }
  std::stable_sort(out.messages.begin(), out.messages.end(), [](const auto& x, const auto& y) {
    if (x.author_id != y.author_id) return x.author_id < y.author_id;
    return x.timestamp < y.timestamp;
  });
  return out;
}

void to_json(nlohmann::json& j, const GroundTruth& truth) {
  nlohmann::json authors = nlohmann::json::array();
  for (std::size_t n = 0; n < truth.author_ids.size(); ++n) {
    authors.push_back({{"author_id", truth.author_ids[n]},
                       {"gender", to_string(truth.genders[n])},
                       {"cluster", truth.clusters[n]},
                       {"expressiveness", truth.expressiveness[n]}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : truth.edges) edges.push_back({a, b});
  j = nlohmann::json{{"authors", std::move(authors)},
                     {"female_markers", truth.female_markers},
                     {"male_markers", truth.male_markers},
                     {"cluster_lexica", truth.cluster_lexica},
                     {"edges", std::move(edges)}};
}

void write_synthetic_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir) {
  {
    auto out = io::open_output(dir / "messages.jsonl");
    write_messages_jsonl(out, corpus.messages);
  }
  {
    auto out = io::open_output(dir / "names.csv");
    out << "name,sex,count\n";
    for (const auto& r : corpus.names) io::write_csv_row(out, {r.name, r.sex, r.count});
  }
  {
    auto out = io::open_output(dir / "ground_truth.json");
    out << nlohmann::json(corpus.truth).dump(1) << '\n';
  }
}

}  // namespace lexnet
