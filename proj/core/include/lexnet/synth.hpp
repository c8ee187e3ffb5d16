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
#include <cstdint>
#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <utility>
#include <vector>

#include "lexnet/corpus.hpp"
#include "lexnet/types.hpp"

namespace lexnet {

struct SynthConfig {
  std::size_t n_authors = 2000;
  std::size_t tokens_per_author = 200;
  std::size_t messages_per_author = 10;
  std::size_t vocab_size = 5000;  // Zipf background
  double zipf_exponent = 1.0;
  double female_fraction = 0.44;

  // Planted markers: separate terms with base rate marker_rate per token for
  // either gender; the marked gender uses them marker_strength times as often.
  std::size_t markers_per_gender = 50;
  double marker_strength = 1.0;
  double marker_rate = 0.001;

  // Planted clusters: disjoint lexica of background terms, weighted by
  // cluster_strength for members. Zero clusters disables planting.
  std::size_t n_clusters = 0;
  std::size_t cluster_lexicon_size = 50;
  double cluster_strength = 3.0;
  std::size_t cluster_lexicon_offset = 50;  // first background rank used
  // Female share of cluster k spreads linearly over
  // [0.5 - skew, 0.5 + skew] (relative weights). With 0, clusters are
  // gender-blind and their sizes differ by at most one.
  double cluster_gender_skew = 0.0;

  // Each friendship stub is paired within the author's own gender with
  // probability rho, otherwise with a uniformly random stub.
  double rho = 0.0;
  // Ties marker strength and homophily to a latent per-author
  // expressiveness g ~ U(0,1): strength 1 + (s - 1) 2g, homophily min(1, 2 rho g).
  bool coupling_link = false;
  double mean_degree = 10.0;
  std::size_t min_degree = 4;
  std::size_t max_degree = 100;

  std::uint64_t seed = 0;

  void validate() const;
};

struct GroundTruth {
  std::vector<std::string> author_ids;
  std::vector<Gender> genders;
  std::vector<int> clusters;           // -1 when no clusters are planted
  std::vector<double> expressiveness;  // latent g
  std::vector<std::string> female_markers;
  std::vector<std::string> male_markers;
  std::vector<std::vector<std::string>> cluster_lexica;
  std::vector<std::pair<std::string, std::string>> edges;  // sorted, a < b
};

struct SynthCorpus {
  std::vector<RawMessage> messages;
  std::vector<NameRow> names;
  GroundTruth truth;
};

// Deterministic given cfg.seed. Throws InvalidArgument when the degree
// constraints cannot be met.
SynthCorpus generate_synthetic_corpus(const SynthConfig& cfg);

// Pronounceable lowercase pseudo-word for an index; injective.
std::string synth_word(std::size_t index);

void to_json(nlohmann::json& j, const GroundTruth& truth);

// Writes messages.jsonl, names.csv and ground_truth.json into `dir`.
void write_synthetic_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir);

}  // namespace lexnet
