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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lexnet/categories.hpp"
#include "lexnet/corpus.hpp"
#include "lexnet/features.hpp"
#include "lexnet/network.hpp"
#include "lexnet/stats.hpp"

namespace lexnet {

struct EMConfig {
  std::size_t K = 20;
  std::size_t restarts = 25;
  double lambda_beta = 1.0;
  std::size_t max_iterations = 100;
  std::size_t inner_iterations = 50;
  // A restart stops when one EM iteration gains less than
  // tolerance * max(1, |objective|).
  double tolerance = 1e-8;
  double theta_smoothing = 0.01;  // pseudo-count per cluster = smoothing * N / K
  std::uint64_t seed = 0;

  // K == 1 is accepted for diagnostics; the clustering contract uses K >= 2.
  void validate() const;
};

// Per-cluster word distributions p_k = softmax(m + beta[k]).
struct ClusterModel {
  std::size_t K = 0;
  std::vector<double> m;
  std::vector<std::vector<double>> beta;
  std::vector<double> theta;
  std::vector<int> assignments;
  double lambda_beta = 0.0;
  double objective = 0.0;
  EMConfig config;

  std::size_t vocab_size() const { return m.size(); }
  std::vector<double> log_probs(std::size_t k) const;
  std::vector<double> probs(std::size_t k) const;
  std::vector<double> background_probs() const;  // softmax(m)
  std::vector<std::size_t> cluster_sizes() const;
};

struct RestartTrace {
  std::uint64_t seed = 0;
  std::vector<double> objective;  // after the initial M-step, then per iteration
  std::size_t iterations = 0;
  bool converged = false;
};

struct FitDiagnostics {
  std::vector<RestartTrace> restarts;
  std::size_t best_restart = 0;
};

// Log of the add-0.5 smoothed pooled unigram distribution.
std::vector<double> background_log_frequencies(std::span<const FeatureVector> counts,
                                               std::size_t vocab_size);

// sum_n [log theta[z_n] + sum_w x_nw log p_{z_n}(w)] - lambda_beta * sum_k |beta_k|_1
double joint_objective(const ClusterModel& model, std::span<const FeatureVector> counts);

// E-step: argmax_k log theta[k] + sum_w x_nw log p_k(w); ties go to the
// smallest k.
std::vector<int> assign_clusters(const ClusterModel& model, std::span<const FeatureVector> counts);

// Hard EM with `restarts` uniform random initialisations; returns the
// restart with the highest final objective (earliest on ties). Every
// iteration is an ascent step: updates that would lower the objective are
// reverted.
ClusterModel fit_clusters(std::span<const FeatureVector> counts, std::size_t vocab_size,
                          const EMConfig& cfg, FitDiagnostics* diagnostics = nullptr);

// Count-mode features of every author.
ClusterModel fit_clusters(const Corpus& corpus, const Vocabulary& vocab, const EMConfig& cfg,
                          FitDiagnostics* diagnostics = nullptr);

// Keeps the minority gender whole and samples the majority down to its size
// without replacement. Unknown-gender authors are dropped.
Corpus balance_by_gender(const Corpus& corpus, std::uint64_t seed);

// Top n terms by log p_k(w) - log softmax(m)(w), descending, ties lexicographic.
std::vector<std::pair<std::string, double>> cluster_top_words(const ClusterModel& model,
                                                              const Vocabulary& vocab,
                                                              std::size_t k, std::size_t n = 25);

struct ClusterCompositionRow {
  std::size_t cluster = 0;
  std::size_t size = 0;
  std::size_t female_authors = 0;
  double female_share = 0.0;
  std::size_t friend_links = 0;  // gendered neighbours, summed over members
  std::size_t female_friend_links = 0;
  double female_friend_share = 0.0;
  std::array<double, kCategoryCount> category_shares{};
  std::vector<std::string> top_words;
};

struct ClusterCompositionReport {
  std::vector<ClusterCompositionRow> rows;  // by female_share descending
  // male friend share ~ slope * male author share + intercept across rows.
  std::optional<stats::LinearFit> trend;
  std::optional<double> correlation;
};

struct CompositionConfig {
  std::size_t min_size = 100;
  std::size_t top_words = 25;
};

// `corpus` is the clustered corpus (model.assignments follows its order);
// friend genders come from `genders`.
ClusterCompositionReport cluster_composition_report(const ClusterModel& model,
                                                    const Corpus& corpus,
                                                    const Vocabulary& vocab,
                                                    const SocialGraph& graph,
                                                    const GenderMap& genders,
                                                    std::span<const Category> categories,
                                                    const CompositionConfig& cfg = {});

void to_json(nlohmann::json& j, const ClusterModel& model);

// CSV: cluster,size,female_share,female_friend_share,<category shares>,top_words.
void write_cluster_report_csv(std::ostream& out, const ClusterCompositionReport& report);

// CSV "author_id,cluster".
void write_cluster_assignments_csv(std::ostream& out, const Corpus& corpus,
                                   const ClusterModel& model);

}  // namespace lexnet
