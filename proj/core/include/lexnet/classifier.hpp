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
#include <iosfwd>
#include <nlohmann/json_fwd.hpp>
#include <span>
#include <vector>

#include "lexnet/corpus.hpp"
#include "lexnet/features.hpp"
#include "lexnet/network.hpp"

namespace lexnet {

// Column layout of a design matrix: vocabulary indices first, then any
// appended network features. The bias is implicit and always last.
struct FeatureLayout {
  std::size_t vocab_size = 0;
  std::size_t network_features = 0;

  std::size_t dim() const { return vocab_size + network_features; }
};

inline constexpr std::size_t kNetworkFeatureCount = 3;

// L2-regularised logistic regression, P(y | x) = 1 / (1 + exp(-y (w'x + b))).
struct LogRegModel {
  std::vector<double> weights;  // dim() feature weights followed by the bias
  double lambda = 0.0;
  std::size_t vocab_size = 0;
  std::size_t network_feature_count = 0;

  std::size_t feature_dim() const { return vocab_size + network_feature_count; }
  double bias() const { return weights.back(); }
  // w'x + b. Throws InvalidArgument for indices outside the model.
  double margin(const FeatureVector& x) const;
  // Euclidean norm of the feature weights (bias excluded).
  double weight_norm() const;
};

// P(y = +1 | x).
double predict_proba(const LogRegModel& model, const FeatureVector& x);

struct TrainConfig {
  std::vector<double> lambda_grid{0.01, 0.1, 1.0, 10.0, 100.0};
  std::size_t max_iterations = 500;
  double convergence_tolerance = 1e-6;  // on the gradient norm
  std::uint64_t seed = 0;

  void validate() const;
};

struct TrainingTrace {
  std::vector<double> objective;  // one entry per accepted iterate, first = start
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
};

// Penalised log-likelihood  sum_i log P(y_i | x_i; w) - lambda * ||w||^2
// over the feature weights (bias unpenalised). `w` holds dim + 1 entries
// with the bias last. When `gradient` is non-null it receives d/dw.
double logreg_objective(std::span<const double> w, std::span<const FeatureVector> x,
                        std::span<const int> y, double lambda,
                        std::vector<double>* gradient = nullptr);

// Maximises logreg_objective with L-BFGS and a backtracking (Armijo) line
// search; every accepted step increases the objective. Stops once the
// gradient norm is <= cfg.convergence_tolerance or after
// cfg.max_iterations. Labels are +1/-1 and both must occur; non-finite
// feature values are rejected.
LogRegModel train(std::span<const FeatureVector> x, std::span<const int> y, FeatureLayout layout,
                  double lambda, const TrainConfig& cfg, TrainingTrace* trace = nullptr,
                  const std::vector<double>* warm_start = nullptr);

void to_json(nlohmann::json& j, const LogRegModel& model);
void from_json(const nlohmann::json& j, LogRegModel& model);

// ---------------------------------------------------------------------------
// Cross-validation
// ---------------------------------------------------------------------------

struct CVReport {
  std::vector<double> fold_accuracy;
  std::vector<double> fold_lambda;  // lambda picked on the dev fold
  std::vector<std::size_t> fold_of;  // test fold of each example
  std::vector<double> p_positive;    // held-out P(y = +1 | x)
  double accuracy = 0.0;             // pooled held-out accuracy
  double mean_fold_accuracy = 0.0;
};

// Seeded shuffle split into `folds` contiguous blocks whose sizes differ by
// at most one. Returns the fold of each example.
std::vector<std::size_t> assign_folds(std::size_t n, std::size_t folds, std::uint64_t seed);

// For fold f: test on f, pick lambda on fold (f+1) mod folds by accuracy
// (ties to the smallest lambda), train on the rest. Predicts +1 iff the
// margin is positive. Throws InvalidArgument when a training split holds
// a single class or there are fewer examples than folds.
CVReport cross_validate(std::span<const FeatureVector> x, std::span<const int> y,
                        FeatureLayout layout, const TrainConfig& cfg, std::size_t folds = 10);

// Female = +1, male = -1. Throws InvalidArgument on unknown gender.
std::vector<int> gender_labels(const Corpus& corpus);

// Probability the classifier assigns to each author's own gender.
std::vector<double> own_gender_confidence(const Corpus& corpus, const CVReport& report);

// CSV "author_id,true_gender,p_own_gender,fold".
void write_cv_report_csv(std::ostream& out, const Corpus& corpus, const CVReport& report);

// ---------------------------------------------------------------------------
// Network features
// ---------------------------------------------------------------------------

// Appends, at indices vocab_size .. vocab_size + 2: share of male friends,
// share of female friends, ln(1 + friend count).
FeatureVector augment_with_network_features(const FeatureVector& x, std::size_t vocab_size,
                                            const NetworkComposition& composition);

// Looks the composition up in the graph; throws InvalidArgument when the
// author has no gendered friends.
FeatureVector augment_with_network_features(const FeatureVector& x, std::size_t vocab_size,
                                            std::string_view author_id,
                                            const SocialGraph& graph, const GenderMap& genders);

struct BudgetPoint {
  std::size_t budget = 0;
  double accuracy_text = 0.0;
  double accuracy_network = 0.0;
};

// Cross-validated accuracy with each author's text truncated to the first
// `budget` tokens, without and with network features. All runs share one
// fold assignment.
std::vector<BudgetPoint> token_budget_curve(const Corpus& corpus, const Vocabulary& vocab,
                                            const SocialGraph& graph,
                                            std::span<const std::size_t> budgets,
                                            const TrainConfig& cfg, std::size_t folds = 10);

}  // namespace lexnet
