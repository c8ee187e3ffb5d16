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

#include <filesystem>
#include <string>
#include <vector>

#include "lexnet/categories.hpp"
#include "lexnet/classifier.hpp"
#include "lexnet/cli/config.hpp"
#include "lexnet/clustering.hpp"
#include "lexnet/corpus.hpp"
#include "lexnet/features.hpp"
#include "lexnet/markers.hpp"
#include "lexnet/network.hpp"
#include "lexnet/stats.hpp"
#include "lexnet/tokenizer.hpp"

namespace lexnet::cli {

struct Dataset {
  std::vector<RawMessage> messages;
  SocialGraph graph;         // mention graph over every message author
  Corpus corpus;             // authors kept for analysis
  SocialGraph corpus_graph;  // `graph` restricted to the corpus
  FilterReport filter;
  Vocabulary vocab;
  std::vector<std::filesystem::path> inputs;
};

std::filesystem::path lexicon_dir(const RunConfig& cfg);
Tokenizer make_tokenizer(const RunConfig& cfg);
CategoryLexicon load_categories(const RunConfig& cfg);

// Reads paths.messages and paths.names. Throws ConfigError when either is
// missing.
Dataset load_dataset(const RunConfig& cfg);
Dataset build_dataset(std::vector<RawMessage> messages, const NameGenderTable& names,
                      const Tokenizer& tokenizer, const RunConfig& cfg);

// Authors with at least one gendered friend among the corpus.
Corpus networked_subset(const Corpus& corpus, const SocialGraph& graph);

struct ClassifyResult {
  CVReport cv;
  LogRegModel model;  // all authors, lambda picked most often across folds
  double majority_share = 0.0;
};
ClassifyResult run_classifier(const Corpus& corpus, const Vocabulary& vocab, const RunConfig& cfg);

struct MarkerResult {
  TermCounts counts;
  std::vector<MarkerTable> tables;  // female, male
  GenderMarkers sets() const;
};
MarkerResult run_markers(const Corpus& corpus, const Vocabulary& vocab, const RunConfig& cfg);

struct CorrelationRow {
  std::string measure;  // "classifier" or "markers"
  Gender gender = Gender::unknown;
  stats::CorrelationResult result;
  stats::BinnedSeries series;
};

struct HomophilyAnalysis {
  std::vector<HomophilyStats> per_author;
  double edge_homophily = 0.0;
  std::vector<CorrelationRow> rows;  // classifier/markers x female/male
};

// Per-author skew statistics and the edge homophily rate; `rows` stays empty.
HomophilyAnalysis network_homophily(const Corpus& corpus, const SocialGraph& graph,
                                    const HomophilyConfig& cfg);

// `own_confidence` follows corpus order. Correlates each author's own-gender
// classifier confidence and same-gender marker proportion with the
// same-gender share of their friends, per gender.
HomophilyAnalysis analyze_homophily(const Corpus& corpus, const SocialGraph& graph,
                                    std::span<const double> own_confidence,
                                    const GenderMarkers& markers, const HomophilyConfig& cfg);

struct ClusterResult {
  Corpus corpus;  // clustered authors
  ClusterModel model;
  FitDiagnostics diagnostics;
  ClusterCompositionReport report;
};
ClusterResult run_clustering(const Dataset& data, const CategoryLexicon& lexicon,
                             const RunConfig& cfg);

// Artifact writers; each returns the files it wrote.
using Files = std::vector<std::filesystem::path>;
Files write_ingest(const Dataset& data, const std::filesystem::path& dir);
Files write_network(const Dataset& data, const HomophilyAnalysis& analysis,
                    const std::filesystem::path& dir);
Files write_classify(const Dataset& data, const ClassifyResult& result,
                     const std::filesystem::path& dir);
Files write_markers(const MarkerResult& result, const std::filesystem::path& dir);
Files write_categories(const Dataset& data, const CategoryLexicon& lexicon,
                       const MarkerResult& markers, const std::filesystem::path& dir);
Files write_clusters(const ClusterResult& result, const Vocabulary& vocab,
                     const std::filesystem::path& dir);
Files write_homophily(const HomophilyAnalysis& analysis, const std::filesystem::path& dir);
Files write_curve(std::span<const BudgetPoint> curve, const std::filesystem::path& dir);

}  // namespace lexnet::cli
