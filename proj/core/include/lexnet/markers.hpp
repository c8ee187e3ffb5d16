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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "lexnet/corpus.hpp"
#include "lexnet/features.hpp"

namespace lexnet {

// Author-usage counts: k[i] authors use term i out of n, and k_group[j][i]
// of the group_size[j] authors in group j do.
struct TermCounts {
  std::vector<std::string> terms;
  std::vector<std::uint64_t> k;
  std::uint64_t n = 0;
  std::vector<std::string> groups;
  std::vector<std::uint64_t> group_size;
  std::vector<std::vector<std::uint64_t>> k_group;

  std::size_t group_index(std::string_view name) const;
  // Throws InvalidArgument if shapes disagree or k_group[j][i] > min(k[i], N_j).
  void validate() const;
};

// Groups "female" and "male"; unknown-gender authors count towards n only.
TermCounts count_term_usage(const Corpus& corpus, const Vocabulary& vocab);

// Arbitrary partition: group_of[a] indexes group_names.
TermCounts count_term_usage(std::span<const Author> authors, std::span<const std::size_t> group_of,
                            std::vector<std::string> group_names, const Vocabulary& vocab);

struct MarkerConfig {
  double alpha = 0.05;
  std::size_t top_k = 500;
  // Number of groups in the Bonferroni divisor; 0 means every group in the counts.
  std::size_t groups_tested = 0;
  // false compares raw p-values against alpha.
  bool bonferroni = true;

  void validate() const;
};

struct MarkerRow {
  std::string term;
  std::string group;
  double p_value = 1.0;
  double log_p = 0.0;
  std::uint64_t k_group = 0;
  std::uint64_t n_group = 0;
  std::uint64_t k_total = 0;
  std::uint64_t n_total = 0;
};

struct MarkerTable {
  std::string group;
  double alpha = 0.05;
  std::size_t tests = 0;     // V * G
  double threshold = 0.0;    // alpha / tests
  std::size_t significant = 0;  // before the top-k cut
  std::vector<MarkerRow> rows;  // ascending p, ties lexicographic

  std::vector<std::string> terms() const;
};

// Per term: p = P(Y >= k_group) with Y ~ BetaBinomial(N_j, k_i, N - k_i).
// Terms with k_i in {0, N} are skipped. A term is a marker iff
// p < alpha / (V * G) (p < alpha without the correction); the top_k
// smallest are kept.
MarkerTable find_markers(const TermCounts& counts, std::size_t group, const MarkerConfig& cfg);
MarkerTable find_gender_markers(const TermCounts& counts, Gender gender, const MarkerConfig& cfg);

// CSV "term,group,p_value,k_group,n_group,k_total,n_total".
void write_marker_csv(std::ostream& out, std::span<const MarkerTable> tables);

// Disjoint female and male marker sets.
class GenderMarkers {
 public:
  GenderMarkers(std::span<const std::string> female, std::span<const std::string> male);

  bool is_female(const std::string& term) const { return female_.contains(term); }
  bool is_male(const std::string& term) const { return male_.contains(term); }

 private:
  std::unordered_set<std::string> female_;
  std::unordered_set<std::string> male_;
};

// Same-gender marker tokens over all marker tokens in the author's stream,
// counted with multiplicity. nullopt when the author uses no marker token.
// Throws InvalidArgument for an author of unknown gender.
std::optional<double> same_gender_marker_proportion(const Author& author,
                                                    const GenderMarkers& markers);

}  // namespace lexnet
