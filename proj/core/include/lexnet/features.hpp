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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexnet/corpus.hpp"

namespace lexnet {

enum class VocabularyRanking {
  authors,  // number of distinct authors using the term
  tokens,   // raw token frequency
};

// Ranked term table; rank 0 is the most frequent term.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Terms must be unique and listed in rank order.
  Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> counts);

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::string& term(std::size_t rank) const { return terms_[rank]; }
  std::size_t count(std::size_t rank) const { return counts_[rank]; }
  const std::vector<std::string>& terms() const { return terms_; }
  std::optional<std::uint32_t> index_of(std::string_view term) const;

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> counts_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Top `size` terms, count descending with lexicographic ties. A corpus with
// fewer distinct terms yields all of them. Independent of author order.
Vocabulary build_vocabulary(std::span<const Author> authors, std::size_t size = 10000,
                            VocabularyRanking ranking = VocabularyRanking::authors);

// CSV "rank,term,author_count".
void write_vocabulary_csv(std::ostream& out, const Vocabulary& vocab);
Vocabulary read_vocabulary_csv(const std::filesystem::path& path);

enum class FeatureMode { boolean, count };

// Sparse vector: (index, value) pairs sorted by index, no explicit zeros.
struct FeatureVector {
  FeatureMode mode = FeatureMode::boolean;
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const { return entries.empty(); }
  std::size_t nnz() const { return entries.size(); }
  double sum() const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Bag of words over the first `token_budget` tokens (all when absent).
// Out-of-vocabulary tokens are ignored.
FeatureVector featurize(std::span<const std::string> tokens, const Vocabulary& vocab,
                        FeatureMode mode, std::optional<std::size_t> token_budget = std::nullopt);

inline FeatureVector featurize(const Author& author, const Vocabulary& vocab, FeatureMode mode,
                               std::optional<std::size_t> token_budget = std::nullopt) {
  return featurize(author.tokens, vocab, mode, token_budget);
}

std::vector<FeatureVector> featurize_corpus(const Corpus& corpus, const Vocabulary& vocab,
                                            FeatureMode mode,
                                            std::optional<std::size_t> token_budget = std::nullopt);

}  // namespace lexnet
