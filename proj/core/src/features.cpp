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

#include "lexnet/features.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <ostream>
#include <unordered_set>

#include "lexnet/error.hpp"
#include "lexnet/io.hpp"

namespace lexnet {

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> counts)
    : terms_(std::move(terms)), counts_(std::move(counts)) {
  if (terms_.size() != counts_.size()) {
    throw InvalidArgument("vocabulary: terms and counts differ in length");
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i], static_cast<std::uint32_t>(i)).second) {
      throw InvalidArgument("vocabulary: duplicate term '" + terms_[i] + "'");
    }
  }
}

std::optional<std::uint32_t> Vocabulary::index_of(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(std::span<const Author> authors, std::size_t size,
                            VocabularyRanking ranking) {
  if (size == 0) throw InvalidArgument("vocabulary size must be >= 1");
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& a : authors) {
    if (ranking == VocabularyRanking::tokens) {
      for (const auto& t : a.tokens) ++counts[t];
    } else {
      std::unordered_set<std::string_view> seen(a.tokens.begin(), a.tokens.end());
      for (auto t : seen) ++counts[std::string(t)];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first < y.first;
  });
  if (ranked.size() > size) ranked.resize(size);
  std::vector<std::string> terms;
  std::vector<std::size_t> out_counts;
  for (auto& [t, c] : ranked) {
    terms.push_back(std::move(t));
    out_counts.push_back(c);
  }
  return Vocabulary(std::move(terms), std::move(out_counts));
}

void write_vocabulary_csv(std::ostream& out, const Vocabulary& vocab) {
  out << "rank,term,author_count\n";
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    io::write_csv_row(out, {std::to_string(i), vocab.term(i), std::to_string(vocab.count(i))});
  }
}

Vocabulary read_vocabulary_csv(const std::filesystem::path& path) {
  const auto lines = io::read_utf8_lines(path);
  std::map<std::size_t, std::pair<std::string, std::size_t>> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty() || (i == 0 && lines[i] == "rank,term,author_count")) continue;
    std::vector<std::string> f;
    try {
      f = io::csv_split(lines[i]);
    } catch (const InvalidArgument& e) {
      throw ParseError(path.string(), i + 1, e.what());
    }
    if (f.size() != 3) throw ParseError(path.string(), i + 1, "expected rank,term,author_count");
    std::size_t rank = 0, count = 0;
    const auto r1 = std::from_chars(f[0].data(), f[0].data() + f[0].size(), rank);
    const auto r2 = std::from_chars(f[2].data(), f[2].data() + f[2].size(), count);
    if (r1.ec != std::errc() || r2.ec != std::errc() || r1.ptr != f[0].data() + f[0].size() ||
        r2.ptr != f[2].data() + f[2].size()) {
      throw ParseError(path.string(), i + 1, "rank and author_count must be integers");
    }
    if (!rows.emplace(rank, std::make_pair(f[1], count)).second) {
      throw ParseError(path.string(), i + 1, "duplicate rank");
    }
  }
  std::vector<std::string> terms;
  std::vector<std::size_t> counts;
  std::size_t expect = 0;
  for (auto& [rank, row] : rows) {
    if (rank != expect++) throw ParseError(path.string(), 0, "ranks must be contiguous from 0");
    terms.push_back(std::move(row.first));
    counts.push_back(row.second);
  }
  return Vocabulary(std::move(terms), std::move(counts));
}

double FeatureVector::sum() const {
  double s = 0.0;
  for (const auto& [_, v] : entries) s += v;
  return s;
}

FeatureVector featurize(std::span<const std::string> tokens, const Vocabulary& vocab,
                        FeatureMode mode, std::optional<std::size_t> token_budget) {
  const std::size_t limit = token_budget ? std::min(*token_budget, tokens.size()) : tokens.size();
  std::map<std::uint32_t, double> acc;
  for (std::size_t i = 0; i < limit; ++i) {
    if (const auto idx = vocab.index_of(tokens[i])) {
      if (mode == FeatureMode::boolean) {
        acc[*idx] = 1.0;
      } else {
        acc[*idx] += 1.0;
      }
    }
  }
  FeatureVector fv;
  fv.mode = mode;
  fv.entries.assign(acc.begin(), acc.end());
  return fv;
}

std::vector<FeatureVector> featurize_corpus(const Corpus& corpus, const Vocabulary& vocab,
                                            FeatureMode mode,
                                            std::optional<std::size_t> token_budget) {
  std::vector<FeatureVector> out;
  out.reserve(corpus.size());
  for (const auto& a : corpus.authors()) out.push_back(featurize(a, vocab, mode, token_budget));
  return out;
}

}  // namespace lexnet
