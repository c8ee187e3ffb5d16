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
#include <filesystem>
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

// Pipeline order; unclassified sits outside the eight categories.
enum class Category {
  named_entity,
  taboo,
  number,
  hashtag,
  punctuation,
  dictionary,
  other_pronounceable,
  other_spelled,
  unclassified,
};

inline constexpr std::size_t kCategoryCount = 8;

inline constexpr std::array<Category, kCategoryCount> kCategoryOrder{
    Category::named_entity, Category::taboo,      Category::number,
    Category::hashtag,      Category::punctuation, Category::dictionary,
    Category::other_pronounceable, Category::other_spelled};

std::string_view to_string(Category c);
std::optional<Category> parse_category(std::string_view name);

struct CategoryLists {
  std::vector<std::string> named_entity;
  std::vector<std::string> taboo;
  std::vector<std::string> dictionary;
  std::vector<std::string> other_pronounceable;
  std::vector<std::string> other_spelled;
  std::vector<std::string> unclassified;
};

// First-match categorizer. Terms on an explicit list take the earliest
// list they appear on (unclassified first, then named_entity, taboo,
// other_pronounceable, other_spelled). Everything else goes through the
// rules in order: number, hashtag, punctuation, dictionary (with regular
// inflections), pronounceable (a vowel and only letters/apostrophes),
// spelled.
class CategoryLexicon {
 public:
  CategoryLexicon() = default;
  explicit CategoryLexicon(const CategoryLists& lists);

  // Reads named_entities.txt, taboo.txt, dictionary.txt,
  // other_pronounceable.txt, other_spelled.txt and, when present,
  // unclassified.txt. A custom dictionary path replaces dictionary.txt.
  static CategoryLexicon load(const std::filesystem::path& dir,
                              const std::optional<std::filesystem::path>& dictionary = {});

  // Throws InvalidArgument on an empty term.
  Category categorize(std::string_view term) const;

  // Lemma lookup, also accepting -s, -es, -ies, -ed, -ied, -ing, 's and
  // consonant doubling.
  bool in_dictionary(std::string_view term) const;

  std::size_t dictionary_size() const { return dictionary_.size(); }

 private:
  std::unordered_set<std::string> named_entity_, taboo_, dictionary_, pronounceable_, spelled_,
      unclassified_;
};

bool is_number_term(std::string_view term);
bool is_punctuation_term(std::string_view term);
bool is_pronounceable_shape(std::string_view term);

std::vector<Category> categorize_vocabulary(const Vocabulary& vocab,
                                            const CategoryLexicon& lexicon);

struct CategoryReport {
  struct Row {
    std::string group;
    std::array<std::uint64_t, kCategoryCount> tokens{};
    std::uint64_t classified_tokens = 0;
    std::uint64_t unclassified_tokens = 0;
    // tokens / classified_tokens; sums to 1.
    std::array<double, kCategoryCount> shares{};

    double share(Category c) const;
  };
  std::vector<Row> rows;

  const Row* find(std::string_view group) const;
};

// Vocabulary tokens per category for each group. Out-of-vocabulary tokens
// are ignored; a group with no classified tokens is omitted with a warning.
// group_of[a] indexes group_names; SIZE_MAX leaves an author out.
CategoryReport category_report(std::span<const Author> authors,
                               std::span<const std::size_t> group_of,
                               const std::vector<std::string>& group_names,
                               const Vocabulary& vocab, std::span<const Category> assignments);

CategoryReport category_report_by_gender(const Corpus& corpus, const Vocabulary& vocab,
                                         std::span<const Category> assignments);

// CSV "group,<eight category shares>,classified_tokens,unclassified_tokens".
void write_category_report_csv(std::ostream& out, const CategoryReport& report);

// CSV "term,category".
void write_term_categories_csv(std::ostream& out, const Vocabulary& vocab,
                               std::span<const Category> assignments);

}  // namespace lexnet
