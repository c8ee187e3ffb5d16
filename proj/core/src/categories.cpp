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

#include "lexnet/categories.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "lexnet/error.hpp"
#include "lexnet/io.hpp"
#include "lexnet/log.hpp"
#include "lexnet/tokenizer.hpp"

namespace lexnet {
namespace {

constexpr std::array<std::string_view, kCategoryCount + 1> kNames{
    "named_entity", "taboo",  "number",        "hashtag",     "punctuation",
    "dictionary",   "other_pronounceable", "other_spelled", "unclassified"};

// Decodes UTF-8 leniently; invalid bytes come back as themselves.
std::vector<char32_t> codepoints(std::string_view s) {
  std::vector<char32_t> out;
  for (std::size_t i = 0; i < s.size();) {
    const auto b = static_cast<unsigned char>(s[i]);
    std::size_t len = b < 0x80 ? 1 : (b >> 5) == 0x6 ? 2 : (b >> 4) == 0xE ? 3 : (b >> 3) == 0x1E ? 4 : 1;
    if (i + len > s.size()) len = 1;
    char32_t cp = len == 1 ? b : len == 2 ? (b & 0x1F) : len == 3 ? (b & 0x0F) : (b & 0x07);
    for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

bool is_ascii_alnum(char32_t c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_latin1_letter(char32_t c) { return c >= 0xC0 && c <= 0xFF && c != 0xD7 && c != 0xF7; }

bool is_letter(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || is_latin1_letter(c);
}

bool is_vowel(char32_t c) {
  switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
    case 'A': case 'E': case 'I': case 'O': case 'U': case 'Y':
      return true;
    default:
      break;
  }
  return (c >= 0xC0 && c <= 0xC6) || (c >= 0xC8 && c <= 0xCF) || (c >= 0xD2 && c <= 0xD6) ||
         (c >= 0xD9 && c <= 0xDD) || (c >= 0xE0 && c <= 0xE6) || (c >= 0xE8 && c <= 0xEF) ||
         (c >= 0xF2 && c <= 0xF6) || (c >= 0xF9 && c <= 0xFD) || c == 0xFF;
}

bool is_space(char32_t c) {
  return c == ' ' || (c >= 0x09 && c <= 0x0D) || c == 0x85 || c == 0xA0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F ||
         c == 0x205F || c == 0x3000;
}

bool is_punct_codepoint(char32_t c) {
  if (c < 0x80) return !is_ascii_alnum(c) && !is_space(c) && c >= 0x21 && c != 0x7F;
  if (c <= 0xFF) return !is_latin1_letter(c) && !is_space(c) && c >= 0xA1;
  return (c >= 0x2010 && c <= 0x2BFF) || (c >= 0x3001 && c <= 0x303F) ||
         (c >= 0xFE30 && c <= 0xFE4F) || (c >= 0x1F000 && c <= 0x1FAFF);
}

bool all_ascii_lower(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

bool double_consonant_end(std::string_view s) {
  if (s.size() < 2) return false;
  const char a = s[s.size() - 1];
  return a == s[s.size() - 2] && std::string_view("aeiou").find(a) == std::string_view::npos;
}

std::unordered_set<std::string> to_set(const std::vector<std::string>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

std::string_view to_string(Category c) { return kNames[static_cast<std::size_t>(c)]; }

std::optional<Category> parse_category(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Category>(i);
  }
  return std::nullopt;
}

CategoryLexicon::CategoryLexicon(const CategoryLists& lists)
    : named_entity_(to_set(lists.named_entity)),
      taboo_(to_set(lists.taboo)),
      dictionary_(to_set(lists.dictionary)),
      pronounceable_(to_set(lists.other_pronounceable)),
      spelled_(to_set(lists.other_spelled)),
      unclassified_(to_set(lists.unclassified)) {}

CategoryLexicon CategoryLexicon::load(const std::filesystem::path& dir,
                                      const std::optional<std::filesystem::path>& dictionary) {
  CategoryLists lists;
  lists.named_entity = io::read_term_list(dir / "named_entities.txt");
  lists.taboo = io::read_term_list(dir / "taboo.txt");
  lists.dictionary = io::read_term_list(dictionary ? *dictionary : dir / "dictionary.txt");
  lists.other_pronounceable = io::read_term_list(dir / "other_pronounceable.txt");
  lists.other_spelled = io::read_term_list(dir / "other_spelled.txt");
  if (std::filesystem::exists(dir / "unclassified.txt")) {
    lists.unclassified = io::read_term_list(dir / "unclassified.txt");
  }
  return CategoryLexicon(lists);
}

bool is_number_term(std::string_view term) {
  // [0-9]+([.,:/-][0-9]+)*
  if (term.empty()) return false;
  bool want_digit = true;
  for (char c : term) {
    const bool digit = c >= '0' && c <= '9';
    if (digit) {
      want_digit = false;
    } else if (!want_digit && std::string_view(".,:/-").find(c) != std::string_view::npos) {
      want_digit = true;
    } else {
      return false;
    }
  }
  return !want_digit;
}

bool is_punctuation_term(std::string_view term) {
  const auto cps = codepoints(term);
  if (cps.empty() || !is_punct_codepoint(cps[0])) return false;
  return std::all_of(cps.begin(), cps.end(), [&](char32_t c) { return c == cps[0]; });
}

bool is_pronounceable_shape(std::string_view term) {
  bool vowel = false;
  for (char32_t c : codepoints(term)) {
    if (c == '\'') continue;
    if (!is_letter(c)) return false;
    vowel = vowel || is_vowel(c);
  }
  return vowel;
}

bool CategoryLexicon::in_dictionary(std::string_view term) const {
  auto has = [&](std::string_view s) { return s.size() >= 2 && dictionary_.contains(std::string(s)); };
  if (term.ends_with("'s")) term.remove_suffix(2);
  if (!all_ascii_lower(term)) return false;
  if (has(term)) return true;
  auto drop = [&](std::size_t n) { return term.substr(0, term.size() - n); };
  if (term.ends_with("s") && !term.ends_with("ss")) {
    if (has(drop(1))) return true;
    if (term.ends_with("es") && has(drop(2))) return true;
    if (term.ends_with("ies") && has(std::string(drop(3)) + "y")) return true;
  }
  if (term.ends_with("ed")) {
    if (has(drop(2)) || has(drop(1))) return true;
    if (term.ends_with("ied") && has(std::string(drop(3)) + "y")) return true;
    if (double_consonant_end(drop(2)) && has(drop(3))) return true;
  }
  if (term.ends_with("ing") && term.size() > 4) {
    if (has(drop(3)) || has(std::string(drop(3)) + "e")) return true;
    if (double_consonant_end(drop(3)) && has(drop(4))) return true;
  }
  return false;
}

Category CategoryLexicon::categorize(std::string_view term) const {
  if (term.empty()) throw InvalidArgument("cannot categorize an empty term");
  const std::string key(term);
  if (unclassified_.contains(key)) return Category::unclassified;
  if (named_entity_.contains(key)) return Category::named_entity;
  if (taboo_.contains(key)) return Category::taboo;
  if (pronounceable_.contains(key)) return Category::other_pronounceable;
  if (spelled_.contains(key)) return Category::other_spelled;
  if (is_number_term(term)) return Category::number;
  if (is_hashtag_token(term)) return Category::hashtag;
  if (is_punctuation_term(term)) return Category::punctuation;
  if (in_dictionary(term)) return Category::dictionary;
  if (is_pronounceable_shape(term)) return Category::other_pronounceable;
  return Category::other_spelled;
}

std::vector<Category> categorize_vocabulary(const Vocabulary& vocab,
                                            const CategoryLexicon& lexicon) {
  std::vector<Category> out;
  out.reserve(vocab.size());
  for (const auto& t : vocab.terms()) out.push_back(lexicon.categorize(t));
  return out;
}

double CategoryReport::Row::share(Category c) const {
  if (c == Category::unclassified) throw InvalidArgument("unclassified tokens carry no share");
  return shares[static_cast<std::size_t>(c)];
}

const CategoryReport::Row* CategoryReport::find(std::string_view group) const {
  for (const auto& r : rows) {
    if (r.group == group) return &r;
  }
  return nullptr;
}

CategoryReport category_report(std::span<const Author> authors,
                               std::span<const std::size_t> group_of,
                               const std::vector<std::string>& group_names,
                               const Vocabulary& vocab, std::span<const Category> assignments) {
  if (assignments.size() != vocab.size()) {
    throw InvalidArgument("every vocabulary term needs a category");
  }
  if (group_of.size() != authors.size()) {
    throw InvalidArgument("group assignment length differs from author count");
  }
  std::vector<CategoryReport::Row> rows(group_names.size());
  for (std::size_t g = 0; g < rows.size(); ++g) rows[g].group = group_names[g];
  for (std::size_t a = 0; a < authors.size(); ++a) {
    const std::size_t g = group_of[a];
    if (g == std::numeric_limits<std::size_t>::max()) continue;
    if (g >= rows.size()) throw InvalidArgument("group index out of range");
    auto& row = rows[g];
    for (const auto& t : authors[a].tokens) {
      const auto idx = vocab.index_of(t);
      if (!idx) continue;
      const Category c = assignments[*idx];
      if (c == Category::unclassified) {
        ++row.unclassified_tokens;
      } else {
        ++row.tokens[static_cast<std::size_t>(c)];
        ++row.classified_tokens;
      }
    }
  }
  CategoryReport report;
  for (auto& row : rows) {
    if (row.classified_tokens == 0) {
      warn("category report: group '" + row.group + "' has no classified tokens; row omitted");
      continue;
    }
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      row.shares[c] = static_cast<double>(row.tokens[c]) / static_cast<double>(row.classified_tokens);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

CategoryReport category_report_by_gender(const Corpus& corpus, const Vocabulary& vocab,
                                         std::span<const Category> assignments) {
  std::vector<std::size_t> group_of(corpus.size());
  for (std::size_t a = 0; a < corpus.size(); ++a) {
    const Gender g = corpus[a].gender;
    group_of[a] = g == Gender::female ? 0
                  : g == Gender::male ? 1
                                      : std::numeric_limits<std::size_t>::max();
  }
  return category_report(corpus.authors(), group_of, {"female", "male"}, vocab, assignments);
}

void write_category_report_csv(std::ostream& out, const CategoryReport& report) {
  out << "group";
  for (auto c : kCategoryOrder) out << ',' << to_string(c);
  out << ",classified_tokens,unclassified_tokens\n";
  for (const auto& r : report.rows) {
    std::vector<std::string> fields{r.group};
    for (double s : r.shares) fields.push_back(io::format_double(s));
    fields.push_back(std::to_string(r.classified_tokens));
    fields.push_back(std::to_string(r.unclassified_tokens));
    io::write_csv_row(out, fields);
  }
}

void write_term_categories_csv(std::ostream& out, const Vocabulary& vocab,
                               std::span<const Category> assignments) {
  if (assignments.size() != vocab.size()) {
    throw InvalidArgument("every vocabulary term needs a category");
  }
  out << "term,category\n";
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    io::write_csv_row(out, {vocab.term(i), std::string(to_string(assignments[i]))});
  }
}

}  // namespace lexnet
