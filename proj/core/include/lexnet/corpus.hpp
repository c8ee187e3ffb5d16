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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexnet/network.hpp"
#include "lexnet/tokenizer.hpp"
#include "lexnet/types.hpp"

namespace lexnet {

// ---------------------------------------------------------------------------
// Name-based gender assignment
// ---------------------------------------------------------------------------

struct NameCounts {
  std::uint64_t female = 0;
  std::uint64_t male = 0;

  std::uint64_t total() const { return female + male; }
};

// Census-style name table: name -> (female count, male count). Lookup is
// case-insensitive (ASCII).
class NameGenderTable {
 public:
  void add(std::string_view name, Gender sex, std::uint64_t count);
  std::optional<NameCounts> lookup(std::string_view name) const;

  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }
  const std::map<std::string, NameCounts>& entries() const { return counts_; }

 private:
  std::map<std::string, NameCounts> counts_;
};

// One unparsed "name,sex,count" record.
struct NameRow {
  std::string name;
  std::string sex;
  std::string count;
  std::size_t line = 0;  // source line for diagnostics; 0 = row position
};

// Sums duplicate (name, sex) rows. Throws ParseError naming the 1-based row
// when sex is not F/M, the count is not a nonnegative integer, or the name
// is empty. `source` labels the diagnostics.
NameGenderTable build_name_table(std::span<const NameRow> rows,
                                 std::string_view source = "names");

// Reads a "name,sex,count" CSV (header row optional).
NameGenderTable read_name_table(const std::filesystem::path& path);

// Majority gender of a first name. Unknown when the name is absent, when
// its total count is <= min_total, or when the counts tie.
Gender assign_gender(std::string_view first_name, const NameGenderTable& table,
                     std::uint64_t min_total);

// First whitespace-delimited component of a profile name, keeping ASCII
// letters only, lowercased. "Mary-Ann Smith" -> "maryann".
std::string extract_first_name(std::string_view profile_name);

// ---------------------------------------------------------------------------
// Messages and authors
// ---------------------------------------------------------------------------

// Builds a message, deriving mentions from the @-tokens of the text.
RawMessage make_message(std::string_view author_id, std::string_view author_name,
                        Timestamp timestamp, std::string text, const Tokenizer& tokenizer);

// JSON lines with fields author_id, name, timestamp (ISO-8601), text.
// Undecodable bytes and malformed JSON raise ParseError with file and
// line. A message whose timestamp does not parse is skipped with a
// warning.
std::vector<RawMessage> read_messages_jsonl(const std::filesystem::path& path,
                                            const Tokenizer& tokenizer);
void write_messages_jsonl(std::ostream& out, std::span<const RawMessage> messages);

struct Author {
  std::string author_id;
  std::string first_name;
  Gender gender = Gender::unknown;
  // Tokens of all messages in timestamp order (ties keep input order).
  // @-mention tokens are excluded: they feed the graph, not the text.
  std::vector<std::string> tokens;
  std::size_t message_count = 0;
};

// Groups messages by author (sorted by id). The first name comes from the
// profile name on the author's earliest message.
std::vector<Author> build_authors(std::span<const RawMessage> messages,
                                  const Tokenizer& tokenizer, const NameGenderTable& names,
                                  std::uint64_t name_min_total);

// Immutable author collection sorted by id.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Author> authors);

  const std::vector<Author>& authors() const { return authors_; }
  std::size_t size() const { return authors_.size(); }
  bool empty() const { return authors_.empty(); }
  const Author& operator[](std::size_t i) const { return authors_[i]; }

  const Author* find(std::string_view id) const;
  GenderMap genders() const;
  std::size_t count(Gender g) const;

 private:
  std::vector<Author> authors_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct CorpusFilterConfig {
  std::size_t english_top_n = 1000;
  std::size_t english_min_overlap = 50;
  std::uint64_t name_min_total = 1000;
  std::size_t min_friends = 4;
  std::size_t max_friends = 100;

  // Throws InvalidArgument naming the offending field.
  void validate() const;
};

struct FilterReport {
  std::size_t input = 0;
  std::size_t removed_unknown_gender = 0;
  std::size_t removed_low_english = 0;
  std::size_t removed_degree = 0;          // first pass, full graph
  std::size_t removed_degree_recheck = 0;  // second pass, survivor graph
  std::size_t retained = 0;
};

// Terms ranked by the number of distinct authors using them (ties
// lexicographic), first `n` kept.
std::vector<std::string> top_terms_by_author_count(std::span<const Author> authors,
                                                   std::size_t n);

// Keeps authors with a resolvable gender, at least english_min_overlap
// distinct terms among the english_top_n most author-frequent terms of the
// unfiltered input, and a degree within [min_friends, max_friends]. The
// degree rule is applied on the full graph, then re-checked once on the
// graph restricted to the survivors (no fixpoint). Throws EmptyCorpusError
// when nobody survives.
Corpus filter_corpus(std::vector<Author> authors, const SocialGraph& graph,
                     const CorpusFilterConfig& cfg, FilterReport* report = nullptr);

}  // namespace lexnet
