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
#include <string_view>
#include <vector>

namespace lexnet {

// Emoticon strings matched longest-first as single tokens.
class EmoticonLexicon {
 public:
  EmoticonLexicon() = default;
  explicit EmoticonLexicon(std::vector<std::string> emoticons);

  static EmoticonLexicon load(const std::filesystem::path& path);

  bool contains(std::string_view token) const;
  std::size_t size() const { return entries_.size(); }

  // Length of the longest emoticon that is a prefix of `text`, or 0.
  std::size_t longest_prefix(std::string_view text) const;

 private:
  std::vector<std::string> entries_;  // sorted by length, longest first
  bool first_byte_[256] = {};
};

// Twitter-aware tokenizer. At each position the first applicable rule wins:
//   1. URLs (http://, https://, www.), @mentions and #hashtags;
//   2. emoticons from the lexicon (longest match);
//   3. runs of one repeated punctuation character ("!!!");
//   4. words, keeping internal apostrophes ("she'll") and numeric
//      separators between digits ("3-0", "1,000");
//   5. any other single punctuation or symbol character.
// Whitespace separates tokens. Everything except emoticons and URLs is
// lowercased (ASCII and Latin-1 letters); curly apostrophes become "'".
class Tokenizer {
 public:
  explicit Tokenizer(EmoticonLexicon emoticons = {});

  std::vector<std::string> tokenize(std::string_view text) const;

  const EmoticonLexicon& emoticons() const { return emoticons_; }

 private:
  EmoticonLexicon emoticons_;
};

inline bool is_mention_token(std::string_view token) {
  return token.size() > 1 && token[0] == '@';
}

inline bool is_hashtag_token(std::string_view token) {
  return token.size() > 1 && token[0] == '#';
}

}  // namespace lexnet
