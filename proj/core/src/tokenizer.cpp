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

#include "lexnet/tokenizer.hpp"

#include <algorithm>
#include <cctype>

#include "lexnet/io.hpp"
#include "lexnet/types.hpp"

namespace lexnet {
namespace {

struct CodePoint {
  char32_t value;
  std::size_t length;
};

CodePoint decode(std::string_view s, std::size_t i) {
  const auto c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) return {c, 1};
  std::size_t len = (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : (c & 0xF8) == 0xF0 ? 4 : 0;
  if (len == 0 || i + len > s.size()) return {0xFFFD, 1};
  char32_t cp = c & (0x7F >> len);
  for (std::size_t j = 1; j < len; ++j) {
    const auto cc = static_cast<unsigned char>(s[i + j]);
    if ((cc & 0xC0) != 0x80) return {0xFFFD, 1};
    cp = (cp << 6) | (cc & 0x3F);
  }
  return {cp, len};
}

bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' ||
         cp == '\f' || cp == 0x00A0 || (cp >= 0x2000 && cp <= 0x200B) ||
         cp == 0x2028 || cp == 0x2029 || cp == 0x202F || cp == 0x205F ||
         cp == 0x3000 || cp == 0xFEFF;
}

bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }

// Punctuation and symbols that never belong to a word.
bool is_punct(char32_t cp) {
  if (cp < 0x80) return cp != '_' && std::ispunct(static_cast<int>(cp));
  return (cp >= 0x00A1 && cp <= 0x00BF) || cp == 0x00D7 || cp == 0x00F7 ||
         (cp >= 0x2010 && cp <= 0x205E) || (cp >= 0x2190 && cp <= 0x2BFF) ||
         (cp >= 0x3001 && cp <= 0x303F) || (cp >= 0xFE30 && cp <= 0xFE4F) ||
         (cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0x1F000 && cp <= 0x1FAFF);
}

bool is_word(char32_t cp) { return !is_space(cp) && !is_punct(cp); }

bool is_ascii_alnum(char32_t cp) {
  return cp < 0x80 && std::isalnum(static_cast<int>(cp));
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_numeric_separator(char32_t cp) {
  return cp == '.' || cp == ',' || cp == ':' || cp == '/' || cp == '-';
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 32;
  return cp;
}

// Lowercases and normalises curly apostrophes.
std::string normalize(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto [cp, len] = decode(s, i);
    append_utf8(out, cp == 0x2019 ? char32_t{'\''} : to_lower(cp));
    i += len;
  }
  return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

}  // namespace

EmoticonLexicon::EmoticonLexicon(std::vector<std::string> emoticons)
    : entries_(std::move(emoticons)) {
  std::erase_if(entries_, [](const std::string& e) { return e.empty(); });
  std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
  for (const auto& e : entries_) first_byte_[static_cast<unsigned char>(e[0])] = true;
}

EmoticonLexicon EmoticonLexicon::load(const std::filesystem::path& path) {
  std::vector<std::string> entries;
  for (auto& line : io::read_utf8_lines(path)) {
    // Emoticons may start with '#', so only blank lines are skipped.
    if (!line.empty()) entries.push_back(std::move(line));
  }
  return EmoticonLexicon(std::move(entries));
}

bool EmoticonLexicon::contains(std::string_view token) const {
  return std::find(entries_.begin(), entries_.end(), token) != entries_.end();
}

std::size_t EmoticonLexicon::longest_prefix(std::string_view text) const {
  if (text.empty() || !first_byte_[static_cast<unsigned char>(text[0])]) return 0;
  for (const auto& e : entries_) {
    if (text.substr(0, e.size()) == e) return e.size();
  }
  return 0;
}

Tokenizer::Tokenizer(EmoticonLexicon emoticons) : emoticons_(std::move(emoticons)) {}

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
  std::vector<std::string> tokens;
  const std::size_t n = text.size();
  std::size_t i = 0;
  char32_t prev = ' ';  // last code point consumed

  auto cp_at = [&](std::size_t pos) -> char32_t {
    return pos < n ? decode(text, pos).value : char32_t{' '};
  };
  auto last_cp_before = [&](std::size_t end) -> char32_t {
    if (end == 0) return ' ';
    std::size_t b = end - 1;
    while (b > 0 && (static_cast<unsigned char>(text[b]) & 0xC0) == 0x80) --b;
    return decode(text, b).value;
  };

  while (i < n) {
    const auto [cp, len] = decode(text, i);
    if (is_space(cp)) {
      prev = cp;
      i += len;
      continue;
    }
    const std::string_view rest = text.substr(i);
    const bool boundary = !is_word(prev);

    // Rule 1: URLs keep their case and run to the next space; trailing
    // sentence punctuation is split back off.
    if (boundary && (starts_with_ci(rest, "http://") || starts_with_ci(rest, "https://") ||
                     starts_with_ci(rest, "www."))) {
      std::size_t j = i;
      while (j < n) {
        const auto d = decode(text, j);
        if (is_space(d.value)) break;
        j += d.length;
      }
      std::size_t end = j;
      while (end > i + 4 && std::string_view(".,!?;:)]}'\"").find(text[end - 1]) !=
                                 std::string_view::npos) {
        --end;
      }
      tokens.emplace_back(text.substr(i, end - i));
      prev = 'a';
      i = end;
      continue;
    }
    if ((cp == '@' || cp == '#') && boundary) {
      std::size_t j = i + 1;
      while (j < n) {
        const auto d = decode(text, j);
        if (!is_word(d.value)) break;
        j += d.length;
      }
      if (j > i + 1) {
        tokens.push_back(normalize(text.substr(i, j - i)));
        prev = 'a';
        i = j;
        continue;
      }
    }

    // Rule 2: emoticons. An emoticon that starts (ends) with a letter or digit
    // must not be glued to a preceding (following) letter or digit.
    if (const std::size_t elen = emoticons_.longest_prefix(rest); elen > 0) {
      const bool starts_alnum = is_ascii_alnum(cp);
      const char32_t last = last_cp_before(i + elen);
      const bool ends_alnum = is_ascii_alnum(last);
      const bool left_ok = !starts_alnum || !is_word(prev);
      const bool right_ok = !ends_alnum || !is_word(cp_at(i + elen));
      if (left_ok && right_ok) {
        tokens.emplace_back(rest.substr(0, elen));
        prev = last;
        i += elen;
        continue;
      }
    }

    // Rules 3 and 5: punctuation, with runs of one character kept whole.
    if (is_punct(cp)) {
      std::size_t j = i + len;
      while (j < n && decode(text, j).value == cp) j += len;
      tokens.push_back(normalize(text.substr(i, j - i)));
      prev = cp;
      i = j;
      continue;
    }

    // Rule 4: words with internal apostrophes and numeric separators.
    std::size_t j = i;
    bool numeric = true;
    char32_t last = cp;
    while (j < n) {
      const auto d = decode(text, j);
      if (is_word(d.value)) {
        numeric = numeric && is_digit(d.value);
        last = d.value;
        j += d.length;
        continue;
      }
      const auto next = cp_at(j + d.length);
      if (is_apostrophe(d.value) && is_word(last) && is_word(next)) {
        numeric = false;
        last = d.value;
        j += d.length;
        continue;
      }
      if (numeric && is_numeric_separator(d.value) && is_digit(last) && is_digit(next)) {
        last = d.value;
        j += d.length;
        continue;
      }
      break;
    }
    tokens.push_back(normalize(text.substr(i, j - i)));
    prev = last;
    i = j;
  }
  return tokens;
}

}  // namespace lexnet
