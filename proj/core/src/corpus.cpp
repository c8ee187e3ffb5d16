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

#include "lexnet/corpus.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "lexnet/error.hpp"
#include "lexnet/io.hpp"
#include "lexnet/log.hpp"

namespace lexnet {

std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::female: return "female";
    case Gender::male: return "male";
    default: return "unknown";
  }
}

std::optional<Gender> parse_gender(std::string_view text) {
  const std::string s = ascii_lower(text);
  if (s == "female" || s == "f") return Gender::female;
  if (s == "male" || s == "m") return Gender::male;
  if (s == "unknown" || s == "u") return Gender::unknown;
  return std::nullopt;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void NameGenderTable::add(std::string_view name, Gender sex, std::uint64_t count) {
  auto& c = counts_[ascii_lower(name)];
  if (sex == Gender::female) {
    c.female += count;
  } else if (sex == Gender::male) {
    c.male += count;
  } else {
    throw InvalidArgument("name table entries must be female or male");
  }
}

std::optional<NameCounts> NameGenderTable::lookup(std::string_view name) const {
  const auto it = counts_.find(ascii_lower(name));
  if (it == counts_.end()) return std::nullopt;
  return it->second;
}

NameGenderTable build_name_table(std::span<const NameRow> rows, std::string_view source) {
  NameGenderTable table;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::string src(source);
    const std::size_t line = row.line ? row.line : i + 1;
    if (row.name.empty()) throw ParseError(src, line, "empty name");
    Gender sex;
    if (row.sex == "F" || row.sex == "f") {
      sex = Gender::female;
    } else if (row.sex == "M" || row.sex == "m") {
      sex = Gender::male;
    } else {
      throw ParseError(src, line, "sex must be F or M, got '" + row.sex + "'");
    }
    std::uint64_t count = 0;
    const auto* first = row.count.data();
    const auto* last = first + row.count.size();
    const auto [ptr, ec] = std::from_chars(first, last, count);
    if (row.count.empty() || ec != std::errc() || ptr != last) {
      throw ParseError(src, line, "count must be a nonnegative integer, got '" + row.count + "'");
    }
    table.add(row.name, sex, count);
  }
  return table;
}

NameGenderTable read_name_table(const std::filesystem::path& path) {
  const auto lines = io::read_utf8_lines(path);
  std::vector<NameRow> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> f;
    try {
      f = io::csv_split(lines[i]);
    } catch (const InvalidArgument& e) {
      throw ParseError(path.string(), i + 1, e.what());
    }
    if (i == 0 && f.size() == 3 && ascii_lower(f[0]) == "name" && ascii_lower(f[1]) == "sex") {
      continue;
    }
    if (f.size() != 3) throw ParseError(path.string(), i + 1, "expected name,sex,count");
    rows.push_back({f[0], f[1], f[2], i + 1});
  }
  return build_name_table(rows, path.string());
}

Gender assign_gender(std::string_view first_name, const NameGenderTable& table,
                     std::uint64_t min_total) {
  if (min_total == 0) throw InvalidArgument("assign_gender: min_total must be positive");
  const auto counts = table.lookup(first_name);
  if (!counts || counts->total() <= min_total || counts->female == counts->male) {
    return Gender::unknown;
  }
  return counts->female > counts->male ? Gender::female : Gender::male;
}

std::string extract_first_name(std::string_view profile_name) {
  std::size_t i = 0;
  while (i < profile_name.size() && std::isspace(static_cast<unsigned char>(profile_name[i]))) ++i;
  std::string out;
  for (; i < profile_name.size(); ++i) {
    const auto c = static_cast<unsigned char>(profile_name[i]);
    if (std::isspace(c)) break;
    if (c < 0x80 && std::isalpha(c)) out += static_cast<char>(std::tolower(c));
  }
  return out;
}

RawMessage make_message(std::string_view author_id, std::string_view author_name,
                        Timestamp timestamp, std::string text, const Tokenizer& tokenizer) {
  RawMessage msg;
  msg.author_id = ascii_lower(author_id);
  msg.author_name = std::string(author_name);
  msg.timestamp = timestamp;
  for (const auto& tok : tokenizer.tokenize(text)) {
    if (is_mention_token(tok)) msg.mentions.push_back(tok.substr(1));
  }
  msg.text = std::move(text);
  return msg;
}

std::vector<RawMessage> read_messages_jsonl(const std::filesystem::path& path,
                                            const Tokenizer& tokenizer) {
  const auto lines = io::read_utf8_lines(path);
  std::vector<RawMessage> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string(), i + 1, std::string("malformed JSON: ") + e.what());
    }
    auto field = [&](const char* key) -> std::string {
      if (!j.is_object() || !j.contains(key) || !j[key].is_string()) {
        throw ParseError(path.string(), i + 1, std::string("missing string field '") + key + "'");
      }
      return j[key].get<std::string>();
    };
    const std::string author = field("author_id");
    const std::string ts_text = field("timestamp");
    const std::string text = field("text");
    const std::string name = j.contains("name") && j["name"].is_string()
                                 ? j["name"].get<std::string>()
                                 : std::string();
    const auto ts = parse_iso8601(ts_text);
    if (!ts) {
      warn(path.string() + ":" + std::to_string(i + 1) + ": skipping message with bad timestamp '" +
           ts_text + "'");
      continue;
    }
    out.push_back(make_message(author, name, *ts, text, tokenizer));
  }
  return out;
}

void write_messages_jsonl(std::ostream& out, std::span<const RawMessage> messages) {
  for (const auto& m : messages) {
    nlohmann::ordered_json j;
    j["author_id"] = m.author_id;
    j["name"] = m.author_name;
    j["timestamp"] = format_iso8601(m.timestamp);
    j["text"] = m.text;
    out << j.dump() << '\n';
  }
}

std::vector<Author> build_authors(std::span<const RawMessage> messages,
                                  const Tokenizer& tokenizer, const NameGenderTable& names,
                                  std::uint64_t name_min_total) {
  std::map<std::string, std::vector<std::size_t>> by_author;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    by_author[messages[i].author_id].push_back(i);
  }
  std::vector<Author> authors;
  authors.reserve(by_author.size());
  for (auto& [id, idx] : by_author) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return messages[a].timestamp < messages[b].timestamp;
    });
    Author author;
    author.author_id = id;
    author.first_name = extract_first_name(messages[idx.front()].author_name);
    author.gender = author.first_name.empty()
                        ? Gender::unknown
                        : assign_gender(author.first_name, names, name_min_total);
    author.message_count = idx.size();
    for (std::size_t i : idx) {
      for (auto& tok : tokenizer.tokenize(messages[i].text)) {
        if (!is_mention_token(tok)) author.tokens.push_back(std::move(tok));
      }
    }
    authors.push_back(std::move(author));
  }
  return authors;
}

Corpus::Corpus(std::vector<Author> authors) : authors_(std::move(authors)) {
  std::sort(authors_.begin(), authors_.end(),
            [](const Author& a, const Author& b) { return a.author_id < b.author_id; });
  for (std::size_t i = 0; i < authors_.size(); ++i) {
    if (!index_.emplace(authors_[i].author_id, i).second) {
      throw InvalidArgument("duplicate author id " + authors_[i].author_id);
    }
  }
}

const Author* Corpus::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &authors_[it->second];
}

GenderMap Corpus::genders() const {
  GenderMap out;
  for (const auto& a : authors_) out.emplace(a.author_id, a.gender);
  return out;
}

std::size_t Corpus::count(Gender g) const {
  return static_cast<std::size_t>(std::count_if(
      authors_.begin(), authors_.end(), [g](const Author& a) { return a.gender == g; }));
}

void CorpusFilterConfig::validate() const {
  if (english_min_overlap == 0 || english_min_overlap > english_top_n) {
    throw InvalidArgument("corpus.english_min_overlap must lie in [1, english_top_n]");
  }
  if (name_min_total == 0) throw InvalidArgument("corpus.name_min_total must be positive");
  if (min_friends > max_friends) {
    throw InvalidArgument("corpus.min_friends must not exceed corpus.max_friends");
  }
}

std::vector<std::string> top_terms_by_author_count(std::span<const Author> authors,
                                                   std::size_t n) {
  std::unordered_map<std::string, std::size_t> usage;
  for (const auto& a : authors) {
    std::unordered_set<std::string_view> seen(a.tokens.begin(), a.tokens.end());
    for (auto t : seen) ++usage[std::string(t)];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(usage.begin(), usage.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first < y.first;
  });
  if (ranked.size() > n) ranked.resize(n);
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (auto& [term, _] : ranked) out.push_back(std::move(term));
  return out;
}

Corpus filter_corpus(std::vector<Author> authors, const SocialGraph& graph,
                     const CorpusFilterConfig& cfg, FilterReport* report) {
  cfg.validate();
  FilterReport rep;
  rep.input = authors.size();
  std::sort(authors.begin(), authors.end(),
            [](const Author& a, const Author& b) { return a.author_id < b.author_id; });

  const auto top = top_terms_by_author_count(authors, cfg.english_top_n);
  const std::unordered_set<std::string_view> top_set(top.begin(), top.end());
  auto english_overlap = [&](const Author& a) {
    std::unordered_set<std::string_view> hit;
    for (const auto& t : a.tokens) {
      if (top_set.count(t)) hit.insert(t);
    }
    return hit.size();
  };
  auto degree_ok = [&](std::size_t d) { return d >= cfg.min_friends && d <= cfg.max_friends; };

  std::vector<Author> kept;
  for (auto& a : authors) {
    if (a.gender == Gender::unknown) {
      ++rep.removed_unknown_gender;
    } else if (english_overlap(a) < cfg.english_min_overlap) {
      ++rep.removed_low_english;
    } else if (!degree_ok(graph.degree(a.author_id))) {
      ++rep.removed_degree;
    } else {
      kept.push_back(std::move(a));
    }
  }

  std::unordered_set<std::string> ids;
  for (const auto& a : kept) ids.insert(a.author_id);
  const SocialGraph survivors = graph.induced(ids);
  std::vector<Author> final_set;
  for (auto& a : kept) {
    if (degree_ok(survivors.degree(a.author_id))) {
      final_set.push_back(std::move(a));
    } else {
      ++rep.removed_degree_recheck;
    }
  }
  rep.retained = final_set.size();
  if (report) *report = rep;
  if (final_set.empty()) throw EmptyCorpusError("empty corpus: no author survived filtering");
  return Corpus(std::move(final_set));
}

}  // namespace lexnet
