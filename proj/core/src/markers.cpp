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

#include "lexnet/markers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "lexnet/error.hpp"
#include "lexnet/io.hpp"
#include "lexnet/stats.hpp"

namespace lexnet {

std::size_t TermCounts::group_index(std::string_view name) const {
  for (std::size_t j = 0; j < groups.size(); ++j) {
    if (groups[j] == name) return j;
  }
  throw InvalidArgument("unknown group '" + std::string(name) + "'");
}

void TermCounts::validate() const {
  if (k.size() != terms.size()) throw InvalidArgument("term counts: k length mismatch");
  if (group_size.size() != groups.size() || k_group.size() != groups.size()) {
    throw InvalidArgument("term counts: group shape mismatch");
  }
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < groups.size(); ++j) {
    total += group_size[j];
    if (k_group[j].size() != terms.size()) {
      throw InvalidArgument("term counts: k_group length mismatch for " + groups[j]);
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (k_group[j][i] > std::min(k[i], group_size[j])) {
        throw InvalidArgument("term counts: k_group exceeds bounds for '" + terms[i] + "'");
      }
    }
  }
  if (total > n) throw InvalidArgument("term counts: group sizes exceed n");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (k[i] > n) throw InvalidArgument("term counts: k exceeds n for '" + terms[i] + "'");
  }
}

TermCounts count_term_usage(std::span<const Author> authors, std::span<const std::size_t> group_of,
                            std::vector<std::string> group_names, const Vocabulary& vocab) {
  if (group_of.size() != authors.size()) {
    throw InvalidArgument("group assignment length differs from author count");
  }
  constexpr std::size_t kNoGroup = std::numeric_limits<std::size_t>::max();
  TermCounts c;
  c.terms = vocab.terms();
  c.k.assign(vocab.size(), 0);
  c.n = authors.size();
  c.groups = std::move(group_names);
  c.group_size.assign(c.groups.size(), 0);
  c.k_group.assign(c.groups.size(), std::vector<std::uint64_t>(vocab.size(), 0));
  std::vector<std::uint32_t> seen;
  for (std::size_t a = 0; a < authors.size(); ++a) {
    const std::size_t g = group_of[a];
    if (g != kNoGroup && g >= c.groups.size()) throw InvalidArgument("group index out of range");
    if (g != kNoGroup) ++c.group_size[g];
    seen.clear();
    for (const auto& t : authors[a].tokens) {
      if (auto idx = vocab.index_of(t)) seen.push_back(*idx);
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto i : seen) {
      ++c.k[i];
      if (g != kNoGroup) ++c.k_group[g][i];
    }
  }
  return c;
}

TermCounts count_term_usage(const Corpus& corpus, const Vocabulary& vocab) {
  std::vector<std::size_t> group_of(corpus.size());
  for (std::size_t a = 0; a < corpus.size(); ++a) {
    switch (corpus[a].gender) {
      case Gender::female: group_of[a] = 0; break;
      case Gender::male: group_of[a] = 1; break;
      case Gender::unknown: group_of[a] = std::numeric_limits<std::size_t>::max(); break;
    }
  }
  return count_term_usage(corpus.authors(), group_of, {"female", "male"}, vocab);
}

void MarkerConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("markers.alpha must lie in (0, 1)");
}

std::vector<std::string> MarkerTable::terms() const {
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.term);
  return out;
}

MarkerTable find_markers(const TermCounts& counts, std::size_t group, const MarkerConfig& cfg) {
  cfg.validate();
  counts.validate();
  if (group >= counts.groups.size()) throw InvalidArgument("group index out of range");
  const std::size_t g_tested = cfg.groups_tested ? cfg.groups_tested : counts.groups.size();

  MarkerTable table;
  table.group = counts.groups[group];
  table.alpha = cfg.alpha;
  table.tests = counts.terms.size() * g_tested;
  if (table.tests == 0) return table;
  const double divisor = cfg.bonferroni ? static_cast<double>(table.tests) : 1.0;
  table.threshold = cfg.alpha / divisor;
  const double log_threshold = std::log(cfg.alpha) - std::log(divisor);

  const auto n = static_cast<long>(counts.n);
  const auto n_j = static_cast<long>(counts.group_size[group]);
  for (std::size_t i = 0; i < counts.terms.size(); ++i) {
    const auto k_i = static_cast<long>(counts.k[i]);
    if (k_i == 0 || k_i == n) continue;
    const auto k_ij = static_cast<long>(counts.k_group[group][i]);
    const double log_p = stats::beta_binomial_log_tail(k_ij, n_j, static_cast<double>(k_i),
                                                      static_cast<double>(n - k_i));
    if (!(log_p < log_threshold)) continue;
    table.rows.push_back(MarkerRow{counts.terms[i], table.group, std::exp(log_p), log_p,
                                   counts.k_group[group][i], counts.group_size[group],
                                   counts.k[i], counts.n});
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const MarkerRow& a, const MarkerRow& b) {
    if (a.log_p != b.log_p) return a.log_p < b.log_p;
    return a.term < b.term;
  });
  table.significant = table.rows.size();
  if (table.rows.size() > cfg.top_k) table.rows.resize(cfg.top_k);
  return table;
}

MarkerTable find_gender_markers(const TermCounts& counts, Gender gender, const MarkerConfig& cfg) {
  if (gender == Gender::unknown) throw InvalidArgument("markers need a known gender");
  return find_markers(counts, counts.group_index(to_string(gender)), cfg);
}

void write_marker_csv(std::ostream& out, std::span<const MarkerTable> tables) {
  out << "term,group,p_value,k_group,n_group,k_total,n_total\n";
  for (const auto& t : tables) {
    for (const auto& r : t.rows) {
      io::write_csv_row(out, {r.term, r.group, io::format_double(r.p_value),
                              std::to_string(r.k_group), std::to_string(r.n_group),
                              std::to_string(r.k_total), std::to_string(r.n_total)});
    }
  }
}

GenderMarkers::GenderMarkers(std::span<const std::string> female,
                             std::span<const std::string> male)
    : female_(female.begin(), female.end()), male_(male.begin(), male.end()) {
  for (const auto& t : male_) {
    if (female_.contains(t)) throw InvalidArgument("'" + t + "' is both a female and a male marker");
  }
}

std::optional<double> same_gender_marker_proportion(const Author& author,
                                                    const GenderMarkers& markers) {
  if (author.gender == Gender::unknown) {
    throw InvalidArgument("author " + author.author_id + " has unknown gender");
  }
  std::size_t female = 0, male = 0;
  for (const auto& t : author.tokens) {
    if (markers.is_female(t)) {
      ++female;
    } else if (markers.is_male(t)) {
      ++male;
    }
  }
  if (female + male == 0) return std::nullopt;
  const std::size_t same = author.gender == Gender::female ? female : male;
  return static_cast<double>(same) / static_cast<double>(female + male);
}

}  // namespace lexnet
