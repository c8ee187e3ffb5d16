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


#include "lexnet/cli/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <unordered_map>
#include <unordered_set>

#include "lexnet/data.hpp"
#include "lexnet/io.hpp"
#include "lexnet/log.hpp"

namespace lexnet::cli {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

fs::path write_text(const fs::path& dir, const std::string& name, const std::string& body) {
  const auto p = dir / name;
  auto out = io::open_output(p);
  out << body;
  return p;
}

template <typename F>
fs::path write_with(const fs::path& dir, const std::string& name, F&& f) {
  const auto p = dir / name;
  auto out = io::open_output(p);
  f(out);
  return p;
}

fs::path write_json(const fs::path& dir, const std::string& name, const ojson& j) {
  return write_text(dir, name, j.dump(2) + "\n");
}

// JSON has no NaN; missing values become null.
ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

void require_file(const std::string& field, const fs::path& p) {
  if (p.empty()) throw ConfigError(field, "is required for this command");
  if (!fs::is_regular_file(p)) throw ConfigError(field, "file not found: " + p.string());
}

}  // namespace

fs::path lexicon_dir(const RunConfig& cfg) {
  return cfg.paths.lexicon_dir.empty() ? default_lexicon_dir() : cfg.paths.lexicon_dir;
}

Tokenizer make_tokenizer(const RunConfig& cfg) {
  const auto path = lexicon_dir(cfg) / "emoticons.txt";
  if (!fs::is_regular_file(path)) throw ConfigError("paths.lexicon_dir", "missing " + path.string());
  return Tokenizer(EmoticonLexicon::load(path));
}

CategoryLexicon load_categories(const RunConfig& cfg) {
  const auto dir = lexicon_dir(cfg);
  if (!fs::is_directory(dir)) throw ConfigError("paths.lexicon_dir", "directory not found: " + dir.string());
  std::optional<fs::path> dict;
  if (!cfg.paths.dictionary.empty()) {
    require_file("paths.dictionary", cfg.paths.dictionary);
    dict = cfg.paths.dictionary;
  }
  return CategoryLexicon::load(dir, dict);
}

Dataset load_dataset(const RunConfig& cfg) {
  require_file("paths.messages", cfg.paths.messages);
  require_file("paths.names", cfg.paths.names);
  const auto tokenizer = make_tokenizer(cfg);
  auto messages = read_messages_jsonl(cfg.paths.messages, tokenizer);
  const auto names = read_name_table(cfg.paths.names);
  Dataset data = build_dataset(std::move(messages), names, tokenizer, cfg);
  data.inputs = {cfg.paths.messages, cfg.paths.names};
  return data;
}

Dataset build_dataset(std::vector<RawMessage> messages, const NameGenderTable& names,
                      const Tokenizer& tokenizer, const RunConfig& cfg) {
  Dataset data;
  data.messages = std::move(messages);
  data.graph = build_mention_graph(data.messages, cfg.min_separation_days * kSecondsPerDay);
  auto authors = build_authors(data.messages, tokenizer, names, cfg.corpus.name_min_total);
  if (cfg.filter) {
    data.corpus = filter_corpus(std::move(authors), data.graph, cfg.corpus, &data.filter);
  } else {
    data.filter.input = authors.size();
    std::vector<Author> kept;
    for (auto& a : authors) {
      if (a.gender == Gender::unknown) {
        ++data.filter.removed_unknown_gender;
      } else {
        kept.push_back(std::move(a));
      }
    }
    if (kept.empty()) throw EmptyCorpusError("no author has a resolvable gender");
    data.filter.retained = kept.size();
    data.corpus = Corpus(std::move(kept));
  }
  std::unordered_set<std::string> ids;
  for (const auto& a : data.corpus.authors()) ids.insert(a.author_id);
  data.corpus_graph = data.graph.induced(ids);
  data.vocab = build_vocabulary(data.corpus.authors(), cfg.vocab_size);
  return data;
}

Corpus networked_subset(const Corpus& corpus, const SocialGraph& graph) {
  const auto genders = corpus.genders();
  std::vector<Author> kept;
  for (const auto& a : corpus.authors()) {
    if (!graph.contains(a.author_id)) continue;
    for (const auto& f : graph.neighbor_ids(a.author_id)) {
      const auto it = genders.find(f);
      if (it != genders.end() && it->second != Gender::unknown) {
        kept.push_back(a);
        break;
      }
    }
  }
  if (kept.size() < corpus.size()) {
    warn(std::to_string(corpus.size() - kept.size()) +
         " authors without gendered friends left out of the network analyses");
  }
  if (kept.empty()) throw EmptyCorpusError("no author has a gendered friend");
  return Corpus(std::move(kept));
}

ClassifyResult run_classifier(const Corpus& corpus, const Vocabulary& vocab, const RunConfig& cfg) {
  const auto x = featurize_corpus(corpus, vocab, FeatureMode::boolean);
  const auto y = gender_labels(corpus);
  const FeatureLayout layout{vocab.size(), 0};
  ClassifyResult r;
  r.cv = cross_validate(x, y, layout, cfg.classifier, cfg.folds);
  std::map<double, std::size_t> votes;
  for (double l : r.cv.fold_lambda) ++votes[l];
  double lambda = votes.begin()->first;
  std::size_t best = 0;
  for (const auto& [l, n] : votes) {
    if (n > best) {
      best = n;
      lambda = l;
    }
  }
  r.model = train(x, y, layout, lambda, cfg.classifier);
  const auto female = static_cast<double>(corpus.count(Gender::female));
  r.majority_share = std::max(female, static_cast<double>(corpus.size()) - female) /
                     static_cast<double>(corpus.size());
  return r;
}

GenderMarkers MarkerResult::sets() const {
  const auto f = tables.at(0).terms();
  const auto m = tables.at(1).terms();
  return GenderMarkers(f, m);
}

MarkerResult run_markers(const Corpus& corpus, const Vocabulary& vocab, const RunConfig& cfg) {
  MarkerResult r;
  r.counts = count_term_usage(corpus, vocab);
  r.tables.push_back(find_gender_markers(r.counts, Gender::female, cfg.markers));
  r.tables.push_back(find_gender_markers(r.counts, Gender::male, cfg.markers));
  return r;
}

HomophilyAnalysis network_homophily(const Corpus& corpus, const SocialGraph& graph,
                                    const HomophilyConfig& cfg) {
  const auto genders = corpus.genders();
  HomophilyAnalysis out;
  out.per_author = homophily_stats(graph, genders, cfg.significance);
  try {
    out.edge_homophily = edge_homophily_rate(graph, genders);
  } catch (const InvalidArgument&) {
    out.edge_homophily = kNaN;
  }
  return out;
}

HomophilyAnalysis analyze_homophily(const Corpus& corpus, const SocialGraph& graph,
                                    std::span<const double> own_confidence,
                                    const GenderMarkers& markers, const HomophilyConfig& cfg) {
  if (own_confidence.size() != corpus.size()) {
    throw InvalidArgument("confidence series does not match the corpus");
  }
  HomophilyAnalysis out = network_homophily(corpus, graph, cfg);
  std::unordered_map<std::string, const HomophilyStats*> by_id;
  for (const auto& s : out.per_author) by_id[s.author_id] = &s;

  for (const char* measure : {"classifier", "markers"}) {
    for (Gender g : {Gender::female, Gender::male}) {
      std::vector<double> x, y;
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& a = corpus[i];
        if (a.gender != g) continue;
        const auto it = by_id.find(a.author_id);
        if (it == by_id.end()) continue;
        double key = own_confidence[i];
        if (std::string_view(measure) == "markers") {
          const auto p = same_gender_marker_proportion(a, markers);
          if (!p) continue;
          key = *p;
        }
        x.push_back(key);
        y.push_back(it->second->same_gender_proportion);
      }
      CorrelationRow row;
      row.measure = measure;
      row.gender = g;
      row.result.n = x.size();
      row.result.level = cfg.level;
      try {
        row.result = stats::correlate(x, y, cfg.level);
      } catch (const InvalidArgument& e) {
        row.result.r = row.result.ci_low = row.result.ci_high = kNaN;
        warn(std::string("homophily: no correlation for ") + measure + "/" +
             std::string(to_string(g)) + ": " + e.what());
      }
      if (x.size() >= cfg.bins) row.series = stats::bin_and_aggregate(x, y, cfg.bins, cfg.bin_mode);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

ClusterResult run_clustering(const Dataset& data, const CategoryLexicon& lexicon,
                             const RunConfig& cfg) {
  ClusterResult r;
  r.corpus = cfg.cluster_balance ? balance_by_gender(data.corpus, cfg.seed) : data.corpus;
  r.model = fit_clusters(r.corpus, data.vocab, cfg.clustering, &r.diagnostics);
  const auto categories = categorize_vocabulary(data.vocab, lexicon);
  r.report = cluster_composition_report(r.model, r.corpus, data.vocab, data.corpus_graph,
                                        data.corpus.genders(), categories, cfg.composition);
  return r;
}

Files write_ingest(const Dataset& data, const fs::path& dir) {
  Files files;
  const auto& f = data.filter;
  ojson j;
  j["input_authors"] = f.input;
  j["removed_unknown_gender"] = f.removed_unknown_gender;
  j["removed_low_english"] = f.removed_low_english;
  j["removed_degree"] = f.removed_degree;
  j["removed_degree_recheck"] = f.removed_degree_recheck;
  j["retained"] = f.retained;
  j["female"] = data.corpus.count(Gender::female);
  j["male"] = data.corpus.count(Gender::male);
  j["messages"] = data.messages.size();
  j["graph_nodes"] = data.graph.node_count();
  j["graph_edges"] = data.graph.edge_count();
  j["corpus_edges"] = data.corpus_graph.edge_count();
  j["vocabulary_size"] = data.vocab.size();
  files.push_back(write_json(dir, "filter_report.json", j));
  files.push_back(write_with(dir, "authors.csv", [&](std::ostream& out) {
    out << "author_id,gender,first_name,messages,tokens,friends\n";
    for (const auto& a : data.corpus.authors()) {
      io::write_csv_row(out, {a.author_id, std::string(to_string(a.gender)), a.first_name,
                              std::to_string(a.message_count), std::to_string(a.tokens.size()),
                              std::to_string(data.corpus_graph.degree(a.author_id))});
    }
  }));
  files.push_back(write_with(dir, "vocabulary.csv",
                             [&](std::ostream& out) { write_vocabulary_csv(out, data.vocab); }));
  return files;
}

Files write_network(const Dataset& data, const HomophilyAnalysis& analysis, const fs::path& dir) {
  Files files;
  files.push_back(write_with(dir, "edges.csv", [&](std::ostream& out) { write_edge_csv(out, data.graph); }));
  files.push_back(write_with(dir, "homophily_stats.csv", [&](std::ostream& out) {
    out << "author_id,gender,friends,same_gender,same_gender_proportion,skewed_same,skewed_other\n";
    for (const auto& s : analysis.per_author) {
      io::write_csv_row(out, {s.author_id, std::string(to_string(s.gender)), std::to_string(s.friends),
                              std::to_string(s.same_gender), io::format_double(s.same_gender_proportion),
                              s.skewed_same ? "1" : "0", s.skewed_other ? "1" : "0"});
    }
  }));
  ojson j;
  j["graph_nodes"] = data.graph.node_count();
  j["graph_edges"] = data.graph.edge_count();
  j["corpus_nodes"] = data.corpus_graph.node_count();
  j["corpus_edges"] = data.corpus_graph.edge_count();
  j["edge_homophily"] = number_or_null(analysis.edge_homophily);
  for (Gender g : {Gender::female, Gender::male}) {
    std::size_t n = 0, same = 0, other = 0;
    double mean = 0.0;
    for (const auto& s : analysis.per_author) {
      if (s.gender != g) continue;
      ++n;
      same += s.skewed_same;
      other += s.skewed_other;
      mean += s.same_gender_proportion;
    }
    ojson row;
    row["authors"] = n;
    row["mean_same_gender_proportion"] = number_or_null(n ? mean / static_cast<double>(n) : kNaN);
    row["skewed_same"] = same;
    row["skewed_other"] = other;
    j[std::string(to_string(g))] = row;
  }
  files.push_back(write_json(dir, "network_summary.json", j));
  return files;
}

Files write_classify(const Dataset& data, const ClassifyResult& result, const fs::path& dir) {
  Files files;
  files.push_back(write_with(dir, "cv_report.csv", [&](std::ostream& out) {
    write_cv_report_csv(out, data.corpus, result.cv);
  }));
  nlohmann::json model;
  to_json(model, result.model);
  model["vocabulary"] = data.vocab.terms();
  files.push_back(write_text(dir, "model.json", model.dump(2) + "\n"));
  ojson j;
  j["authors"] = data.corpus.size();
  j["folds"] = result.cv.fold_accuracy.size();
  j["accuracy"] = result.cv.accuracy;
  j["mean_fold_accuracy"] = result.cv.mean_fold_accuracy;
  j["majority_share"] = result.majority_share;
  j["fold_accuracy"] = result.cv.fold_accuracy;
  j["fold_lambda"] = result.cv.fold_lambda;
  j["final_lambda"] = result.model.lambda;
  files.push_back(write_json(dir, "cv_summary.json", j));
  return files;
}

Files write_markers(const MarkerResult& result, const fs::path& dir) {
  Files files;
  files.push_back(write_with(dir, "markers.csv",
                             [&](std::ostream& out) { write_marker_csv(out, result.tables); }));
  ojson j;
  for (const auto& t : result.tables) {
    ojson row;
    row["tests"] = t.tests;
    row["threshold"] = t.threshold;
    row["significant"] = t.significant;
    row["reported"] = t.rows.size();
    j[t.group] = row;
  }
  files.push_back(write_json(dir, "markers_summary.json", j));
  return files;
}

Files write_categories(const Dataset& data, const CategoryLexicon& lexicon,
                       const MarkerResult& markers, const fs::path& dir) {
  Files files;
  const auto cats = categorize_vocabulary(data.vocab, lexicon);
  files.push_back(write_with(dir, "term_categories.csv", [&](std::ostream& out) {
    write_term_categories_csv(out, data.vocab, cats);
  }));
  files.push_back(write_with(dir, "category_report.csv", [&](std::ostream& out) {
    write_category_report_csv(out, category_report_by_gender(data.corpus, data.vocab, cats));
  }));
  files.push_back(write_with(dir, "marker_categories.csv", [&](std::ostream& out) {
    out << "group";
    for (auto c : kCategoryOrder) out << ',' << to_string(c);
    out << ",classified_terms,unclassified_terms\n";
    for (const auto& t : markers.tables) {
      std::array<std::size_t, kCategoryCount> n{};
      std::size_t classified = 0, unclassified = 0;
      for (const auto& row : t.rows) {
        const auto c = lexicon.categorize(row.term);
        if (c == Category::unclassified) {
          ++unclassified;
        } else {
          ++n[static_cast<std::size_t>(c)];
          ++classified;
        }
      }
      std::vector<std::string> fields{t.group};
      for (auto v : n) {
        fields.push_back(classified ? io::format_double(static_cast<double>(v) / static_cast<double>(classified))
                                    : "nan");
      }
      fields.push_back(std::to_string(classified));
      fields.push_back(std::to_string(unclassified));
      io::write_csv_row(out, fields);
    }
  }));
  return files;
}

Files write_clusters(const ClusterResult& result, const Vocabulary& vocab, const fs::path& dir) {
  Files files;
  nlohmann::json model;
  to_json(model, result.model);
  model["vocabulary"] = vocab.terms();
  files.push_back(write_text(dir, "cluster_model.json", model.dump() + "\n"));
  files.push_back(write_with(dir, "cluster_assignments.csv", [&](std::ostream& out) {
    write_cluster_assignments_csv(out, result.corpus, result.model);
  }));
  files.push_back(write_with(dir, "cluster_report.csv", [&](std::ostream& out) {
    write_cluster_report_csv(out, result.report);
  }));
  ojson j;
  j["authors"] = result.corpus.size();
  j["objective"] = result.model.objective;
  j["best_restart"] = result.diagnostics.best_restart;
  j["sizes"] = result.model.cluster_sizes();
  ojson restarts = ojson::array();
  for (const auto& r : result.diagnostics.restarts) {
    restarts.push_back({{"seed", r.seed},
                        {"objective", r.objective.back()},
                        {"iterations", r.iterations},
                        {"converged", r.converged}});
  }
  j["restarts"] = restarts;
  if (result.report.trend) {
    j["trend"] = {{"slope", result.report.trend->slope}, {"intercept", result.report.trend->intercept}};
  } else {
    j["trend"] = nullptr;
  }
  j["correlation"] = result.report.correlation ? ojson(*result.report.correlation) : ojson(nullptr);
  files.push_back(write_json(dir, "cluster_summary.json", j));
  return files;
}

Files write_homophily(const HomophilyAnalysis& analysis, const fs::path& dir) {
  Files files;
  files.push_back(write_with(dir, "correlations.csv", [&](std::ostream& out) {
    out << "measure,gender,r,n,ci_low,ci_high,level\n";
    for (const auto& row : analysis.rows) {
      const auto& c = row.result;
      io::write_csv_row(out, {row.measure, std::string(to_string(row.gender)), io::format_double(c.r),
                              std::to_string(c.n), io::format_double(c.ci_low),
                              io::format_double(c.ci_high), io::format_double(c.level)});
    }
  }));
  for (const auto& row : analysis.rows) {
    const std::string name = "series_" + row.measure + "_" + std::string(to_string(row.gender)) + ".csv";
    files.push_back(write_with(dir, name, [&](std::ostream& out) {
      out << "bin,count,key_low,key_high,mean_key,mean_same_gender_proportion\n";
      for (std::size_t b = 0; b < row.series.bins.size(); ++b) {
        const auto& bin = row.series.bins[b];
        io::write_csv_row(out, {std::to_string(b), std::to_string(bin.count), io::format_double(bin.key_low),
                                io::format_double(bin.key_high), io::format_double(bin.mean_key),
                                io::format_double(bin.mean_value)});
      }
    }));
  }
  return files;
}

Files write_curve(std::span<const BudgetPoint> curve, const fs::path& dir) {
  return {write_with(dir, "budget_curve.csv", [&](std::ostream& out) {
    out << "budget,accuracy_text,accuracy_network,network_gain\n";
    for (const auto& p : curve) {
      io::write_csv_row(out, {std::to_string(p.budget), io::format_double(p.accuracy_text),
                              io::format_double(p.accuracy_network),
                              io::format_double(p.accuracy_network - p.accuracy_text)});
    }
  })};
}

}  // namespace lexnet::cli
