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

#include "lexnet/clustering.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "lexnet/error.hpp"
#include "lexnet/io.hpp"
#include "lexnet/rng.hpp"

namespace lexnet {
namespace {

// Neumaier compensated sum.
struct Accumulator {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

double log_sum_exp(const std::vector<double>& m, const std::vector<double>& beta) {
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < m.size(); ++w) hi = std::max(hi, m[w] + beta[w]);
  Accumulator s;
  for (std::size_t w = 0; w < m.size(); ++w) s.add(std::exp(m[w] + beta[w] - hi));
  return hi + std::log(s.value());
}

double l1(const std::vector<double>& v) {
  Accumulator s;
  for (double x : v) s.add(std::abs(x));
  return s.value();
}

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

// Penalised log-likelihood of one cluster's pooled counts.
double cluster_objective(const std::vector<double>& m, const std::vector<double>& beta,
                         const std::vector<double>& c, double total, double lambda) {
  Accumulator s;
  for (std::size_t w = 0; w < m.size(); ++w) {
    if (c[w] != 0.0) s.add(c[w] * (m[w] + beta[w]));
  }
  if (total > 0.0) s.add(-total * log_sum_exp(m, beta));
  s.add(-lambda * l1(beta));
  return s.value();
}

// Proximal gradient ascent on cluster_objective with a diagonal
// preconditioner and backtracking; only non-decreasing steps are taken.
void update_beta(const std::vector<double>& m, std::vector<double>& beta,
                 const std::vector<double>& c, double total, double lambda,
                 std::size_t max_iterations) {
  const std::size_t V = m.size();
  if (total <= 0.0) {
    if (lambda > 0.0) std::fill(beta.begin(), beta.end(), 0.0);
    return;
  }
  double current = cluster_objective(m, beta, c, total, lambda);
  std::vector<double> p(V), scale(V), grad(V), next(V);
  double eta = 1.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    const double lse = log_sum_exp(m, beta);
    for (std::size_t w = 0; w < V; ++w) {
      p[w] = std::exp(m[w] + beta[w] - lse);
      grad[w] = c[w] - total * p[w];
      scale[w] = 1.0 / std::max({total * p[w], c[w], 1e-300});
    }
    bool accepted = false;
    double moved = 0.0;
    for (int bt = 0; bt < 40; ++bt) {
      moved = 0.0;
      for (std::size_t w = 0; w < V; ++w) {
        const double t = eta * scale[w];
        next[w] = soft_threshold(beta[w] + t * grad[w], t * lambda);
        moved = std::max(moved, std::abs(next[w] - beta[w]));
      }
      if (moved == 0.0) break;
      const double candidate = cluster_objective(m, next, c, total, lambda);
      if (candidate >= current) {
        current = candidate;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
    beta.swap(next);
    eta = std::min(1.0, 2.0 * eta);
    if (moved < 1e-12) break;
  }
}

struct Pooled {
  std::vector<std::vector<double>> c;  // per cluster word counts
  std::vector<double> total;            // per cluster token count
  std::vector<double> size;             // per cluster author count
};

Pooled pool(std::span<const FeatureVector> x, const std::vector<int>& z, std::size_t K,
            std::size_t V) {
  Pooled p;
  p.c.assign(K, std::vector<double>(V, 0.0));
  p.total.assign(K, 0.0);
  p.size.assign(K, 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    const auto k = static_cast<std::size_t>(z[n]);
    p.size[k] += 1.0;
    for (const auto& [w, v] : x[n].entries) {
      p.c[k][w] += v;
      p.total[k] += v;
    }
  }
  return p;
}

double prior_term(const std::vector<double>& sizes, const std::vector<double>& theta) {
  double s = 0.0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] > 0.0) s += sizes[k] * std::log(theta[k]);
  }
  return s;
}

std::vector<double> smoothed_theta(const std::vector<double>& sizes, double smoothing) {
  const double n = std::accumulate(sizes.begin(), sizes.end(), 0.0);
  const double K = static_cast<double>(sizes.size());
  const double pseudo = std::max(smoothing * n / K, 1e-12);
  std::vector<double> theta(sizes.size());
  for (std::size_t k = 0; k < sizes.size(); ++k) theta[k] = (sizes[k] + pseudo) / (n + pseudo * K);
  return theta;
}

void check_counts(std::span<const FeatureVector> x, std::size_t V) {
  for (const auto& fv : x) {
    for (const auto& [w, v] : fv.entries) {
      if (w >= V) throw InvalidArgument("count vector index outside vocabulary");
      if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("counts must be finite and nonnegative");
    }
  }
}

// One restart from uniform random assignments.
ClusterModel run_restart(std::span<const FeatureVector> x, const std::vector<double>& m,
                         const EMConfig& cfg, std::uint64_t seed, RestartTrace& trace) {
  const std::size_t K = cfg.K;
  const std::size_t V = m.size();
  ClusterModel model;
  model.K = K;
  model.m = m;
  model.beta.assign(K, std::vector<double>(V, 0.0));
  model.lambda_beta = cfg.lambda_beta;
  model.config = cfg;
  model.assignments.resize(x.size());

  Rng rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(K) - 1);
  for (auto& z : model.assignments) z = pick(rng);

  Pooled pooled = pool(x, model.assignments, K, V);
  model.theta = smoothed_theta(pooled.size, cfg.theta_smoothing);
  for (std::size_t k = 0; k < K; ++k) {
    update_beta(m, model.beta[k], pooled.c[k], pooled.total[k], cfg.lambda_beta,
                cfg.inner_iterations);
  }
  model.objective = joint_objective(model, x);
  trace.seed = seed;
  trace.objective.assign(1, model.objective);
  trace.converged = false;

  std::size_t it = 0;
  for (; it < cfg.max_iterations; ++it) {
    const double before = model.objective;
    model.assignments = assign_clusters(model, x);
    pooled = pool(x, model.assignments, K, V);

    const auto theta = smoothed_theta(pooled.size, cfg.theta_smoothing);
    if (prior_term(pooled.size, theta) >= prior_term(pooled.size, model.theta)) model.theta = theta;
    for (std::size_t k = 0; k < K; ++k) {
      update_beta(m, model.beta[k], pooled.c[k], pooled.total[k], cfg.lambda_beta,
                  cfg.inner_iterations);
    }
    model.objective = joint_objective(model, x);
    trace.objective.push_back(model.objective);
    if (model.objective - before < cfg.tolerance * std::max(1.0, std::abs(before))) {
      ++it;
      trace.converged = true;
      break;
    }
  }
  trace.iterations = it;
  return model;
}

}  // namespace

void EMConfig::validate() const {
  if (K == 0) throw InvalidArgument("clustering.K must be positive");
  if (restarts == 0) throw InvalidArgument("clustering.restarts must be >= 1");
  if (!(lambda_beta >= 0.0) || !std::isfinite(lambda_beta)) {
    throw InvalidArgument("clustering.lambda_beta must be finite and nonnegative");
  }
  if (!(tolerance >= 0.0)) throw InvalidArgument("clustering.tolerance must be nonnegative");
  if (!(theta_smoothing > 0.0)) throw InvalidArgument("clustering.theta_smoothing must be positive");
  if (inner_iterations == 0) throw InvalidArgument("clustering.inner_iterations must be positive");
}

std::vector<double> ClusterModel::log_probs(std::size_t k) const {
  if (k >= K) throw InvalidArgument("cluster index out of range");
  const double lse = log_sum_exp(m, beta[k]);
  std::vector<double> out(m.size());
  for (std::size_t w = 0; w < m.size(); ++w) out[w] = m[w] + beta[k][w] - lse;
  return out;
}

std::vector<double> ClusterModel::probs(std::size_t k) const {
  auto out = log_probs(k);
  for (auto& v : out) v = std::exp(v);
  return out;
}

std::vector<double> ClusterModel::background_probs() const {
  const std::vector<double> zero(m.size(), 0.0);
  const double lse = log_sum_exp(m, zero);
  std::vector<double> out(m.size());
  for (std::size_t w = 0; w < m.size(); ++w) out[w] = std::exp(m[w] - lse);
  return out;
}

std::vector<std::size_t> ClusterModel::cluster_sizes() const {
  std::vector<std::size_t> sizes(K, 0);
  for (int z : assignments) ++sizes[static_cast<std::size_t>(z)];
  return sizes;
}

std::vector<double> background_log_frequencies(std::span<const FeatureVector> counts,
                                               std::size_t vocab_size) {
  check_counts(counts, vocab_size);
  std::vector<double> c(vocab_size, 0.5);
  for (const auto& fv : counts) {
    for (const auto& [w, v] : fv.entries) c[w] += v;
  }
  const double total = std::accumulate(c.begin(), c.end(), 0.0);
  for (auto& v : c) v = std::log(v / total);
  return c;
}

double joint_objective(const ClusterModel& model, std::span<const FeatureVector> counts) {
  if (model.assignments.size() != counts.size()) {
    throw InvalidArgument("assignments do not match the count vectors");
  }
  for (int z : model.assignments) {
    if (z < 0 || static_cast<std::size_t>(z) >= model.K) {
      throw InvalidArgument("assignment outside [0, K)");
    }
  }
  check_counts(counts, model.m.size());
  // Evaluated from pooled counts, the same quantity the M-step climbs.
  const Pooled pooled = pool(counts, model.assignments, model.K, model.m.size());
  Accumulator s;
  for (std::size_t k = 0; k < model.K; ++k) {
    if (pooled.size[k] > 0.0) s.add(pooled.size[k] * std::log(model.theta[k]));
    s.add(cluster_objective(model.m, model.beta[k], pooled.c[k], pooled.total[k],
                            model.lambda_beta));
  }
  return s.value();
}

std::vector<int> assign_clusters(const ClusterModel& model, std::span<const FeatureVector> counts) {
  std::vector<std::vector<double>> lp(model.K);
  std::vector<double> log_theta(model.K);
  for (std::size_t k = 0; k < model.K; ++k) {
    lp[k] = model.log_probs(k);
    log_theta[k] = std::log(model.theta[k]);
  }
  std::vector<int> z(counts.size(), 0);
  for (std::size_t n = 0; n < counts.size(); ++n) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < model.K; ++k) {
      double s = log_theta[k];
      for (const auto& [w, v] : counts[n].entries) s += v * lp[k][w];
      if (s > best) {
        best = s;
        z[n] = static_cast<int>(k);
      }
    }
  }
  return z;
}

ClusterModel fit_clusters(std::span<const FeatureVector> counts, std::size_t vocab_size,
                          const EMConfig& cfg, FitDiagnostics* diagnostics) {
  cfg.validate();
  if (counts.empty()) throw InvalidArgument("clustering needs at least one author");
  if (vocab_size == 0) throw InvalidArgument("clustering needs a nonempty vocabulary");
  for (const auto& fv : counts) {
    if (fv.mode != FeatureMode::count) throw InvalidArgument("clustering expects count features");
  }
  const auto m = background_log_frequencies(counts, vocab_size);

  FitDiagnostics local;
  FitDiagnostics& diag = diagnostics ? *diagnostics : local;
  diag.restarts.assign(cfg.restarts, {});
  ClusterModel best;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    const auto seed = derive_seed(cfg.seed, "em-restart-" + std::to_string(r));
    ClusterModel model = run_restart(counts, m, cfg, seed, diag.restarts[r]);
    if (r == 0 || model.objective > best.objective) {
      best = std::move(model);
      diag.best_restart = r;
    }
  }
  return best;
}

ClusterModel fit_clusters(const Corpus& corpus, const Vocabulary& vocab, const EMConfig& cfg,
                          FitDiagnostics* diagnostics) {
  const auto x = featurize_corpus(corpus, vocab, FeatureMode::count);
  return fit_clusters(x, vocab.size(), cfg, diagnostics);
}

Corpus balance_by_gender(const Corpus& corpus, std::uint64_t seed) {
  std::vector<std::size_t> female, male;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].gender == Gender::female) female.push_back(i);
    if (corpus[i].gender == Gender::male) male.push_back(i);
  }
  if (female.empty() || male.empty()) throw InvalidArgument("balancing needs both genders");
  auto& major = female.size() > male.size() ? female : male;
  const std::size_t keep = std::min(female.size(), male.size());
  Rng rng = make_rng(seed, "balance-by-gender");
  std::shuffle(major.begin(), major.end(), rng);
  major.resize(keep);
  std::vector<Author> out;
  out.reserve(2 * keep);
  for (auto i : female) out.push_back(corpus[i]);
  for (auto i : male) out.push_back(corpus[i]);
  return Corpus(std::move(out));
}

std::vector<std::pair<std::string, double>> cluster_top_words(const ClusterModel& model,
                                                              const Vocabulary& vocab,
                                                              std::size_t k, std::size_t n) {
  if (vocab.size() != model.vocab_size()) throw InvalidArgument("vocabulary does not match model");
  const auto lp = model.log_probs(k);
  const auto bg = model.background_probs();
  std::vector<std::pair<std::string, double>> scored;
  scored.reserve(lp.size());
  for (std::size_t w = 0; w < lp.size(); ++w) scored.emplace_back(vocab.term(w), lp[w] - std::log(bg[w]));
  const std::size_t keep = std::min(n, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(),
                    [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second > b.second;
                      return a.first < b.first;
                    });
  scored.resize(keep);
  return scored;
}

ClusterCompositionReport cluster_composition_report(const ClusterModel& model,
                                                    const Corpus& corpus,
                                                    const Vocabulary& vocab,
                                                    const SocialGraph& graph,
                                                    const GenderMap& genders,
                                                    std::span<const Category> categories,
                                                    const CompositionConfig& cfg) {
  if (model.assignments.size() != corpus.size()) {
    throw InvalidArgument("model assignments do not match the corpus");
  }
  std::vector<ClusterCompositionRow> rows(model.K);
  for (std::size_t k = 0; k < model.K; ++k) rows[k].cluster = k;
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    auto& row = rows[static_cast<std::size_t>(model.assignments[n])];
    ++row.size;
    if (corpus[n].gender == Gender::female) ++row.female_authors;
    if (!graph.contains(corpus[n].author_id)) continue;
    for (const auto& friend_id : graph.neighbor_ids(corpus[n].author_id)) {
      const auto it = genders.find(friend_id);
      if (it == genders.end() || it->second == Gender::unknown) continue;
      ++row.friend_links;
      if (it->second == Gender::female) ++row.female_friend_links;
    }
  }

  const auto kept = [&](std::size_t k) { return rows[k].size > 0 && rows[k].size >= cfg.min_size; };
  std::vector<std::size_t> group_index(model.K, std::numeric_limits<std::size_t>::max());
  std::vector<std::string> names;
  for (std::size_t k = 0; k < model.K; ++k) {
    if (!kept(k)) continue;
    group_index[k] = names.size();
    names.push_back(std::to_string(k));
  }
  std::vector<std::size_t> group_of(corpus.size());
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    group_of[n] = group_index[static_cast<std::size_t>(model.assignments[n])];
  }
  const auto shares = category_report(corpus.authors(), group_of, names, vocab, categories);

  ClusterCompositionReport report;
  for (auto& row : rows) {
    if (!kept(row.cluster)) continue;
    row.female_share = static_cast<double>(row.female_authors) / static_cast<double>(row.size);
    row.female_friend_share = row.friend_links == 0
                                  ? std::numeric_limits<double>::quiet_NaN()
                                  : static_cast<double>(row.female_friend_links) /
                                        static_cast<double>(row.friend_links);
    if (const auto* s = shares.find(names[row.cluster])) row.category_shares = s->shares;
    for (auto& [term, score] : cluster_top_words(model, vocab, row.cluster, cfg.top_words)) {
      row.top_words.push_back(term);
    }
    report.rows.push_back(std::move(row));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) {
    return a.female_share > b.female_share;
  });

  std::vector<double> male_authors, male_friends;
  for (const auto& r : report.rows) {
    if (std::isnan(r.female_friend_share)) continue;
    male_authors.push_back(1.0 - r.female_share);
    male_friends.push_back(1.0 - r.female_friend_share);
  }
  try {
    report.trend = stats::least_squares(male_authors, male_friends);
  } catch (const InvalidArgument&) {
  }
  try {
    report.correlation = stats::pearson_r(male_authors, male_friends);
  } catch (const InvalidArgument&) {
  }
  return report;
}

void to_json(nlohmann::json& j, const ClusterModel& model) {
  const auto& c = model.config;
  j = nlohmann::json{
      {"K", model.K},
      {"objective", model.objective},
      {"lambda_beta", model.lambda_beta},
      {"theta", model.theta},
      {"m", model.m},
      {"beta", model.beta},
      {"assignments", model.assignments},
      {"config",
       {{"K", c.K},
        {"restarts", c.restarts},
        {"lambda_beta", c.lambda_beta},
        {"max_iterations", c.max_iterations},
        {"inner_iterations", c.inner_iterations},
        {"tolerance", c.tolerance},
        {"theta_smoothing", c.theta_smoothing},
        {"seed", c.seed}}}};
}

void write_cluster_report_csv(std::ostream& out, const ClusterCompositionReport& report) {
  out << "cluster,size,female_share,female_friend_share";
  for (auto c : kCategoryOrder) out << ',' << to_string(c);
  out << ",top_words\n";
  for (const auto& r : report.rows) {
    std::vector<std::string> fields{std::to_string(r.cluster), std::to_string(r.size),
                                    io::format_double(r.female_share),
                                    io::format_double(r.female_friend_share)};
    for (double s : r.category_shares) fields.push_back(io::format_double(s));
    std::string words;
    for (const auto& w : r.top_words) {
      if (!words.empty()) words += ' ';
      words += w;
    }
    fields.push_back(words);
    io::write_csv_row(out, fields);
  }
}

void write_cluster_assignments_csv(std::ostream& out, const Corpus& corpus,
                                   const ClusterModel& model) {
  if (model.assignments.size() != corpus.size()) {
    throw InvalidArgument("model assignments do not match the corpus");
  }
  out << "author_id,cluster\n";
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    io::write_csv_row(out, {corpus[n].author_id, std::to_string(model.assignments[n])});
  }
}

}  // namespace lexnet
