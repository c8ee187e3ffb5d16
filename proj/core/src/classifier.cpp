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

#include "lexnet/classifier.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <ostream>

#include "lexnet/error.hpp"
#include "lexnet/io.hpp"
#include "lexnet/rng.hpp"

namespace lexnet {
namespace {

double log_sigmoid(double m) {
  return m >= 0.0 ? -std::log1p(std::exp(-m)) : m - std::log1p(std::exp(m));
}

double sigmoid(double m) {
  if (m >= 0.0) return 1.0 / (1.0 + std::exp(-m));
  const double e = std::exp(m);
  return e / (1.0 + e);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Examples selected from a full design matrix.
struct Rows {
  std::span<const FeatureVector> x;
  std::span<const int> y;
  const std::vector<std::size_t>* index = nullptr;  // null = every row

  std::size_t size() const { return index ? index->size() : x.size(); }
  std::size_t at(std::size_t k) const { return index ? (*index)[k] : k; }
};

double margin_of(std::span<const double> w, const FeatureVector& x) {
  const std::size_t dim = w.size() - 1;
  double m = w[dim];
  for (const auto& [j, v] : x.entries) {
    if (j >= dim) throw InvalidArgument("feature index outside model dimension");
    m += w[j] * v;
  }
  return m;
}

double objective_on(std::span<const double> w, const Rows& rows, double lambda,
                    std::vector<double>* gradient) {
  const std::size_t dim = w.size() - 1;
  if (gradient) gradient->assign(w.size(), 0.0);
  double f = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t i = rows.at(k);
    const double yi = static_cast<double>(rows.y[i]);
    const double ym = yi * margin_of(w, rows.x[i]);
    f += log_sigmoid(ym);
    if (gradient) {
      const double coef = yi * sigmoid(-ym);
      for (const auto& [j, v] : rows.x[i].entries) (*gradient)[j] += coef * v;
      (*gradient)[dim] += coef;
    }
  }
  double sq = 0.0;
  for (std::size_t j = 0; j < dim; ++j) sq += w[j] * w[j];
  f -= lambda * sq;
  if (gradient) {
    for (std::size_t j = 0; j < dim; ++j) (*gradient)[j] -= 2.0 * lambda * w[j];
  }
  return f;
}

void check_training_data(const Rows& rows, std::size_t dim) {
  bool pos = false, neg = false;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t i = rows.at(k);
    if (rows.y[i] == 1) {
      pos = true;
    } else if (rows.y[i] == -1) {
      neg = true;
    } else {
      throw InvalidArgument("labels must be +1 or -1");
    }
    for (const auto& [j, v] : rows.x[i].entries) {
      if (!std::isfinite(v)) throw InvalidArgument("non-finite feature value");
      if (j >= dim) throw InvalidArgument("feature index outside layout");
    }
  }
  if (!pos || !neg) throw InvalidArgument("training data must contain both labels");
}

// L-BFGS ascent with Armijo backtracking.
void maximize(std::vector<double>& w, const Rows& rows, double lambda, const TrainConfig& cfg,
              TrainingTrace& trace) {
  constexpr std::size_t kHistory = 10;
  constexpr double kArmijo = 1e-4;
  struct Pair {
    std::vector<double> s, y;  // y is the negated gradient change
    double rho;
  };
  std::deque<Pair> history;

  std::vector<double> g, g_new, w_new(w.size()), d(w.size());
  double f = objective_on(w, rows, lambda, &g);
  trace.objective.assign(1, f);
  trace.converged = false;

  std::size_t it = 0;
  for (; it < cfg.max_iterations; ++it) {
    const double gnorm = std::sqrt(dot(g, g));
    trace.gradient_norm = gnorm;
    if (gnorm <= cfg.convergence_tolerance) {
      trace.converged = true;
      break;
    }

    // Two-loop recursion for d = H g.
    d = g;
    std::vector<double> alpha(history.size());
    for (std::size_t h = history.size(); h-- > 0;) {
      alpha[h] = history[h].rho * dot(history[h].s, d);
      for (std::size_t j = 0; j < d.size(); ++j) d[j] -= alpha[h] * history[h].y[j];
    }
    if (!history.empty()) {
      const auto& last = history.back();
      const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
      for (auto& v : d) v *= gamma;
    }
    for (std::size_t h = 0; h < history.size(); ++h) {
      const double beta = history[h].rho * dot(history[h].y, d);
      for (std::size_t j = 0; j < d.size(); ++j) d[j] += history[h].s[j] * (alpha[h] - beta);
    }
    double slope = dot(d, g);
    if (!(slope > 0.0)) {
      history.clear();
      d = g;
      slope = gnorm * gnorm;
    }

    double step = history.empty() ? std::min(1.0, 1.0 / gnorm) : 1.0;
    bool accepted = false;
    double f_new = f;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t j = 0; j < w.size(); ++j) w_new[j] = w[j] + step * d[j];
      f_new = objective_on(w_new, rows, lambda, &g_new);
      if (std::isfinite(f_new) && f_new >= f + kArmijo * step * slope && f_new > f) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (history.empty()) break;  // no ascent possible at machine precision
      history.clear();
      continue;
    }

    Pair p;
    p.s.resize(w.size());
    p.y.resize(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
      p.s[j] = w_new[j] - w[j];
      p.y[j] = g[j] - g_new[j];
    }
    const double sy = dot(p.s, p.y);
    if (sy > 1e-12 * std::sqrt(dot(p.s, p.s) * dot(p.y, p.y))) {
      p.rho = 1.0 / sy;
      history.push_back(std::move(p));
      if (history.size() > kHistory) history.pop_front();
    }
    w.swap(w_new);
    g.swap(g_new);
    f = f_new;
    trace.objective.push_back(f);
  }
  trace.iterations = it;
  trace.gradient_norm = std::sqrt(dot(g, g));
  if (trace.gradient_norm <= cfg.convergence_tolerance) trace.converged = true;
}

LogRegModel train_rows(const Rows& rows, FeatureLayout layout, double lambda,
                       const TrainConfig& cfg, TrainingTrace* trace,
                       const std::vector<double>* warm_start) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be a finite nonnegative number");
  }
  check_training_data(rows, layout.dim());
  LogRegModel model;
  model.lambda = lambda;
  model.vocab_size = layout.vocab_size;
  model.network_feature_count = layout.network_features;
  if (warm_start && warm_start->size() == layout.dim() + 1) {
    model.weights = *warm_start;
  } else {
    model.weights.assign(layout.dim() + 1, 0.0);
  }
  TrainingTrace local;
  maximize(model.weights, rows, lambda, cfg, trace ? *trace : local);
  return model;
}

}  // namespace

double LogRegModel::margin(const FeatureVector& x) const {
  if (weights.size() != feature_dim() + 1) {
    throw InvalidArgument("model weights do not match its dimensions");
  }
  return margin_of(weights, x);
}

double LogRegModel::weight_norm() const {
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < weights.size(); ++j) s += weights[j] * weights[j];
  return std::sqrt(s);
}

double predict_proba(const LogRegModel& model, const FeatureVector& x) {
  return sigmoid(model.margin(x));
}

void TrainConfig::validate() const {
  if (lambda_grid.empty()) throw InvalidArgument("classifier.lambda_grid must not be empty");
  for (double l : lambda_grid) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw InvalidArgument("classifier.lambda_grid entries must be positive");
    }
  }
  if (!(convergence_tolerance > 0.0)) {
    throw InvalidArgument("classifier.convergence_tolerance must be positive");
  }
  if (max_iterations == 0) throw InvalidArgument("classifier.max_iterations must be positive");
}

double logreg_objective(std::span<const double> w, std::span<const FeatureVector> x,
                        std::span<const int> y, double lambda, std::vector<double>* gradient) {
  if (x.size() != y.size()) throw InvalidArgument("feature and label counts differ");
  if (w.empty()) throw InvalidArgument("weight vector must include the bias");
  return objective_on(w, Rows{x, y, nullptr}, lambda, gradient);
}

LogRegModel train(std::span<const FeatureVector> x, std::span<const int> y, FeatureLayout layout,
                  double lambda, const TrainConfig& cfg, TrainingTrace* trace,
                  const std::vector<double>* warm_start) {
  if (x.size() != y.size()) throw InvalidArgument("feature and label counts differ");
  return train_rows(Rows{x, y, nullptr}, layout, lambda, cfg, trace, warm_start);
}

void to_json(nlohmann::json& j, const LogRegModel& model) {
  j = nlohmann::json{{"lambda", model.lambda},
                     {"vocab_size", model.vocab_size},
                     {"network_feature_count", model.network_feature_count},
                     {"dimension", model.feature_dim()},
                     {"weights", model.weights}};
}

void from_json(const nlohmann::json& j, LogRegModel& model) {
  model.lambda = j.at("lambda").get<double>();
  model.vocab_size = j.at("vocab_size").get<std::size_t>();
  model.network_feature_count = j.value("network_feature_count", std::size_t{0});
  model.weights = j.at("weights").get<std::vector<double>>();
  if (model.weights.size() != model.feature_dim() + 1) {
    throw InvalidArgument("model JSON: weights length must equal dimension + 1");
  }
}

std::vector<std::size_t> assign_folds(std::size_t n, std::size_t folds, std::uint64_t seed) {
  if (folds == 0) throw InvalidArgument("folds must be positive");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng = make_rng(seed, "cv-folds");
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> fold_of(n);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t size = n / folds + (f < n % folds ? 1 : 0);
    for (std::size_t k = 0; k < size; ++k) fold_of[order[pos++]] = f;
  }
  return fold_of;
}

CVReport cross_validate(std::span<const FeatureVector> x, std::span<const int> y,
                        FeatureLayout layout, const TrainConfig& cfg, std::size_t folds) {
  cfg.validate();
  if (x.size() != y.size()) throw InvalidArgument("feature and label counts differ");
  if (folds < 3) throw InvalidArgument("cross-validation needs at least 3 folds");
  if (x.size() < folds) throw InvalidArgument("fewer examples than folds");

  CVReport report;
  report.fold_of = assign_folds(x.size(), folds, cfg.seed);
  report.p_positive.assign(x.size(), 0.5);

  std::vector<double> grid = cfg.lambda_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::size_t pooled_correct = 0;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t dev_fold = (f + 1) % folds;
    std::vector<std::size_t> train_idx, dev_idx, test_idx;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const std::size_t fi = report.fold_of[i];
      if (fi == f) {
        test_idx.push_back(i);
      } else if (fi == dev_fold) {
        dev_idx.push_back(i);
      } else {
        train_idx.push_back(i);
      }
    }
    const Rows train_rows_view{x, y, &train_idx};
    try {
      check_training_data(train_rows_view, layout.dim());
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("fold " + std::to_string(f) + ": " + e.what());
    }

    auto accuracy = [&](const LogRegModel& m, const std::vector<std::size_t>& idx) {
      std::size_t ok = 0;
      for (std::size_t i : idx) {
        const int pred = m.margin(x[i]) > 0.0 ? 1 : -1;
        if (pred == y[i]) ++ok;
      }
      return idx.empty() ? 0.0 : static_cast<double>(ok) / static_cast<double>(idx.size());
    };

    // Largest lambda first so each fit warm-starts the next, weaker one.
    std::vector<LogRegModel> models(grid.size());
    const std::vector<double>* warm = nullptr;
    for (std::size_t g = grid.size(); g-- > 0;) {
      models[g] = train_rows(train_rows_view, layout, grid[g], cfg, nullptr, warm);
      warm = &models[g].weights;
    }
    std::size_t best = 0;
    double best_acc = -1.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double acc = accuracy(models[g], dev_idx);
      if (acc > best_acc) {
        best_acc = acc;
        best = g;
      }
    }
    const LogRegModel& chosen = models[best];
    std::size_t correct = 0;
    for (std::size_t i : test_idx) {
      const double m = chosen.margin(x[i]);
      report.p_positive[i] = sigmoid(m);
      if ((m > 0.0 ? 1 : -1) == y[i]) ++correct;
    }
    pooled_correct += correct;
    report.fold_lambda.push_back(grid[best]);
    report.fold_accuracy.push_back(static_cast<double>(correct) /
                                   static_cast<double>(test_idx.size()));
  }
  report.accuracy = static_cast<double>(pooled_correct) / static_cast<double>(x.size());
  report.mean_fold_accuracy =
      std::accumulate(report.fold_accuracy.begin(), report.fold_accuracy.end(), 0.0) /
      static_cast<double>(folds);
  return report;
}

std::vector<int> gender_labels(const Corpus& corpus) {
  std::vector<int> y;
  y.reserve(corpus.size());
  for (const auto& a : corpus.authors()) {
    if (a.gender == Gender::unknown) {
      throw InvalidArgument("author " + a.author_id + " has unknown gender");
    }
    y.push_back(gender_label(a.gender));
  }
  return y;
}

std::vector<double> own_gender_confidence(const Corpus& corpus, const CVReport& report) {
  if (report.p_positive.size() != corpus.size()) {
    throw InvalidArgument("CV report does not match corpus");
  }
  std::vector<double> out(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const double p = report.p_positive[i];
    out[i] = corpus[i].gender == Gender::female ? p : 1.0 - p;
  }
  return out;
}

void write_cv_report_csv(std::ostream& out, const Corpus& corpus, const CVReport& report) {
  const auto own = own_gender_confidence(corpus, report);
  out << "author_id,true_gender,p_own_gender,fold\n";
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    io::write_csv_row(out, {corpus[i].author_id, std::string(to_string(corpus[i].gender)),
                            io::format_double(own[i]), std::to_string(report.fold_of[i])});
  }
}

FeatureVector augment_with_network_features(const FeatureVector& x, std::size_t vocab_size,
                                            const NetworkComposition& composition) {
  if (composition.friends == 0) throw InvalidArgument("network features need at least one friend");
  FeatureVector out = x;
  const auto base = static_cast<std::uint32_t>(vocab_size);
  const double values[kNetworkFeatureCount] = {
      composition.male_share(), composition.female_share(),
      std::log1p(static_cast<double>(composition.friends))};
  for (std::uint32_t k = 0; k < kNetworkFeatureCount; ++k) {
    if (values[k] != 0.0) out.entries.emplace_back(base + k, values[k]);
  }
  return out;
}

FeatureVector augment_with_network_features(const FeatureVector& x, std::size_t vocab_size,
                                            std::string_view author_id,
                                            const SocialGraph& graph, const GenderMap& genders) {
  return augment_with_network_features(x, vocab_size,
                                       network_composition(author_id, graph, genders));
}

std::vector<BudgetPoint> token_budget_curve(const Corpus& corpus, const Vocabulary& vocab,
                                            const SocialGraph& graph,
                                            std::span<const std::size_t> budgets,
                                            const TrainConfig& cfg, std::size_t folds) {
  const auto y = gender_labels(corpus);
  const auto genders = corpus.genders();
  std::vector<NetworkComposition> comps;
  comps.reserve(corpus.size());
  for (const auto& a : corpus.authors()) {
    comps.push_back(network_composition(a.author_id, graph, genders));
  }
  std::vector<BudgetPoint> out;
  for (std::size_t budget : budgets) {
    const auto text = featurize_corpus(corpus, vocab, FeatureMode::boolean, budget);
    std::vector<FeatureVector> fused;
    fused.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      fused.push_back(augment_with_network_features(text[i], vocab.size(), comps[i]));
    }
    BudgetPoint p;
    p.budget = budget;
    p.accuracy_text = cross_validate(text, y, {vocab.size(), 0}, cfg, folds).accuracy;
    p.accuracy_network =
        cross_validate(fused, y, {vocab.size(), kNetworkFeatureCount}, cfg, folds).accuracy;
    out.push_back(p);
  }
  return out;
}

}  // namespace lexnet
