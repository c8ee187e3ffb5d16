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

#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "lexnet/classifier.hpp"
#include "lexnet/error.hpp"

using namespace lexnet;

namespace {

FeatureVector fv(std::vector<std::pair<std::uint32_t, double>> e) {
  FeatureVector v;
  v.entries = std::move(e);
  return v;
}

struct Dataset {
  std::vector<FeatureVector> x;
  std::vector<int> y;
};

// Noisy linearly separable-ish data over `dim` boolean features.
Dataset make_dataset(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> truth(dim);
  for (auto& t : truth) t = z(rng);
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    FeatureVector v;
    double m = 0.3;
    for (std::uint32_t j = 0; j < dim; ++j) {
      if (rng() % 3 == 0) {
        v.entries.emplace_back(j, 1.0);
        m += truth[j];
      }
    }
    d.x.push_back(v);
    d.y.push_back(m + z(rng) > 0 ? 1 : -1);
  }
  return d;
}

}  // namespace

TEST_CASE("predicted probabilities") {
  LogRegModel m;
  m.vocab_size = 2;
  m.weights = {0.0, 0.0, 0.0};
  CHECK(predict_proba(m, fv({{0, 1.0}})) == 0.5);
  m.weights = {std::log(3.0), 0.0, 0.0};
  CHECK(predict_proba(m, fv({{0, 1.0}})) == doctest::Approx(0.75).epsilon(1e-15));
  m.weights = {-std::log(3.0), 0.0, 0.0};
  CHECK(predict_proba(m, fv({{0, 1.0}})) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(predict_proba(m, fv({{2, 1.0}})), InvalidArgument);
}

TEST_CASE("one-dimensional optimum matches a scalar root oracle") {
  // F(w, b) = log s(w + b) + log s(w - b) - w^2; b = 0 by symmetry and
  // dF/dw = 2 s(-w) - 2 w = 0.
  const std::vector<FeatureVector> x{fv({{0, 1.0}}), fv({{0, -1.0}})};
  const std::vector<int> y{1, -1};
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (1.0 / (1.0 + std::exp(mid)) - mid > 0 ? lo : hi) = mid;
  }
  TrainConfig cfg;
  cfg.convergence_tolerance = 1e-10;
  const auto model = train(x, y, {1, 0}, 1.0, cfg);
  CHECK(model.weights[0] > 0.0);
  CHECK(model.weights[0] == doctest::Approx(lo).epsilon(1e-8));
  CHECK(std::abs(model.bias()) < 1e-8);
}

TEST_CASE("heavy regularisation shrinks weights") {
  const auto d = make_dataset(200, 15, 1);
  const auto model = train(d.x, d.y, {15, 0}, 1e9, TrainConfig{});
  CHECK(model.weight_norm() < 1e-3);
}

TEST_CASE("analytic gradient matches central differences") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = make_dataset(30, 20, 100 + static_cast<std::uint64_t>(trial));
    std::vector<double> w(21);
    for (auto& v : w) v = z(rng);
    std::vector<double> g;
    logreg_objective(w, d.x, d.y, 0.7, &g);
    const double h = 1e-5;
    double num = 0, den = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      auto wp = w, wm = w;
      wp[j] += h;
      wm[j] -= h;
      const double fd = (logreg_objective(wp, d.x, d.y, 0.7) - logreg_objective(wm, d.x, d.y, 0.7)) / (2 * h);
      num += (fd - g[j]) * (fd - g[j]);
      den += g[j] * g[j];
    }
    CHECK(std::sqrt(num / den) < 1e-5);
  }
}

TEST_CASE("training reaches the gradient tolerance and ascends monotonically") {
  const auto d = make_dataset(300, 25, 2);
  TrainingTrace trace;
  const auto model = train(d.x, d.y, {25, 0}, 0.1, TrainConfig{}, &trace);
  CHECK(trace.converged);
  CHECK(trace.gradient_norm <= 1e-6);
  for (std::size_t i = 1; i < trace.objective.size(); ++i) {
    CHECK(trace.objective[i] >= trace.objective[i - 1]);
  }
  std::vector<double> g;
  logreg_objective(model.weights, d.x, d.y, 0.1, &g);
  double norm = 0;
  for (double v : g) norm += v * v;
  CHECK(std::sqrt(norm) <= 1e-6);
}

TEST_CASE("negating labels negates the weights") {
  const auto d = make_dataset(250, 12, 3);
  auto flipped = d.y;
  for (auto& v : flipped) v = -v;
  const auto a = train(d.x, d.y, {12, 0}, 0.5, TrainConfig{});
  const auto b = train(d.x, flipped, {12, 0}, 0.5, TrainConfig{});
  for (std::size_t j = 0; j < a.weights.size(); ++j) CHECK(std::abs(a.weights[j] + b.weights[j]) <= 1e-6);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(predict_proba(a, d.x[i]) == doctest::Approx(1.0 - predict_proba(b, d.x[i])).epsilon(1e-6));
  }
}

TEST_CASE("weight norm shrinks as lambda grows") {
  const auto d = make_dataset(300, 20, 4);
  double prev = std::numeric_limits<double>::infinity();
  for (double lambda : {0.001, 0.01, 0.1, 1.0, 10.0, 100.0}) {
    const auto m = train(d.x, d.y, {20, 0}, lambda, TrainConfig{});
    CHECK(m.weight_norm() <= prev + 1e-8);
    prev = m.weight_norm();
  }
}

TEST_CASE("training input validation") {
  const std::vector<FeatureVector> x{fv({{0, 1.0}}), fv({{0, 2.0}})};
  CHECK_THROWS_AS(train(x, std::vector<int>{1, 1}, {1, 0}, 1.0, TrainConfig{}), InvalidArgument);
  const std::vector<FeatureVector> bad{fv({{0, std::nan("")}}), fv({{0, 1.0}})};
  CHECK_THROWS_AS(train(bad, std::vector<int>{1, -1}, {1, 0}, 1.0, TrainConfig{}), InvalidArgument);
  CHECK_THROWS_AS(train(x, std::vector<int>{1, -1}, {1, 0}, -1.0, TrainConfig{}), InvalidArgument);
  TrainConfig empty;
  empty.lambda_grid.clear();
  CHECK_THROWS_AS(empty.validate(), InvalidArgument);
}

TEST_CASE("model json round trip") {
  const auto d = make_dataset(100, 5, 5);
  const auto m = train(d.x, d.y, {5, 0}, 1.0, TrainConfig{});
  const nlohmann::json j = m;
  const auto back = j.get<LogRegModel>();
  CHECK(back.weights == m.weights);
  CHECK(back.lambda == m.lambda);
  CHECK(j.at("dimension") == 5);
}

TEST_CASE("cross-validation folds partition the data and results reproduce") {
  const auto d = make_dataset(203, 10, 6);
  TrainConfig cfg;
  cfg.seed = 99;
  const auto a = cross_validate(d.x, d.y, {10, 0}, cfg, 10);
  const auto b = cross_validate(d.x, d.y, {10, 0}, cfg, 10);
  std::vector<std::size_t> sizes(10, 0);
  for (auto f : a.fold_of) ++sizes[f];
  CHECK(*std::max_element(sizes.begin(), sizes.end()) - *std::min_element(sizes.begin(), sizes.end()) <= 1);
  CHECK(a.fold_of == b.fold_of);
  CHECK(a.p_positive == b.p_positive);
  CHECK(a.fold_lambda == b.fold_lambda);
  CHECK(a.accuracy == b.accuracy);
  CHECK(a.accuracy > 0.6);
  for (double acc : a.fold_accuracy) {
    CHECK(acc >= 0.0);
    CHECK(acc <= 1.0);
  }
  std::set<double> grid(cfg.lambda_grid.begin(), cfg.lambda_grid.end());
  for (double l : a.fold_lambda) CHECK(grid.contains(l));
  CHECK_THROWS_AS(cross_validate(d.x, d.y, {10, 0}, cfg, 2), InvalidArgument);
}

TEST_CASE("cross-validation without features predicts the majority class") {
  std::vector<FeatureVector> x(100);
  std::vector<int> y(100, -1);
  for (int i = 0; i < 41; ++i) y[static_cast<std::size_t>(i)] = 1;
  const auto r = cross_validate(x, y, {3, 0}, TrainConfig{}, 10);
  CHECK(r.accuracy == doctest::Approx(0.59));
}

TEST_CASE("network features") {
  NetworkComposition c;
  c.friends = 4;
  c.male = 3;
  c.female = 1;
  const auto out = augment_with_network_features(fv({{1, 1.0}}), 5, c);
  REQUIRE(out.entries.size() == 4);
  CHECK(out.entries[1] == std::pair<std::uint32_t, double>{5, 0.75});
  CHECK(out.entries[2] == std::pair<std::uint32_t, double>{6, 0.25});
  CHECK(out.entries[3].first == 7);
  CHECK(out.entries[3].second == doctest::Approx(std::log(5.0)));
  NetworkComposition all_f;
  all_f.friends = 10;
  all_f.female = 10;
  const auto f = augment_with_network_features(FeatureVector{}, 5, all_f);
  REQUIRE(f.entries.size() == 2);  // zero male share is not stored
  CHECK(f.entries[0] == std::pair<std::uint32_t, double>{6, 1.0});
  CHECK(f.entries[1].second == doctest::Approx(std::log(11.0)));
  CHECK_THROWS_AS(augment_with_network_features(FeatureVector{}, 5, NetworkComposition{}), InvalidArgument);
}
