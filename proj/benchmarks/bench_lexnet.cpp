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


#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "lexnet/classifier.hpp"
#include "lexnet/clustering.hpp"
#include "lexnet/stats.hpp"
#include "lexnet/tokenizer.hpp"

namespace {

using lexnet::FeatureVector;

std::vector<FeatureVector> random_rows(std::size_t n, std::size_t dim, std::size_t nnz,
                                       lexnet::FeatureMode mode, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> col(0, static_cast<std::uint32_t>(dim - 1));
  std::uniform_int_distribution<int> count(1, 4);
  std::vector<FeatureVector> rows(n);
  for (auto& r : rows) {
    r.mode = mode;
    std::vector<bool> seen(dim, false);
    while (r.entries.size() < nnz) {
      const auto c = col(rng);
      if (seen[c]) continue;
      seen[c] = true;
      r.entries.emplace_back(c, mode == lexnet::FeatureMode::boolean ? 1.0 : count(rng));
    }
    std::sort(r.entries.begin(), r.entries.end());
  }
  return rows;
}

void BM_BinomialTail(benchmark::State& state) {
  const long n = state.range(0);
  long k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lexnet::stats::binomial_tail(k, n, 0.3));
    k = (k + 7) % (n + 1);
  }
}
BENCHMARK(BM_BinomialTail)->Arg(10)->Arg(100)->Arg(1000);

void BM_BetaBinomialTail(benchmark::State& state) {
  const long n = state.range(0);
  long k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lexnet::stats::beta_binomial_tail(k, n, 2.0, 5.0));
    k = (k + 3) % (n + 1);
  }
}
BENCHMARK(BM_BetaBinomialTail)->Arg(60)->Arg(1000);

void BM_LogRegTrain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t dim = 2000;
  const auto x = random_rows(n, dim, 40, lexnet::FeatureMode::boolean, 1);
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (const auto& [c, v] : x[i].entries) s += c < dim / 2 ? v : -v;
    y[i] = s >= 0.0 ? 1 : -1;
  }
  const lexnet::TrainConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lexnet::train(x, y, {dim, 0}, 1.0, cfg));
  }
}
BENCHMARK(BM_LogRegTrain)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_FitClusters(benchmark::State& state) {
  const std::size_t dim = 1000;
  const auto x = random_rows(500, dim, 60, lexnet::FeatureMode::count, 2);
  lexnet::EMConfig cfg;
  cfg.K = static_cast<std::size_t>(state.range(0));
  cfg.restarts = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lexnet::fit_clusters(x, dim, cfg));
  }
}
BENCHMARK(BM_FitClusters)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Tokenize(benchmark::State& state) {
  const lexnet::Tokenizer tok;
  const std::string text =
      "@alex omg lol that was sooo cute!!! #fb http://example.com/x 2010 can't wait :) ";
  std::string message;
  for (int i = 0; i < 8; ++i) message += text;
  for (auto _ : state) benchmark::DoNotOptimize(tok.tokenize(message));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(message.size()));
}
BENCHMARK(BM_Tokenize);

}  // namespace

BENCHMARK_MAIN();
