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
#include <span>
#include <utility>
#include <vector>

namespace lexnet::stats {

// ---------------------------------------------------------------------------
// Exact discrete tails
//
// Both families are evaluated by walking the pmf ratio recurrence outward
// from the mode and normalising by the walked total, so no log-gamma
// constant enters the result. Terms far below the mode are carried with a
// separate exponent, which keeps `*_log_tail` meaningful for tails far
// beyond double underflow (needed to rank very strong markers).
// ---------------------------------------------------------------------------

// Pr(Y >= k) for Y ~ Binomial(n, p). k may range over [0, n+1]; k <= 0
// yields 1 and k > n yields 0. Throws InvalidArgument for p outside [0,1]
// or n < 0.
double binomial_tail(long k, long n, double p);
double binomial_log_tail(long k, long n, double p);

// Pr(Y <= k) for Y ~ Binomial(n, p).
double binomial_lower_cdf(long k, long n, double p);

// Pr(Y >= k) for Y ~ BetaBinomial(n, alpha, beta). Throws InvalidArgument
// when alpha or beta is not strictly positive.
double beta_binomial_tail(long k, long n, double alpha, double beta);
double beta_binomial_log_tail(long k, long n, double alpha, double beta);

// ---------------------------------------------------------------------------
// Correlation
// ---------------------------------------------------------------------------

struct CorrelationResult {
  double r = 0.0;
  std::size_t n = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double level = 0.99;
};

// Product-moment correlation. Requires equal lengths >= 3 and nonzero
// variance in both series.
double pearson_r(std::span<const double> x, std::span<const double> y);

// Standard normal quantile: Acklam's rational approximation followed by one
// Halley step against erfc, giving ~1e-15 relative accuracy on (0,1).
double normal_quantile(double p);

// Fisher-transform confidence interval for a correlation: tanh(atanh(r) -+
// z_crit / sqrt(n - 3)). Requires |r| < 1 and n >= 4.
std::pair<double, double> fisher_interval(double r, std::size_t n,
                                          double level = 0.99);

// pearson_r plus its Fisher interval.
CorrelationResult correlate(std::span<const double> x, std::span<const double> y,
                            double level = 0.99);

// ---------------------------------------------------------------------------
// Binned aggregation (decile plots)
// ---------------------------------------------------------------------------

enum class BinMode { equal_count, equal_width };

struct Bin {
  double key_low = 0.0;   // smallest key in the bin (edge for equal_width)
  double key_high = 0.0;  // largest key in the bin (edge for equal_width)
  std::size_t count = 0;
  double mean_key = 0.0;    // NaN when count == 0
  double mean_value = 0.0;  // NaN when count == 0
};

struct BinnedSeries {
  BinMode mode = BinMode::equal_count;
  std::vector<Bin> bins;
};

// Groups (key, value) samples into `bins` bins and averages both per bin.
// equal_count: stable sort by key, then consecutive runs whose sizes differ
// by at most one (the larger runs first). equal_width: bins span
// [min key, max key] uniformly; the maximum lands in the last bin.
// Throws InvalidArgument when lengths differ, bins == 0, or there are fewer
// samples than bins.
BinnedSeries bin_and_aggregate(std::span<const double> keys,
                               std::span<const double> values,
                               std::size_t bins = 10,
                               BinMode mode = BinMode::equal_count);

// ---------------------------------------------------------------------------
// Misc
// ---------------------------------------------------------------------------

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y ~ slope * x + intercept. Requires >= 2 points
// and nonconstant x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

// Hubert-Arabie adjusted Rand index between two labelings of equal length.
// Returns 1 when both labelings are identical partitions.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

}  // namespace lexnet::stats
