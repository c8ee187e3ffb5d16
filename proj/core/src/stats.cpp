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

#include "lexnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "lexnet/error.hpp"

namespace lexnet::stats {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// A pmf term relative to the mode, stored as mant * exp(expo) so that
// values far below double range keep a usable logarithm.
struct ScaledTerm {
  double mant = 1.0;
  double expo = 0.0;

  double value() const {
    if (expo == 0.0) return mant;
    return expo < -745.0 ? 0.0 : mant * std::exp(expo);
  }
  double log_value() const { return std::log(mant) + expo; }
};

void renormalize(ScaledTerm& t) {
  if (t.mant < 1e-150 || t.mant > 1e150) {
    t.expo += std::log(t.mant);
    t.mant = 1.0;
  }
}

// Unnormalised pmf over {0..n} built from ratio(y) = pmf(y+1)/pmf(y).
// `log_concave` promises a nonincreasing ratio, allowing a binary search
// for the mode; otherwise the mode is found from cumulative log ratios.
class PmfWalk {
 public:
  template <class Ratio>
  PmfWalk(long n, Ratio&& ratio, bool log_concave) : terms_(n + 1) {
    const long mode = log_concave ? mode_by_bisection(n, ratio)
                                  : mode_by_scan(n, ratio);
    terms_[mode] = ScaledTerm{};
    ScaledTerm t{};
    for (long y = mode; y < n; ++y) {
      t.mant *= ratio(y);
      renormalize(t);
      terms_[y + 1] = t;
    }
    t = ScaledTerm{};
    for (long y = mode - 1; y >= 0; --y) {
      t.mant *= 1.0 / ratio(y);
      renormalize(t);
      terms_[y] = t;
    }
    // Suffix sums, smallest terms first.
    suffix_.assign(terms_.size() + 1, 0.0);
    for (long y = n; y >= 0; --y) suffix_[y] = suffix_[y + 1] + terms_[y].value();
    total_ = suffix_[0];
  }

  // log Pr(Y >= k)
  double log_upper(long k) const {
    const long n = static_cast<long>(terms_.size()) - 1;
    if (k <= 0) return 0.0;
    if (k > n) return kNegInf;
    const double s = suffix_[k];
    if (s > 1e-290 * total_) return std::log(s / total_);
    // Deep tail: every term underflowed; sum in log space.
    double hi = kNegInf;
    for (long y = k; y <= n; ++y) hi = std::max(hi, terms_[y].log_value());
    double acc = 0.0;
    for (long y = k; y <= n; ++y) acc += std::exp(terms_[y].log_value() - hi);
    return hi + std::log(acc) - std::log(total_);
  }

  // Pr(Y >= k), summed directly (no exp/log round trip).
  double upper(long k) const {
    const long n = static_cast<long>(terms_.size()) - 1;
    if (k <= 0) return 1.0;
    if (k > n) return 0.0;
    return std::min(1.0, suffix_[k] / total_);
  }

  // Pr(Y <= k)
  double lower(long k) const {
    const long n = static_cast<long>(terms_.size()) - 1;
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    double s = 0.0;
    for (long y = 0; y <= k; ++y) s += terms_[y].value();
    return std::min(1.0, s / total_);
  }

 private:
  template <class Ratio>
  static long mode_by_bisection(long n, Ratio& ratio) {
    // First y with ratio(y) < 1; pmf is nondecreasing before it.
    long lo = 0, hi = n;
    while (lo < hi) {
      const long mid = lo + (hi - lo) / 2;
      if (ratio(mid) < 1.0) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }

  template <class Ratio>
  static long mode_by_scan(long n, Ratio& ratio) {
    double cur = 0.0, best = 0.0;
    long arg = 0;
    for (long y = 0; y < n; ++y) {
      cur += std::log(ratio(y));
      if (cur > best) {
        best = cur;
        arg = y + 1;
      }
    }
    return arg;
  }

  std::vector<ScaledTerm> terms_;
  std::vector<double> suffix_;
  double total_ = 0.0;
};

void check_binomial_args(long n, double p) {
  if (n < 0) throw InvalidArgument("binomial: n must be nonnegative");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("binomial: p must lie in [0,1], got " + std::to_string(p));
  }
}

PmfWalk binomial_walk(long n, double p) {
  const double odds = p / (1.0 - p);
  return PmfWalk(
      n,
      [n, odds](long y) {
        return static_cast<double>(n - y) / static_cast<double>(y + 1) * odds;
      },
      true);
}

PmfWalk beta_binomial_walk(long n, double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) ||
      !std::isfinite(beta)) {
    throw InvalidArgument("beta_binomial: alpha and beta must be positive");
  }
  if (n < 0) throw InvalidArgument("beta_binomial: n must be nonnegative");
  return PmfWalk(
      n,
      [n, alpha, beta](long y) {
        const double yd = static_cast<double>(y);
        const double rest = static_cast<double>(n - y);
        return (rest * (yd + alpha)) / ((yd + 1.0) * (rest - 1.0 + beta));
      },
      alpha >= 1.0 && beta >= 1.0);
}

}  // namespace

double binomial_tail(long k, long n, double p) {
  check_binomial_args(n, p);
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  return binomial_walk(n, p).upper(k);
}

double binomial_log_tail(long k, long n, double p) {
  check_binomial_args(n, p);
  if (k <= 0) return 0.0;
  if (k > n || p == 0.0) return kNegInf;
  if (p == 1.0) return 0.0;
  return binomial_walk(n, p).log_upper(k);
}

double binomial_lower_cdf(long k, long n, double p) {
  check_binomial_args(n, p);
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  return binomial_walk(n, p).lower(k);
}

double beta_binomial_tail(long k, long n, double alpha, double beta) {
  auto walk = beta_binomial_walk(n, alpha, beta);
  return walk.upper(k);
}

double beta_binomial_log_tail(long k, long n, double alpha, double beta) {
  auto walk = beta_binomial_walk(n, alpha, beta);
  return walk.log_upper(k);
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("pearson_r: length mismatch");
  if (x.size() < 3) throw InvalidArgument("pearson_r: need at least 3 samples");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    throw InvalidArgument("pearson_r: zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("normal_quantile: p must lie in (0,1)");
  }
  // Acklam (2003) rational approximation, |relative error| < 1.15e-9.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley step.
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

std::pair<double, double> fisher_interval(double r, std::size_t n, double level) {
  if (!(std::abs(r) < 1.0)) throw InvalidArgument("fisher_interval: |r| must be < 1");
  if (n < 4) throw InvalidArgument("fisher_interval: need n >= 4");
  if (!(level > 0.0 && level < 1.0)) {
    throw InvalidArgument("fisher_interval: level must lie in (0,1)");
  }
  const double z = std::atanh(r);
  const double half = normal_quantile((1.0 + level) / 2.0) /
                      std::sqrt(static_cast<double>(n) - 3.0);
  return {std::tanh(z - half), std::tanh(z + half)};
}

CorrelationResult correlate(std::span<const double> x, std::span<const double> y,
                            double level) {
  CorrelationResult out;
  out.r = pearson_r(x, y);
  out.n = x.size();
  out.level = level;
  if (std::abs(out.r) < 1.0 && out.n >= 4) {
    std::tie(out.ci_low, out.ci_high) = fisher_interval(out.r, out.n, level);
  } else {
    out.ci_low = out.ci_high = out.r;
  }
  return out;
}

BinnedSeries bin_and_aggregate(std::span<const double> keys,
                               std::span<const double> values, std::size_t bins,
                               BinMode mode) {
  if (keys.size() != values.size()) {
    throw InvalidArgument("bin_and_aggregate: length mismatch");
  }
  if (bins == 0) throw InvalidArgument("bin_and_aggregate: bins must be >= 1");
  if (keys.size() < bins) {
    throw InvalidArgument("bin_and_aggregate: fewer samples than bins");
  }
  const std::size_t n = keys.size();
  BinnedSeries out;
  out.mode = mode;
  out.bins.resize(bins);

  auto finish = [](Bin& bin, double key_sum, double value_sum) {
    if (bin.count == 0) {
      bin.mean_key = bin.mean_value = std::numeric_limits<double>::quiet_NaN();
    } else {
      bin.mean_key = key_sum / static_cast<double>(bin.count);
      bin.mean_value = value_sum / static_cast<double>(bin.count);
    }
  };

  if (mode == BinMode::equal_count) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::size_t pos = 0;
    for (std::size_t b = 0; b < bins; ++b) {
      const std::size_t size = n / bins + (b < n % bins ? 1 : 0);
      Bin& bin = out.bins[b];
      double ks = 0.0, vs = 0.0;
      bin.key_low = keys[order[pos]];
      for (std::size_t i = 0; i < size; ++i, ++pos) {
        ks += keys[order[pos]];
        vs += values[order[pos]];
        bin.key_high = keys[order[pos]];
      }
      bin.count = size;
      finish(bin, ks, vs);
    }
    return out;
  }

  const auto [lo_it, hi_it] = std::minmax_element(keys.begin(), keys.end());
  const double lo = *lo_it, hi = *hi_it;
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<double> ks(bins, 0.0), vs(bins, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t b = width > 0.0 ? static_cast<std::size_t>((keys[i] - lo) / width) : 0;
    b = std::min(b, bins - 1);
    ++out.bins[b].count;
    ks[b] += keys[i];
    vs[b] += values[i];
  }
  for (std::size_t b = 0; b < bins; ++b) {
    out.bins[b].key_low = lo + width * static_cast<double>(b);
    out.bins[b].key_high = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
    finish(out.bins[b], ks[b], vs[b]);
  }
  return out;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("least_squares: length mismatch");
  if (x.size() < 2) throw InvalidArgument("least_squares: need >= 2 points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw InvalidArgument("least_squares: constant x");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw InvalidArgument("adjusted_rand_index: length mismatch");
  auto choose2 = [](double v) { return v * (v - 1.0) / 2.0; };
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  double sum_joint = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [_, c] : joint) sum_joint += choose2(c);
  for (const auto& [_, c] : rows) sum_rows += choose2(c);
  for (const auto& [_, c] : cols) sum_cols += choose2(c);
  const double total = choose2(static_cast<double>(a.size()));
  if (total == 0.0) return 1.0;
  const double expected = sum_rows * sum_cols / total;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return sum_joint == expected ? 1.0 : 0.0;
  return (sum_joint - expected) / (max_index - expected);
}

}  // namespace lexnet::stats
