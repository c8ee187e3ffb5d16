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

// Independent reference implementations used by the unit and acceptance
// tests. They share no code with the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <vector>

namespace lexnet::testing {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// Exact Pr(Y >= k) for Y ~ BetaBinomial(n, a, b), integer a, b > 0:
// pmf(y) = C(n, y) rising(a, y) rising(b, n - y) / rising(a + b, n).
inline std::vector<cpp_rational> beta_binomial_tails(long n, long a, long b) {
  std::vector<cpp_rational> pmf(static_cast<std::size_t>(n + 1));
  auto rising = [](long x, long m) {
    cpp_int r = 1;
    for (long i = 0; i < m; ++i) r *= x + i;
    return r;
  };
  const cpp_int denom = rising(a + b, n);
  cpp_int choose = 1;
  for (long y = 0; y <= n; ++y) {
    if (y > 0) choose = choose * (n - y + 1) / y;
    pmf[static_cast<std::size_t>(y)] = cpp_rational(choose * rising(a, y) * rising(b, n - y), denom);
  }
  std::vector<cpp_rational> tail(static_cast<std::size_t>(n + 2), cpp_rational(0));
  for (long y = n; y >= 0; --y) {
    tail[static_cast<std::size_t>(y)] = tail[static_cast<std::size_t>(y + 1)] + pmf[static_cast<std::size_t>(y)];
  }
  return tail;
}

// Exact Pr(Y >= k) for Y ~ Binomial(n, num/den), all k in [0, n + 1].
inline std::vector<cpp_rational> binomial_tails(long n, long num, long den) {
  std::vector<cpp_int> term(static_cast<std::size_t>(n + 1));
  cpp_int choose = 1;
  std::vector<cpp_int> p_pow(static_cast<std::size_t>(n + 1)), q_pow(static_cast<std::size_t>(n + 1));
  p_pow[0] = 1;
  q_pow[0] = 1;
  for (long i = 1; i <= n; ++i) {
    p_pow[static_cast<std::size_t>(i)] = p_pow[static_cast<std::size_t>(i - 1)] * num;
    q_pow[static_cast<std::size_t>(i)] = q_pow[static_cast<std::size_t>(i - 1)] * (den - num);
  }
  for (long y = 0; y <= n; ++y) {
    if (y > 0) choose = choose * (n - y + 1) / y;
    term[static_cast<std::size_t>(y)] = choose * p_pow[static_cast<std::size_t>(y)] * q_pow[static_cast<std::size_t>(n - y)];
  }
  cpp_int total = 1;
  for (long i = 0; i < n; ++i) total *= den;
  std::vector<cpp_rational> tail(static_cast<std::size_t>(n + 2), cpp_rational(0));
  cpp_int acc = 0;
  for (long y = n; y >= 0; --y) {
    acc += term[static_cast<std::size_t>(y)];
    tail[static_cast<std::size_t>(y)] = cpp_rational(acc, total);
  }
  return tail;
}

// Same exact sums as binomial_tails, converted through one fixed-point
// division each (absolute accuracy 2^-96) instead of reduced rationals.
inline std::vector<double> binomial_tails_fixed(long n, long num, long den) {
  std::vector<cpp_int> term(static_cast<std::size_t>(n + 1));
  std::vector<cpp_int> p_pow(static_cast<std::size_t>(n + 1)), q_pow(static_cast<std::size_t>(n + 1));
  p_pow[0] = 1;
  q_pow[0] = 1;
  for (long i = 1; i <= n; ++i) {
    p_pow[static_cast<std::size_t>(i)] = p_pow[static_cast<std::size_t>(i - 1)] * num;
    q_pow[static_cast<std::size_t>(i)] = q_pow[static_cast<std::size_t>(i - 1)] * (den - num);
  }
  cpp_int choose = 1;
  for (long y = 0; y <= n; ++y) {
    if (y > 0) choose = choose * (n - y + 1) / y;
    term[static_cast<std::size_t>(y)] = choose * p_pow[static_cast<std::size_t>(y)] * q_pow[static_cast<std::size_t>(n - y)];
  }
  cpp_int total = 1;
  for (long i = 0; i < n; ++i) total *= den;
  std::vector<double> tail(static_cast<std::size_t>(n + 2), 0.0);
  cpp_int acc = 0;
  for (long y = n; y >= 0; --y) {
    acc += term[static_cast<std::size_t>(y)];
    const cpp_int scaled = (acc << 96) / total;
    tail[static_cast<std::size_t>(y)] = std::ldexp(scaled.convert_to<double>(), -96);
  }
  return tail;
}

// Exact skew decision: Pr(Y >= l) < 1/20 for Y ~ Binomial(M, 1/2).
inline bool skewed_exact(long l, long M) {
  cpp_int choose = 1, upper = 0;
  for (long y = 0; y <= M; ++y) {
    if (y > 0) choose = choose * (M - y + 1) / y;
    if (y >= l) upper += choose;
  }
  return upper * 20 < (cpp_int(1) << M);
}

// Absolute accuracy 2^-200 for values in [0, 1]; safe when numerator and
// denominator overflow a double on their own.
inline double to_double(const cpp_rational& r) {
  const cpp_int scaled = (boost::multiprecision::numerator(r) << 200) / boost::multiprecision::denominator(r);
  return std::ldexp(scaled.convert_to<double>(), -200);
}

}  // namespace lexnet::testing
