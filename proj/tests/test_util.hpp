// Copyright 2026 The entsketch Authors.
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

// Helpers shared by the unit tests: a small seeded generator for property
// tests and a few sample statistics.

#ifndef ENTSKETCH_TESTS_TEST_UTIL_HPP
#define ENTSKETCH_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "entsketch/rng.hpp"

namespace entsketch::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed, 0x7e57) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform_open(); }

  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
    return lo + static_cast<std::uint64_t>(
                    (static_cast<unsigned __int128>(rng_()) * (hi - lo + 1)) >> 64);
  }

  bool coin() { return (rng_() >> 63) != 0; }

  std::string item(std::uint64_t alphabet) { return "item-" + std::to_string(integer(0, alphabet - 1)); }

  // Quantities mix small integers with fractions so both exact and inexact
  // binary values are exercised.
  double quantity() {
    const double base = static_cast<double>(integer(1, 20));
    return coin() ? base : base * uniform(0.01, 3.0);
  }

 private:
  CounterRng rng_;
};

struct Update {
  std::string item;
  double delta;
};

inline std::vector<Update> random_stream(Gen& g, std::size_t length, std::uint64_t alphabet) {
  std::vector<Update> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back({g.item(alphabet), g.quantity()});
  return out;
}

struct MeanSe {
  double mean;
  double se;
};

inline MeanSe mean_se(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double n = static_cast<double>(xs.size());
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

// Two-sample KS critical value at significance level alpha.
inline double ks_critical(double alpha, std::size_t n, std::size_t m) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) / static_cast<double>(n * m));
}

}  // namespace entsketch::testing

#endif  // ENTSKETCH_TESTS_TEST_UTIL_HPP
