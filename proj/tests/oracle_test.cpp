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

#include "entsketch/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"

namespace entsketch {
namespace {

AccumulationVector from_counts(const std::vector<double>& counts) {
  AccumulationVector acc;
  for (std::size_t i = 0; i < counts.size(); ++i) acc.add("c" + std::to_string(i), counts[i]);
  return acc;
}

TEST(OracleTest, UniformOverFour) {
  const auto acc = from_counts({3, 3, 3, 3});
  EXPECT_NEAR(shannon_entropy(acc), std::log(4.0), 1e-15);
  const Entropies e = exact_entropies(acc, 0.5);
  EXPECT_NEAR(e.renyi, std::log(4.0), 1e-14);
  EXPECT_NEAR(e.tsallis, (4 * std::sqrt(0.25) - 1) / 0.5, 1e-14);
}

TEST(OracleTest, SingleItem) {
  AccumulationVector acc;
  acc.add("x", 7.0);
  for (double alpha : {0.3, 0.9, 1.5}) {
    const Entropies e = exact_entropies(acc, alpha);
    EXPECT_EQ(e.shannon, 0.0);
    EXPECT_EQ(e.renyi, 0.0);
    EXPECT_EQ(e.tsallis, 0.0);
  }
}

TEST(OracleTest, HalfQuarterQuarter) {
  EXPECT_NEAR(shannon_entropy(from_counts({2, 1, 1})), 1.5 * std::log(2.0), 1e-15);
  EXPECT_NEAR(shannon_entropy(std::vector<double>{0.5, 0.25, 0.25}), 1.0397207708399179, 1e-15);
}

TEST(OracleTest, ZeroCountsIgnored) {
  AccumulationVector acc = from_counts({1, 1});
  acc.add("gone", 5.0);
  acc.add("gone", -5.0);
  EXPECT_EQ(acc.count("gone"), 0.0);
  EXPECT_EQ(acc.probabilities().size(), 2u);
  EXPECT_NEAR(shannon_entropy(acc), std::log(2.0), 1e-15);
  EXPECT_EQ(acc.count("never"), 0.0);
}

TEST(OracleTest, Errors) {
  AccumulationVector empty;
  EXPECT_THROW(shannon_entropy(empty), std::domain_error);
  AccumulationVector negative = from_counts({3, 1});
  negative.add("c1", -2.0);
  EXPECT_THROW(shannon_entropy(negative), std::domain_error);
  const auto acc = from_counts({1, 2});
  EXPECT_THROW(exact_entropies(acc, 1.0), std::invalid_argument);
  EXPECT_THROW(exact_entropies(acc, 0.0), std::invalid_argument);
  EXPECT_THROW(limit_check(acc, {0.9, 1.0}), std::invalid_argument);
  EXPECT_THROW(limit_check(acc, {2.0}), std::invalid_argument);
  EXPECT_THROW(acc.scaled(0.0), std::invalid_argument);
}

TEST(OracleTest, BoundsProperty) {
  testing::Gen g(61);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> counts(g.integer(1, 60));
    for (auto& c : counts) c = g.quantity();
    const double h = shannon_entropy(from_counts(counts));
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log(static_cast<double>(counts.size())) + 1e-12);
  }
}

TEST(OracleTest, ScaleInvarianceProperty) {
  testing::Gen g(62);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> counts(g.integer(1, 30));
    for (auto& c : counts) c = g.quantity();
    const auto acc = from_counts(counts);
    const double alpha = g.uniform(0.1, 1.9);
    if (std::fabs(alpha - 1.0) < 1e-3) continue;
    const Entropies base = exact_entropies(acc, alpha);

    const Entropies pow2 = exact_entropies(acc.scaled(8.0), alpha);
    EXPECT_EQ(pow2.shannon, base.shannon);
    EXPECT_EQ(pow2.renyi, base.renyi);
    EXPECT_EQ(pow2.tsallis, base.tsallis);

    const Entropies other = exact_entropies(acc.scaled(g.uniform(0.1, 50.0)), alpha);
    EXPECT_NEAR(other.shannon, base.shannon, 1e-12);
    EXPECT_NEAR(other.renyi, base.renyi, 1e-12);
    EXPECT_NEAR(other.tsallis, base.tsallis, 1e-12);
  }
}

TEST(OracleTest, RenyiApproachesShannon) {
  const auto acc = from_counts({5, 3, 1, 1});
  const double h = shannon_entropy(acc);
  double previous = INFINITY;
  for (double alpha : {0.5, 0.9, 0.99, 0.999}) {
    const double gap = std::fabs(exact_entropies(acc, alpha).renyi - h);
    EXPECT_LT(gap, previous);
    previous = gap;
  }
  EXPECT_LT(previous, 1e-2);
}

TEST(LimitCheckTest, SingleItemResidualsVanish) {
  AccumulationVector acc;
  acc.add("x", 2.0);
  for (const auto& r : limit_check(acc, {0.5, 0.9, 1.1})) {
    EXPECT_EQ(r.tsallis_residual, 0.0);
    EXPECT_EQ(r.renyi_residual, 0.0);
    EXPECT_EQ(r.renyi_gap, 0.0);
  }
}

TEST(LimitCheckTest, UniformResidualsDecrease) {
  const auto rows = limit_check(from_counts({1, 1, 1, 1}), {0.9, 0.99, 0.999});
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(rows[i].tsallis_residual, rows[i - 1].tsallis_residual);
    EXPECT_LT(rows[i].renyi_residual, rows[i - 1].renyi_residual);
  }
  EXPECT_EQ(rows[0].alpha, 0.9);
}

TEST(LimitCheckTest, ResidualsMatchDirectFormulas) {
  const std::vector<double> p{0.5, 0.3, 0.2};
  const auto acc = from_counts({5, 3, 2});
  const double alpha = 0.8;
  double s = 0.0;
  for (double v : p) s += std::pow(v, alpha);
  const double b = std::pow(s, 1.0 / alpha);
  const double tsallis = (s - 1.0) / (1.0 - alpha);
  const double renyi = std::log(s) / (1.0 - alpha);
  const auto r = limit_check(acc, {alpha}).front();
  EXPECT_NEAR(r.tsallis_residual, std::fabs((b - 1.0) / (1.0 - alpha) - tsallis), 1e-12);
  EXPECT_NEAR(r.renyi_residual, std::fabs(std::log(b) / (1.0 - alpha) - renyi), 1e-12);
}

}  // namespace
}  // namespace entsketch
