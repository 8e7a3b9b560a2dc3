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

#include "entsketch/sketch.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "entsketch/hashing.hpp"
#include "test_util.hpp"

namespace entsketch {
namespace {

EntropySketch sketch_of(const SketchConfig& cfg, const std::vector<testing::Update>& stream) {
  EntropySketch s(cfg);
  for (const auto& u : stream) s.update(u.item, u.delta);
  return s;
}

TEST(SketchTest, NewSketchIsEmpty) {
  EntropySketch s(SketchConfig{4, 1.0, 0});
  EXPECT_EQ(s.projections(), std::vector<double>(4, 0.0));
  EXPECT_EQ(s.total(), 0.0);
  EntropySketch one(SketchConfig{1, 1.0, 0});
  EXPECT_EQ(one.projections(), std::vector<double>(1, 0.0));
}

TEST(SketchTest, InvalidConfig) {
  EXPECT_THROW(EntropySketch(SketchConfig{0, 1.0, 0}), std::invalid_argument);
  EXPECT_THROW(EntropySketch(SketchConfig{4, 0.0, 0}), std::invalid_argument);
  EXPECT_THROW(EntropySketch(SketchConfig{4, -1.0, 0}), std::invalid_argument);
  EXPECT_THROW(EntropySketch(SketchConfig{4, std::nan(""), 0}), std::invalid_argument);
}

TEST(SketchTest, ProjectionIsWeightedSumOfVariates) {
  const SketchConfig cfg{6, 1.0, 77};
  testing::Gen g(21);
  const auto stream = testing::random_stream(g, 200, 15);
  const EntropySketch s = sketch_of(cfg, stream);
  double total = 0.0;
  for (const auto& u : stream) total += u.delta;
  EXPECT_NEAR(s.total(), total, 1e-9 * total);
  for (std::uint32_t row = 0; row < cfg.k; ++row) {
    long double expected = 0.0L;
    long double scale = 0.0L;
    for (const auto& u : stream) {
      const long double term =
          static_cast<long double>(item_variate(ItemKey(u.item), row, cfg.plan())) * u.delta;
      expected += term;
      scale += std::fabs(term);
    }
    EXPECT_NEAR(s.projection(row), static_cast<double>(expected), 1e-12 * static_cast<double>(scale));
  }
  EXPECT_THROW(s.projection(cfg.k), std::out_of_range);
}

TEST(SketchTest, InsertThenDeleteRestoresStateBitwise) {
  const SketchConfig cfg{16, 1.0, 3};
  EntropySketch s(cfg);
  s.update("a", 2.5);
  s.update("b", 1.0);
  const EntropySketch before = s;
  s.update("x", 1.0);
  s.update("x", -1.0);
  EXPECT_EQ(s, before);
}

TEST(SketchTest, TurnstileCancellationProperty) {
  testing::Gen g(22);
  for (int trial = 0; trial < 20; ++trial) {
    const SketchConfig cfg{static_cast<std::uint32_t>(g.integer(1, 32)), 1.0, g.integer(0, 1000)};
    auto stream = testing::random_stream(g, g.integer(1, 300), g.integer(1, 50));
    EntropySketch s = sketch_of(cfg, stream);
    std::shuffle(stream.begin(), stream.end(), std::mt19937_64(trial));
    for (const auto& u : stream) s.update(u.item, -u.delta);
    EXPECT_EQ(s, EntropySketch(cfg));
    EXPECT_EQ(s.total(), 0.0);
  }
}

TEST(SketchTest, SingleItemRowsAreItsVariates) {
  const SketchConfig cfg{32, 1.0, 5};
  EntropySketch s(cfg);
  s.update(StreamElement{ItemKey("only"), 5.0});
  const auto y = s.normalized();
  for (std::uint32_t row = 0; row < cfg.k; ++row) {
    const double r = item_variate(ItemKey("only"), row, cfg.plan());
    EXPECT_NEAR(y[row], r, 1e-14 * (1.0 + std::fabs(r)));
  }
}

TEST(SketchTest, MergeWithEmptyIsIdentity) {
  const SketchConfig cfg{8, 1.0, 9};
  testing::Gen g(23);
  const EntropySketch s = sketch_of(cfg, testing::random_stream(g, 100, 10));
  EXPECT_EQ(merge(s, EntropySketch(cfg)), s);
  EXPECT_EQ(merge(EntropySketch(cfg), s), s);
}

TEST(SketchTest, MergeEqualsConcatenationProperty) {
  testing::Gen g(24);
  for (int trial = 0; trial < 30; ++trial) {
    const SketchConfig cfg{static_cast<std::uint32_t>(g.integer(1, 20)), 1.0, g.integer(0, 99)};
    auto stream = testing::random_stream(g, g.integer(0, 200), g.integer(1, 30));
    for (auto& u : stream) {
      if (g.integer(0, 4) == 0) u.delta = -u.delta;
    }
    const std::size_t cut = g.integer(0, stream.size());
    const std::vector<testing::Update> a(stream.begin(), stream.begin() + cut);
    const std::vector<testing::Update> b(stream.begin() + cut, stream.end());
    EXPECT_EQ(merge(sketch_of(cfg, a), sketch_of(cfg, b)), sketch_of(cfg, stream));
    EXPECT_EQ(merge(sketch_of(cfg, b), sketch_of(cfg, a)), sketch_of(cfg, stream));
  }
}

TEST(SketchTest, UpdateOrderIrrelevantProperty) {
  testing::Gen g(25);
  const SketchConfig cfg{12, 1.0, 4};
  auto stream = testing::random_stream(g, 500, 40);
  const EntropySketch reference = sketch_of(cfg, stream);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(stream.begin(), stream.end(), std::mt19937_64(trial));
    EXPECT_EQ(sketch_of(cfg, stream), reference);
  }
}

TEST(SketchTest, MergeRejectsMismatchedConfig) {
  EntropySketch a(SketchConfig{4, 1.0, 1});
  EXPECT_THROW(a.merge(EntropySketch(SketchConfig{4, 1.0, 2})), std::invalid_argument);
  EXPECT_THROW(a.merge(EntropySketch(SketchConfig{5, 1.0, 1})), std::invalid_argument);
  EXPECT_THROW(a.merge(EntropySketch(SketchConfig{4, 1.15, 1})), std::invalid_argument);
}

TEST(SketchTest, DeltaHandling) {
  EntropySketch s(SketchConfig{4, 1.0, 1});
  const EntropySketch empty = s;
  s.update("a", 0.0);
  EXPECT_EQ(s, empty);
  EXPECT_THROW(s.update("a", std::numeric_limits<double>::infinity()), std::domain_error);
  EXPECT_THROW(s.update("a", std::nan("")), std::domain_error);
  EXPECT_EQ(s, empty);
}

TEST(SketchTest, NormalizedNeedsPositiveTotal) {
  EntropySketch s(SketchConfig{4, 1.0, 1});
  EXPECT_THROW(s.normalized(), std::domain_error);
  s.update("a", -1.0);
  EXPECT_THROW(s.normalized(), std::domain_error);
  s.update("b", 3.0);
  EXPECT_NO_THROW(s.normalized());
}

TEST(SketchTest, SameSeedSameSketch) {
  testing::Gen g(26);
  const auto stream = testing::random_stream(g, 300, 25);
  EXPECT_EQ(sketch_of({10, 1.0, 8}, stream), sketch_of({10, 1.0, 8}, stream));
  EXPECT_NE(sketch_of({10, 1.0, 8}, stream).projections(),
            sketch_of({10, 1.0, 9}, stream).projections());
}

TEST(VariateCacheTest, CachedUpdatesMatchUncachedProperty) {
  testing::Gen g(27);
  for (std::size_t capacity : {1u, 3u, 64u, 4096u}) {
    const SketchConfig cfg{24, 1.0, 6};
    const auto stream = testing::random_stream(g, 2000, 100);
    EntropySketch plain(cfg), cached(cfg);
    VariateCache cache(cfg.plan(), capacity);
    for (const auto& u : stream) {
      plain.update(u.item, u.delta);
      cached.update(u.item, u.delta, cache);
    }
    EXPECT_EQ(plain, cached) << "capacity " << capacity;
    EXPECT_EQ(cache.hits() + cache.misses(), stream.size());
  }
}

TEST(VariateCacheTest, LookupReturnsItemVariates) {
  const VariatePlan plan{3, 5};
  VariateCache cache(plan, 16);
  for (int pass = 0; pass < 2; ++pass) {
    const auto v = cache.lookup("q");
    for (std::uint32_t row = 0; row < plan.k; ++row) EXPECT_EQ(v[row], item_variate(ItemKey("q"), row, plan));
  }
  EXPECT_EQ(cache.hits(), 1u);
  EXPECT_EQ(cache.misses(), 1u);
}

TEST(VariateCacheTest, RejectsForeignPlanAndZeroCapacity) {
  EXPECT_THROW(VariateCache(VariatePlan{1, 4}, 0), std::invalid_argument);
  EntropySketch s(SketchConfig{4, 1.0, 1});
  VariateCache other(VariatePlan{2, 4}, 8);
  EXPECT_THROW(s.update("a", 1.0, other), std::invalid_argument);
}

}  // namespace
}  // namespace entsketch
