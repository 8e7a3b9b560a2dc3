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

#include "entsketch/tail_bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "entsketch/golden_section.hpp"
#include "entsketch/stable.hpp"
#include "test_util.hpp"

namespace entsketch {
namespace {

// Plain partial sums of t^j j^(zeta j) / j! in extended precision.
double m_partial_sum(double zeta, double t, int terms) {
  long double sum = 1.0L;
  for (int j = 1; j < terms; ++j) {
    const long double log_mag = j * std::log(std::fabs(static_cast<long double>(t))) + static_cast<long double>(zeta) * j * std::log(static_cast<long double>(j)) -
                                std::lgamma(static_cast<long double>(j) + 1.0L);
    const long double term = std::exp(log_mag);
    sum += (t < 0 && j % 2 == 1) ? -term : term;
  }
  return static_cast<double>(sum);
}

TEST(MSeriesTest, ZeroArgument) {
  EXPECT_EQ(m_series(1.0, 0.0), 1.0);
  EXPECT_EQ(m_series(0.3, 0.0), 1.0);
  EXPECT_EQ(log_m_series(0.7, 0.0), 0.0);
}

TEST(MSeriesTest, KnownValueAtTenth) {
  // 1 + 0.1 + 0.02 + 0.0045 + 0.0010667 + ... = 1.1259138...
  EXPECT_NEAR(m_series(1.0, 0.1), 1.12590, 2e-5);
  EXPECT_NEAR(m_series(1.0, 0.1), m_partial_sum(1.0, 0.1, 400), 1e-13);
}

double max_log_term(double zeta, double t, int terms) {
  double best = 0.0;
  for (int j = 1; j < terms; ++j) {
    best = std::max(best, j * std::log(std::fabs(t)) + zeta * j * std::log(j) - std::lgamma(j + 1.0));
  }
  return best;
}

TEST(MSeriesTest, AgreesWithPartialSumsProperty) {
  testing::Gen g(51);
  int evaluated = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const double zeta = g.uniform(0.2, 1.0);
    // Keep the term ratio below 1/2 by j = 3000 so the partial sums converge.
    const double limit = std::min(2.0, 0.5 / (std::exp(1.0) * std::pow(3000.0, zeta - 1.0)));
    const double t = g.uniform(-limit, limit);
    const double expected = m_partial_sum(zeta, t, 3000);
    try {
      EXPECT_NEAR(m_series(zeta, t), expected, 1e-11 * std::fabs(expected))
          << "zeta " << zeta << " t " << t;
      ++evaluated;
    } catch (const SeriesConvergenceError&) {
      // Refusal is allowed only for alternating sums whose terms dwarf the result.
      EXPECT_LT(t, 0.0);
      EXPECT_GT(max_log_term(zeta, t, 3000), std::log(1e3 * std::fabs(expected)))
          << "zeta " << zeta << " t " << t;
    }
  }
  EXPECT_GT(evaluated, 250);
}

TEST(MSeriesTest, NearTheRadius) {
  const double t = 0.36;
  const double expected = m_partial_sum(1.0, t, 200000);
  EXPECT_NEAR(m_series(1.0, t), expected, 1e-10 * expected);
  EXPECT_NEAR(m_series(1.0, -t), m_partial_sum(1.0, -t, 200000), 1e-10);
}

TEST(MSeriesTest, DomainErrors) {
  EXPECT_THROW(m_series(1.0, 0.5), std::domain_error);
  EXPECT_THROW(m_series(1.0, -0.5), std::domain_error);
  EXPECT_THROW(m_series(1.0, std::exp(-1.0)), std::domain_error);
  EXPECT_THROW(m_series(1.2, 0.1), std::domain_error);
  EXPECT_THROW(m_series(0.0, 0.1), std::domain_error);
  EXPECT_NO_THROW(m_series(0.5, 5.0));
  EXPECT_TRUE(SeriesDomain::for_zeta(0.5).contains(1e6));
  EXPECT_FALSE(SeriesDomain::for_zeta(1.0).contains(0.4));
}

TEST(MSeriesTest, MatchesMonteCarloExpectation) {
  const int n = 1000000;
  CounterRng rng(53);
  std::vector<double> z(n);
  for (auto& v : z) v = std::exp(sample_g0(rng));
  for (double t : {0.05, 0.2}) {
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = std::exp(t * z[i]);
    const auto m = testing::mean_se(vals);
    EXPECT_NEAR(m_series(1.0, t), m.mean, 5 * m.se) << "t " << t;
  }
}

TEST(TailConstantsTest, LimitAtZetaOne) {
  const TailBoundResult r = tail_constants(1.0, 0.01);
  EXPECT_NEAR(r.g_right, 6.0, 0.12);
  EXPECT_NEAR(r.g_left, 6.0, 0.12);
  EXPECT_EQ(r.zeta, 1.0);
  EXPECT_EQ(r.epsilon, 0.01);
  EXPECT_GT(r.t_star_right, 0.0);
  EXPECT_GT(r.t_star_left, 0.0);
  EXPECT_EQ(tail_constant_limit(1.0), 6.0);
}

TEST(TailConstantsTest, LimitAtZetaHalf) {
  EXPECT_NEAR(tail_constant_limit(0.5), 8.0, 1e-14);
  const TailBoundResult r = tail_constants(0.5, 0.005);
  EXPECT_NEAR(r.g_right, 8.0, 0.1);
  EXPECT_NEAR(r.g_left, 8.0, 0.1);
}

TEST(TailConstantsTest, ResidualsDecayTowardLimit) {
  for (double zeta : {0.5, 0.8, 1.0}) {
    double prev_r = INFINITY, prev_l = INFINITY;
    for (double eps : {0.5, 0.1, 0.02}) {
      const TailBoundResult r = tail_constants(zeta, eps);
      const double limit = tail_constant_limit(zeta);
      EXPECT_LT(std::fabs(r.g_right - limit), prev_r) << zeta << " " << eps;
      EXPECT_LT(std::fabs(r.g_left - limit), prev_l) << zeta << " " << eps;
      prev_r = std::fabs(r.g_right - limit);
      prev_l = std::fabs(r.g_left - limit);
    }
  }
}

TEST(TailConstantsTest, OptimumIsLocalMaximumProperty) {
  testing::Gen g(55);
  for (int trial = 0; trial < 20; ++trial) {
    const double zeta = g.uniform(0.3, 1.0);
    const double eps = g.uniform(0.02, 1.0);
    const TailBoundResult r = tail_constants(zeta, eps);
    for (const auto& [tail, t] : {std::pair{Tail::right, r.t_star_right}, std::pair{Tail::left, r.t_star_left}}) {
      const double best = tail_objective(tail, zeta, eps, t);
      EXPECT_GT(best, 0.0);
      for (double h : {-1e-4, 1e-4}) {
        if (t + h <= 0.0) continue;
        EXPECT_LE(tail_objective(tail, zeta, eps, t + h), best * (1 + 1e-12));
      }
    }
  }
}

TEST(TailConstantsTest, ObjectiveConcaveProperty) {
  for (double zeta : {0.4, 1.0}) {
    const double hi = zeta == 1.0 ? 0.36 : 3.0;
    for (Tail tail : {Tail::right, Tail::left}) {
      const int n = 60;
      std::vector<double> q(n + 1);
      for (int i = 0; i <= n; ++i) q[i] = tail_objective(tail, zeta, 0.1, hi * (i + 0.5) / (n + 1));
      for (int i = 1; i < n; ++i) EXPECT_LE(q[i - 1] + q[i + 1], 2 * q[i] + 1e-12);
    }
  }
}

TEST(TailConstantsTest, Errors) {
  EXPECT_THROW(tail_constants(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(tail_constants(1.0, -0.1), std::invalid_argument);
  try {
    tail_constants(1.15, 0.1);
    ADD_FAILURE();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("no exponential"), std::string::npos);
  }
}

TEST(RequiredSizeTest, InverseSquareLaw) {
  const double ratio = static_cast<double>(required_sketch_size(0.025, 0.05, 1.0)) /
                       static_cast<double>(required_sketch_size(0.05, 0.05, 1.0));
  EXPECT_GE(ratio, 3.5);
  EXPECT_LE(ratio, 4.5);
}

TEST(RequiredSizeTest, MagnitudeAndMinimality) {
  const double eps = 0.1, gamma = 0.05;
  const std::uint64_t k = required_sketch_size(eps, gamma, 1.0);
  EXPECT_GT(k, 1500u);
  EXPECT_LT(k, 3000u);
  const TailBoundResult g = tail_constants(1.0, eps);
  auto bound = [&](double kk) {
    return std::exp(-kk * eps * eps / g.g_right) + std::exp(-kk * eps * eps / g.g_left);
  };
  EXPECT_LE(bound(static_cast<double>(k)), gamma);
  EXPECT_GT(bound(static_cast<double>(k - 1)), gamma);
}

TEST(RequiredSizeTest, VacuousGammaGivesOne) {
  EXPECT_EQ(required_sketch_size(3.0, 0.999, 1.0), 1u);
}

TEST(RequiredSizeTest, Errors) {
  EXPECT_THROW(required_sketch_size(0.1, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(required_sketch_size(0.1, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(required_sketch_size(0.0, 0.1, 1.0), std::invalid_argument);
  EXPECT_THROW(required_sketch_size(0.1, 0.1, 1.5), std::invalid_argument);
}

TEST(GoldenSectionTest, FindsParabolaPeak) {
  const Maximum m = golden_section_maximize([](double x) { return -(x - 2.0) * (x - 2.0); }, 0.0, 5.0);
  EXPECT_NEAR(m.argmax, 2.0, 1e-8);
  EXPECT_NEAR(m.value, 0.0, 1e-15);
}

TEST(GoldenSectionTest, HandlesMinusInfinityNearEdge) {
  const Maximum m = golden_section_maximize(
      [](double x) { return x > 0.9 ? -std::numeric_limits<double>::infinity() : std::log(x) - x; },
      0.01, 1.0);
  EXPECT_NEAR(m.argmax, 0.9, 1e-6);
  EXPECT_THROW(golden_section_maximize([](double x) { return x; }, 1.0, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace entsketch
