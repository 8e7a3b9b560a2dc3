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

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "entsketch/golden_section.hpp"

namespace entsketch {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTruncation = 1e-16;
constexpr int kMinTerms = 5;
constexpr long kMaxTerms = 1L << 24;
constexpr long kDirectTerms = 2048;
constexpr int kAveragingLevels = 32;
constexpr double kMaxCancellation = 1e4;

struct SeriesValue {
  double log_m;
  double m_minus_one;  // +inf when M overflows a double
};

void check_series_zeta(double zeta) {
  if (!(zeta > 0.0 && zeta <= 1.0)) {
    throw std::domain_error("M series requires 0 < zeta <= 1");
  }
}

double log_term(double zeta, double log_abs_t, long j) {
  const double dj = static_cast<double>(j);
  return dj * log_abs_t + zeta * dj * std::log(dj) - std::lgamma(dj + 1.0);
}

// Extended-precision term for the alternating sum, where cancellation
// magnifies the rounding error of each term.
long double log_term_ext(double zeta, long double log_abs_t, long j) {
  const long double dj = static_cast<long double>(j);
  return dj * log_abs_t + zeta * dj * std::log(dj) - std::lgamma(dj + 1.0L);
}

// Upper bound on a_{m+1}/a_m for all m > j.
double ratio_bound(double zeta, double abs_t, long j) {
  return abs_t * std::exp(zeta) *
         std::pow(static_cast<double>(j + 2), zeta - 1.0);
}

SeriesValue positive_series(double zeta, double t) {
  const double log_t = std::log(t);
  double scale = -kInf;
  double scaled = 0.0;  // sum_{j>=1} a_j = exp(scale) * scaled
  for (long j = 1; j <= kMaxTerms; ++j) {
    const double lj = log_term(zeta, log_t, j);
    if (lj > scale) {
      scaled = scaled * std::exp(scale - lj);
      scale = lj;
    }
    scaled += std::exp(lj - scale);

    const double rho = ratio_bound(zeta, t, j);
    if (j >= kMinTerms && rho < 1.0) {
      const double log_sum = scale + std::log(scaled);
      const double log_total = log_sum > 0.0
                                   ? log_sum + std::log1p(std::exp(-log_sum))
                                   : std::log1p(std::exp(log_sum));
      const double log_tail = lj + std::log(rho / (1.0 - rho));
      if (log_tail <= std::log(kTruncation) + log_total) {
        const double s1 = log_sum < 700.0 ? std::exp(log_sum) : kInf;
        return {std::isfinite(s1) ? std::log1p(s1) : log_total, s1};
      }
    }
  }
  throw SeriesConvergenceError("M series did not converge; t is too close to the radius");
}

SeriesValue make_alternating(long double s1, long double max_term) {
  const long double m = 1.0L + s1;
  if (!(m > 0.0L) || max_term > kMaxCancellation * m) {
    throw SeriesConvergenceError("M series lost precision to cancellation");
  }
  const double s = static_cast<double>(s1);
  return {std::log1p(s), s};
}

// Repeated averaging of consecutive partial sums (Euler / van Wijngaarden).
bool accelerate(const std::vector<long double>& partial, long double* value) {
  std::vector<long double> level = partial;
  long double spread = kInf;
  while (level.size() > 1) {
    if (level.size() == 2) spread = std::abs(level[1] - level[0]) / 2.0L;
    for (std::size_t i = 0; i + 1 < level.size(); ++i) {
      level[i] = (level[i] + level[i + 1]) / 2.0L;
    }
    level.pop_back();
  }
  *value = level[0];
  return spread <= 1e-14L * std::abs(1.0L + level[0]);
}

SeriesValue alternating_series(double zeta, double t) {
  const double abs_t = -t;
  const long double log_t = std::log(static_cast<long double>(abs_t));
  long double s1 = 0.0L;
  long double max_term = 0.0L;
  std::vector<long double> window;
  long checkpoint = kDirectTerms;
  for (long j = 1; j <= kMaxTerms; ++j) {
    const long double lj = log_term_ext(zeta, log_t, j);
    if (lj > 700.0L) {
      throw SeriesConvergenceError("M series terms overflow");
    }
    const long double a = std::exp(lj);
    max_term = std::max(max_term, a);
    s1 += (j % 2 == 0) ? a : -a;

    const double rho = ratio_bound(zeta, abs_t, j);
    if (j >= kMinTerms && rho < 1.0 &&
        a * rho <= kTruncation * std::abs(1.0 + s1)) {
      return make_alternating(s1, max_term);
    }
    if (j > checkpoint - kAveragingLevels - 1) window.push_back(s1);
    if (j == checkpoint) {
      long double value;
      if (rho < 1.0 && accelerate(window, &value)) {
        return make_alternating(value, max_term);
      }
      window.clear();
      checkpoint *= 2;
    }
  }
  throw SeriesConvergenceError("alternating M series did not converge");
}

SeriesValue series(double zeta, double t) {
  check_series_zeta(zeta);
  const SeriesDomain domain = SeriesDomain::for_zeta(zeta);
  if (!domain.contains(t)) {
    throw std::domain_error("t lies outside the convergence region of the M series");
  }
  if (t == 0.0) return {0.0, 0.0};
  return t > 0.0 ? positive_series(zeta, t) : alternating_series(zeta, t);
}

void check_tail_inputs(double zeta, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  if (zeta > 1.0) {
    throw std::invalid_argument(
        "no exponential tail bound exists for zeta > 1; use zeta <= 1");
  }
  if (!(zeta > 0.0)) throw std::invalid_argument("zeta must be positive");
}

}  // namespace

SeriesDomain SeriesDomain::for_zeta(double zeta) {
  check_series_zeta(zeta);
  return {zeta, zeta == 1.0 ? std::exp(-1.0) : kInf};
}

bool SeriesDomain::contains(double t) const noexcept {
  return std::isfinite(t) && std::abs(t) < t_max;
}

double m_series(double zeta, double t) {
  const SeriesValue v = series(zeta, t);
  return std::isfinite(v.m_minus_one) ? 1.0 + v.m_minus_one : std::exp(v.log_m);
}

double log_m_series(double zeta, double t) { return series(zeta, t).log_m; }

double tail_objective(Tail tail, double zeta, double epsilon, double t) {
  if (!(t > 0.0)) return t == 0.0 ? 0.0 : -kInf;
  const SeriesDomain domain = SeriesDomain::for_zeta(zeta);
  if (!domain.contains(t)) return -kInf;
  try {
    if (tail == Tail::right) {
      const SeriesValue v = series(zeta, t);
      return -(v.log_m - t) + t * std::expm1(zeta * epsilon);
    }
    const SeriesValue v = series(zeta, -t);
    return -(v.log_m + t) - t * std::expm1(-zeta * epsilon);
  } catch (const SeriesConvergenceError&) {
    return -kInf;
  }
}

namespace {

Maximum maximize_tail(Tail tail, double zeta, double epsilon) {
  auto objective = [&](double t) {
    return tail_objective(tail, zeta, epsilon, t);
  };
  double hi;
  if (zeta == 1.0) {
    hi = std::exp(-1.0) * (1.0 - 1e-9);
  } else {
    double h = 1.0;
    while (h < 1e12 && objective(2.0 * h) > objective(h)) h *= 2.0;
    hi = 2.0 * h;
  }
  return golden_section_maximize(objective, 0.0, hi, 1e-10);
}

}  // namespace

TailBoundResult tail_constants(double zeta, double epsilon) {
  check_tail_inputs(zeta, epsilon);
  const Maximum right = maximize_tail(Tail::right, zeta, epsilon);
  const Maximum left = maximize_tail(Tail::left, zeta, epsilon);
  const double eps2 = epsilon * epsilon;
  auto constant = [eps2](double sup) { return sup > 0.0 ? eps2 / sup : kInf; };
  return {constant(right.value), constant(left.value), right.argmax,
          left.argmax, zeta, epsilon};
}

double tail_constant_limit(double zeta) {
  if (!(zeta > 0.0)) throw std::invalid_argument("zeta must be positive");
  return 2.0 * std::expm1(zeta * std::log(4.0)) / (zeta * zeta);
}

std::uint64_t required_sketch_size(double epsilon, double gamma, double zeta) {
  check_tail_inputs(zeta, epsilon);
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in (0, 1)");
  }
  const TailBoundResult g = tail_constants(zeta, epsilon);
  if (!std::isfinite(g.g_right) || !std::isfinite(g.g_left)) {
    throw std::runtime_error("tail constants are not finite for this epsilon");
  }
  const double eps2 = epsilon * epsilon;
  auto failure = [&](double k) {
    return std::exp(-k * eps2 / g.g_right) + std::exp(-k * eps2 / g.g_left);
  };
  // Each tail is at most gamma/2 here, so the answer lies in [1, hi].
  std::uint64_t hi = static_cast<std::uint64_t>(std::ceil(
      std::max(g.g_right, g.g_left) * std::log(2.0 / gamma) / eps2));
  hi = std::max<std::uint64_t>(hi, 1);
  while (failure(static_cast<double>(hi)) > gamma) ++hi;
  std::uint64_t lo = 1;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (failure(static_cast<double>(mid)) <= gamma) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace entsketch
