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

#ifndef ENTSKETCH_STABLE_HPP
#define ENTSKETCH_STABLE_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "entsketch/rng.hpp"

namespace entsketch {

/// Parameters of a stable law in the (alpha, beta, gamma, delta) convention
/// whose alpha = 1 characteristic function is
///   exp(gamma * (-|t| - i t beta (2/pi) log|t|) + i delta t).
struct StableParams {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 1.0;
  double delta = 0.0;

  void validate() const;
};

/// G(x;0): characteristic function (i t)^(i t) = exp(-pi|t|/2 + i t log|t|).
/// The negative beta was fixed by the moment law E exp(kX) = k^k, which
/// holds for beta = -1 and fails (infinite mean of exp(X)) for beta = +1.
inline constexpr StableParams kG0Params{1.0, -1.0, std::numbers::pi / 2, 0.0};

/// Inputs to the Chambers-Mallows-Stuck transform.
struct UniformExpPair {
  double u;  // uniform on (-pi/2, pi/2)
  double w;  // standard exponential

  bool valid() const noexcept {
    return std::abs(u) < std::numbers::pi / 2 && w > 0.0 && std::isfinite(w);
  }
};

/// Chambers-Mallows-Stuck transform for alpha = 1:
///   X = (2/pi) [ (pi/2 + beta u) tan u - beta log( (pi/2) w cos u / (pi/2 + beta u) ) ]
/// scaled as gamma X + (2/pi) beta gamma log(gamma) + delta.
/// Throws std::domain_error for u = +-pi/2, w <= 0 or alpha != 1.
inline double cms_transform(const UniformExpPair& pair,
                            const StableParams& params) {
  if (params.alpha != 1.0) {
    throw std::domain_error("cms_transform: only alpha = 1 is supported");
  }
  if (!pair.valid()) {
    throw std::domain_error("cms_transform: u must lie in (-pi/2, pi/2) and w > 0");
  }
  constexpr double half_pi = std::numbers::pi / 2;
  constexpr double two_over_pi = 2.0 / std::numbers::pi;
  const double s = std::sin(pair.u);
  const double c = std::cos(pair.u);
  const double lever = half_pi + params.beta * pair.u;
  const double standard =
      two_over_pi * (lever * (s / c) -
                     params.beta * std::log(half_pi * pair.w * c / lever));
  return params.gamma * standard +
         two_over_pi * params.beta * params.gamma * std::log(params.gamma) +
         params.delta;
}

/// Builds a valid (u, w) pair from a source of 64-bit words, consuming two
/// words per attempt and redrawing on the floating-point endpoints.
template <class NextWord>
UniformExpPair draw_pair(NextWord&& next_word) {
  for (;;) {
    const double a = open_unit(next_word());
    const double b = open_unit(next_word());
    UniformExpPair pair{std::numbers::pi * (a - 0.5), -std::log(b)};
    if (pair.valid()) return pair;
  }
}

inline UniformExpPair draw_pair(CounterRng& rng) {
  return draw_pair([&rng] { return rng(); });
}

/// One draw from G(x;0).
inline double sample_g0(CounterRng& rng) {
  return cms_transform(draw_pair(rng), kG0Params);
}

/// Closed-form characteristic function of G(x;0); exactly 1 at theta = 0 and
/// conj(char_fn(t)) at -t.
std::complex<double> char_fn(double theta);

/// Positive strictly stable variable with Laplace transform exp(-lambda^alpha),
/// 0 < alpha < 1 (the beta = 1 branch of the same transform, Kanter's form).
double sample_positive_stable(double alpha, const UniformExpPair& pair);

/// (1 - z) / (1 - alpha) + log(1 - alpha). Converges in law to G(x;0) as
/// alpha -> 1 when z is positive stable with index alpha.
double y_alpha_transform(double alpha, double z);

/// Closed-form moment generating function E exp(theta Y_alpha) for theta > 0:
///   (1 - alpha)^theta exp(-[theta/(1-alpha)]^alpha + theta/(1-alpha)).
/// Tends to theta^theta as alpha -> 1.
double y_alpha_mgf(double alpha, double theta);

}  // namespace entsketch

#endif  // ENTSKETCH_STABLE_HPP
