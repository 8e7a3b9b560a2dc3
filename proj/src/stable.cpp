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

#include "entsketch/stable.hpp"

#include <string>

namespace entsketch {

void StableParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw std::invalid_argument("stable alpha must lie in (0, 2]");
  }
  if (!(beta >= -1.0 && beta <= 1.0)) {
    throw std::invalid_argument("stable beta must lie in [-1, 1]");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("stable gamma must be positive");
  }
  if (!std::isfinite(delta)) {
    throw std::invalid_argument("stable delta must be finite");
  }
}

std::complex<double> char_fn(double theta) {
  if (theta == 0.0) return {1.0, 0.0};
  const double a = std::abs(theta);
  const std::complex<double> value =
      std::polar(std::exp(-std::numbers::pi / 2 * a), a * std::log(a));
  return theta < 0.0 ? std::conj(value) : value;
}

double sample_positive_stable(double alpha, const UniformExpPair& pair) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("positive stable index must lie in (0, 1)");
  }
  if (!pair.valid()) {
    throw std::domain_error("positive stable: invalid (u, w) pair");
  }
  const double v = pair.u + std::numbers::pi / 2;  // (0, pi)
  const double log_z = std::log(std::sin(alpha * v)) -
                       std::log(std::sin(v)) / alpha +
                       (1.0 - alpha) / alpha *
                           (std::log(std::sin((1.0 - alpha) * v)) -
                            std::log(pair.w));
  return std::exp(log_z);
}

double y_alpha_transform(double alpha, double z) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("y_alpha_transform: alpha must lie in (0, 1)");
  }
  const double gap = 1.0 - alpha;
  return (1.0 - z) / gap + std::log(gap);
}

double y_alpha_mgf(double alpha, double theta) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("y_alpha_mgf: alpha must lie in (0, 1)");
  }
  if (!(theta > 0.0)) {
    throw std::domain_error("y_alpha_mgf: theta must be positive");
  }
  const double gap = 1.0 - alpha;
  const double x = theta / gap;
  // x - x^alpha without cancellation.
  const double spread = -x * std::expm1(-gap * std::log(x));
  return std::exp(theta * std::log(gap) + spread);
}

}  // namespace entsketch
