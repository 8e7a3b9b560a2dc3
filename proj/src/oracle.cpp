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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entsketch {
namespace {

// sum_j p_j^alpha, with p^alpha = exp(alpha log p).
double power_sum(const std::vector<double>& p, double alpha) {
  double s = 0.0;
  for (double v : p) s += std::exp(alpha * std::log(v));
  return s;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be positive and different from 1");
  }
}

}  // namespace

void AccumulationVector::add(std::string_view item, double delta) {
  if (!std::isfinite(delta)) {
    throw std::domain_error("stream quantity must be finite");
  }
  counts_[std::string(item)].add(delta);
  total_.add(delta);
}

std::vector<double> AccumulationVector::probabilities() const {
  if (total_.is_negative() || total_.is_zero()) {
    throw std::domain_error("accumulation total is not positive");
  }
  const double total = total_.to_double();
  std::vector<double> p;
  p.reserve(counts_.size());
  for (const auto& [item, count] : counts_) {
    if (count.is_negative()) {
      throw std::domain_error("negative cumulative count for item '" + item + "'");
    }
    if (!count.is_zero()) p.push_back(count.to_double() / total);
  }
  std::sort(p.begin(), p.end());
  return p;
}

double AccumulationVector::count(std::string_view item) const {
  const auto it = counts_.find(std::string(item));
  return it == counts_.end() ? 0.0 : it->second.to_double();
}

AccumulationVector AccumulationVector::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("scale factor must be positive");
  }
  AccumulationVector out;
  for (const auto& [item, count] : counts_) {
    out.add(item, count.to_double() * c);
  }
  return out;
}

double shannon_entropy(const std::vector<double>& probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double shannon_entropy(const AccumulationVector& acc) {
  return shannon_entropy(acc.probabilities());
}

Entropies exact_entropies(const AccumulationVector& acc, double alpha) {
  check_alpha(alpha);
  const std::vector<double> p = acc.probabilities();
  const double s = power_sum(p, alpha);
  return {shannon_entropy(p), std::log(s) / (1.0 - alpha),
          (s - 1.0) / (1.0 - alpha)};
}

std::vector<LimitResidual> limit_check(const AccumulationVector& acc,
                                       const std::vector<double>& alphas) {
  const std::vector<double> p = acc.probabilities();
  const double h = shannon_entropy(p);
  std::vector<LimitResidual> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    check_alpha(alpha);
    if (alpha >= 2.0) throw std::invalid_argument("alpha must be below 2");
    const double s = power_sum(p, alpha);
    const double gap = 1.0 - alpha;
    const double log_b = std::log(s) / alpha;
    const double renyi = std::log(s) / gap;
    const double tsallis = (s - 1.0) / gap;
    out.push_back({alpha, std::abs(std::expm1(log_b) / gap - tsallis),
                   std::abs(log_b / gap - renyi), std::abs(renyi - h)});
  }
  return out;
}

}  // namespace entsketch
