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

#ifndef ENTSKETCH_ORACLE_HPP
#define ENTSKETCH_ORACLE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "entsketch/exact_sum.hpp"

namespace entsketch {

/// Exact per-item cumulative quantities a_j of a stream. Holds one register
/// per distinct item, i.e. O(N) memory: this is the ground truth the sketch
/// exists to avoid, kept for testing and benchmarking.
class AccumulationVector {
 public:
  void add(std::string_view item, double delta);

  /// Probabilities p_j = a_j / sum a for items with a_j > 0, ascending.
  /// Throws std::domain_error if any a_j < 0 or the total is not positive.
  std::vector<double> probabilities() const;

  double count(std::string_view item) const;
  double total() const noexcept { return total_.to_double(); }
  std::size_t distinct_items() const noexcept { return counts_.size(); }

  /// Multiplies every count by c > 0.
  AccumulationVector scaled(double c) const;

 private:
  std::unordered_map<std::string, ExactSum> counts_;
  ExactSum total_;
};

struct Entropies {
  double shannon;  // H = -sum p log p
  double renyi;    // H_alpha = log(sum p^alpha) / (1 - alpha)
  double tsallis;  // S_alpha = (sum p^alpha - 1) / (1 - alpha)
};

/// Throws std::invalid_argument unless alpha > 0 and alpha != 1.
Entropies exact_entropies(const AccumulationVector& acc, double alpha);

double shannon_entropy(const AccumulationVector& acc);
double shannon_entropy(const std::vector<double>& probabilities);

struct LimitResidual {
  double alpha;
  double tsallis_residual;  // |(B_alpha - 1)/(1 - alpha) - S_alpha|
  double renyi_residual;    // |log B_alpha / (1 - alpha) - H_alpha|
  double renyi_gap;         // |H_alpha - H|
};

/// Residuals of the alpha -> 1 limit relations with
/// B_alpha = (sum p^alpha)^(1/alpha). Every alpha must lie in (0,1) or (1,2).
std::vector<LimitResidual> limit_check(const AccumulationVector& acc,
                                       const std::vector<double>& alphas);

}  // namespace entsketch

#endif  // ENTSKETCH_ORACLE_HPP
