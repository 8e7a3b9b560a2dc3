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

#ifndef ENTSKETCH_SKETCH_HPP
#define ENTSKETCH_SKETCH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entsketch/exact_sum.hpp"
#include "entsketch/hashing.hpp"

namespace entsketch {

/// One turnstile update (i_t, d_t).
struct StreamElement {
  ItemKey item;
  double delta = 1.0;
};

/// Fixed at sketch creation; estimates must use the variates of ingest time.
struct SketchConfig {
  std::uint32_t k = 1;
  double zeta = 1.0;
  std::uint64_t master_seed = 0;

  void validate() const;
  VariatePlan plan() const noexcept { return {master_seed, k}; }

  friend bool operator==(const SketchConfig&, const SketchConfig&) = default;
};

class VariateCache;

/// k-dimensional projection sum_t R_l(i_t) d_t of a turnstile stream together
/// with the running total sum_t d_t.
///
/// Row values and the total are held in ExactSum registers, so the sketch is
/// an exact linear function of the multiset of (item, delta) updates: update
/// order, sharding and merging never change a bit of the state, and inserting
/// then deleting any element restores the previous state exactly. Each
/// product R_l(i) * d is rounded once to double before accumulation.
///
/// The relaxed strict-turnstile condition (every final per-item count is
/// non-negative) is the caller's responsibility and is not checked.
class EntropySketch {
 public:
  explicit EntropySketch(const SketchConfig& config);

  static EntropySketch from_exact(const SketchConfig& config, ExactSum total,
                                  std::vector<ExactSum> projections);

  const SketchConfig& config() const noexcept { return config_; }
  std::uint32_t k() const noexcept { return config_.k; }

  // O(k) per element.
  void update(std::string_view item, double delta);
  void update(const StreamElement& element) {
    update(element.item.bytes(), element.delta);
  }
  // Same result as update(item, delta); reuses cached variates for hot items.
  void update(std::string_view item, double delta, VariateCache& cache);

  /// Adds another sketch of the same configuration.
  /// Throws std::invalid_argument on configuration mismatch.
  void merge(const EntropySketch& other);

  double total() const noexcept { return total_.to_double(); }
  double projection(std::uint32_t row) const;
  std::vector<double> projections() const;

  /// y_l = projection_l / total. Throws std::domain_error if total <= 0.
  std::vector<double> normalized() const;

  const ExactSum& exact_total() const noexcept { return total_; }
  const std::vector<ExactSum>& exact_projections() const noexcept {
    return rows_;
  }

  friend bool operator==(const EntropySketch&, const EntropySketch&) = default;

 private:
  void accumulate(std::span<const double> variates, double delta);

  SketchConfig config_;
  std::vector<ExactSum> rows_;
  ExactSum total_;
};

EntropySketch merge(const EntropySketch& a, const EntropySketch& b);

/// Direct-mapped cache of per-item variate rows. Purely a speed device: the
/// variates are deterministic, so cached and uncached updates agree bitwise.
/// Memory is capacity * (k doubles + key).
class VariateCache {
 public:
  VariateCache(const VariatePlan& plan, std::size_t capacity);

  /// Variates of `item`, computing and storing them on a miss.
  std::span<const double> lookup(std::string_view item);

  const VariatePlan& plan() const noexcept { return plan_; }
  std::size_t capacity() const noexcept { return keys_.size(); }
  std::uint64_t hits() const noexcept { return hits_; }
  std::uint64_t misses() const noexcept { return misses_; }

 private:
  VariatePlan plan_;
  std::vector<std::string> keys_;
  std::vector<bool> filled_;
  std::vector<double> values_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

}  // namespace entsketch

#endif  // ENTSKETCH_SKETCH_HPP
