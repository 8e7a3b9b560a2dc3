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

#include <cmath>
#include <stdexcept>

namespace entsketch {

void SketchConfig::validate() const {
  if (k == 0) throw std::invalid_argument("sketch width k must be at least 1");
  if (!(zeta > 0.0) || !std::isfinite(zeta)) {
    throw std::invalid_argument("zeta must be a positive finite number");
  }
}

EntropySketch::EntropySketch(const SketchConfig& config)
    : config_(config), rows_((config.validate(), config.k)) {}

EntropySketch EntropySketch::from_exact(const SketchConfig& config,
                                        ExactSum total,
                                        std::vector<ExactSum> projections) {
  EntropySketch sketch(config);
  if (projections.size() != config.k) {
    throw std::invalid_argument("projection count does not match k");
  }
  sketch.rows_ = std::move(projections);
  sketch.total_ = total;
  return sketch;
}

void EntropySketch::accumulate(std::span<const double> variates,
                               double delta) {
  if (!std::isfinite(delta)) {
    throw std::domain_error("stream quantity must be finite");
  }
  if (delta == 0.0) return;
  for (std::uint32_t row = 0; row < config_.k; ++row) {
    rows_[row].add(variates[row] * delta);
  }
  total_.add(delta);
}

void EntropySketch::update(std::string_view item, double delta) {
  if (!std::isfinite(delta)) {
    throw std::domain_error("stream quantity must be finite");
  }
  if (delta == 0.0) return;
  const std::uint64_t hash = item_hash(item, config_.master_seed);
  for (std::uint32_t row = 0; row < config_.k; ++row) {
    rows_[row].add(cms_transform(item_pair(hash, row), kG0Params) * delta);
  }
  total_.add(delta);
}

void EntropySketch::update(std::string_view item, double delta,
                           VariateCache& cache) {
  if (!(cache.plan().master_seed == config_.master_seed &&
        cache.plan().k == config_.k)) {
    throw std::invalid_argument("variate cache built for a different sketch");
  }
  accumulate(cache.lookup(item), delta);
}

void EntropySketch::merge(const EntropySketch& other) {
  if (!(other.config_ == config_)) {
    throw std::invalid_argument(
        "cannot merge sketches with different k, zeta or seed");
  }
  for (std::uint32_t row = 0; row < config_.k; ++row) {
    rows_[row] += other.rows_[row];
  }
  total_ += other.total_;
}

double EntropySketch::projection(std::uint32_t row) const {
  if (row >= config_.k) throw std::out_of_range("projection row out of range");
  return rows_[row].to_double();
}

std::vector<double> EntropySketch::projections() const {
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(row.to_double());
  return out;
}

std::vector<double> EntropySketch::normalized() const {
  const double t = total();
  if (!(t > 0.0)) {
    throw std::domain_error(
        "sketch total is not positive; item frequencies are undefined");
  }
  std::vector<double> y = projections();
  for (double& v : y) v /= t;
  return y;
}

EntropySketch merge(const EntropySketch& a, const EntropySketch& b) {
  EntropySketch out = a;
  out.merge(b);
  return out;
}

VariateCache::VariateCache(const VariatePlan& plan, std::size_t capacity)
    : plan_(plan), keys_(capacity), filled_(capacity, false) {
  plan_.validate();
  if (capacity == 0) throw std::invalid_argument("cache capacity must be positive");
  values_.resize(capacity * plan_.k);
}

std::span<const double> VariateCache::lookup(std::string_view item) {
  const std::uint64_t hash = item_hash(item, plan_.master_seed);
  const std::size_t slot = hash % keys_.size();
  std::span<double> row(values_.data() + slot * plan_.k, plan_.k);
  if (filled_[slot] && keys_[slot] == item) {
    ++hits_;
    return row;
  }
  ++misses_;
  for (std::uint32_t r = 0; r < plan_.k; ++r) {
    row[r] = cms_transform(item_pair(hash, r), kG0Params);
  }
  keys_[slot].assign(item);
  filled_[slot] = true;
  return row;
}

}  // namespace entsketch
