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

#include "entsketch/hashing.hpp"

#include <stdexcept>

namespace entsketch {
namespace {

std::uint64_t load_le64(const unsigned char* p) noexcept {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

void VariatePlan::validate() const {
  if (k == 0) throw std::invalid_argument("sketch width k must be at least 1");
}

std::uint64_t murmur_hash64a(std::string_view bytes,
                             std::uint64_t seed) noexcept {
  constexpr std::uint64_t m = 0xc6a4a7935bd1e995ULL;
  constexpr int r = 47;
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t len = bytes.size();
  std::uint64_t h = seed ^ (static_cast<std::uint64_t>(len) * m);

  const std::size_t blocks = len / 8;
  for (std::size_t i = 0; i < blocks; ++i) {
    std::uint64_t k = load_le64(data + 8 * i);
    k *= m;
    k ^= k >> r;
    k *= m;
    h ^= k;
    h *= m;
  }

  const unsigned char* tail = data + 8 * blocks;
  switch (len & 7) {
    case 7: h ^= std::uint64_t(tail[6]) << 48; [[fallthrough]];
    case 6: h ^= std::uint64_t(tail[5]) << 40; [[fallthrough]];
    case 5: h ^= std::uint64_t(tail[4]) << 32; [[fallthrough]];
    case 4: h ^= std::uint64_t(tail[3]) << 24; [[fallthrough]];
    case 3: h ^= std::uint64_t(tail[2]) << 16; [[fallthrough]];
    case 2: h ^= std::uint64_t(tail[1]) << 8; [[fallthrough]];
    case 1:
      h ^= std::uint64_t(tail[0]);
      h *= m;
  }

  h ^= h >> r;
  h *= m;
  h ^= h >> r;
  return h;
}

double item_variate(const ItemKey& item, std::uint32_t row,
                    const VariatePlan& plan) {
  plan.validate();
  if (row >= plan.k) {
    throw std::out_of_range("item_variate: row " + std::to_string(row) +
                            " outside sketch width " + std::to_string(plan.k));
  }
  return cms_transform(item_pair(item_hash(item.bytes(), plan.master_seed), row),
                       kG0Params);
}

void item_variates(std::string_view item, const VariatePlan& plan,
                   std::span<double> out) {
  if (out.size() != plan.k) {
    throw std::invalid_argument("item_variates: output size must equal k");
  }
  const std::uint64_t hash = item_hash(item, plan.master_seed);
  for (std::uint32_t row = 0; row < plan.k; ++row) {
    out[row] = cms_transform(item_pair(hash, row), kG0Params);
  }
}

}  // namespace entsketch
