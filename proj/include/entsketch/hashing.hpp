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

#ifndef ENTSKETCH_HASHING_HPP
#define ENTSKETCH_HASHING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "entsketch/stable.hpp"

namespace entsketch {

/// Opaque byte string naming one item type. Equal bytes mean the same item.
class ItemKey {
 public:
  ItemKey() = default;
  explicit ItemKey(std::string bytes) : bytes_(std::move(bytes)) {}
  explicit ItemKey(std::string_view bytes) : bytes_(bytes) {}
  explicit ItemKey(const char* bytes) : bytes_(bytes) {}

  std::string_view bytes() const noexcept { return bytes_; }

  friend bool operator==(const ItemKey&, const ItemKey&) = default;

 private:
  std::string bytes_;
};

struct VariatePlan {
  std::uint64_t master_seed = 0;
  std::uint32_t k = 1;

  void validate() const;
};

/// MurmurHash64A over `bytes`, reading 8-byte blocks little-endian so the
/// result does not depend on host byte order.
std::uint64_t murmur_hash64a(std::string_view bytes, std::uint64_t seed) noexcept;

/// Seeded 64-bit hash identifying an item for all of its rows.
inline std::uint64_t item_hash(std::string_view bytes,
                               std::uint64_t master_seed) noexcept {
  return murmur_hash64a(bytes, master_seed);
}

/// The (u, w) pair behind row `row` of an item. Row r draws words
/// counter_word(derive_key(hash, r), 0), (.., 1), ... two per attempt.
inline UniformExpPair item_pair(std::uint64_t hash, std::uint32_t row) {
  const std::uint64_t row_key = derive_key(hash, row);
  std::uint64_t counter = 0;
  return draw_pair([&] { return counter_word(row_key, counter++); });
}

/// R_row(item) ~ G(x;0). Pure function of (item, row, master_seed).
/// Throws std::out_of_range if row >= plan.k.
double item_variate(const ItemKey& item, std::uint32_t row,
                    const VariatePlan& plan);

/// All plan.k variates of one item; `out` must have size plan.k.
void item_variates(std::string_view item, const VariatePlan& plan,
                   std::span<double> out);

}  // namespace entsketch

#endif  // ENTSKETCH_HASHING_HPP
