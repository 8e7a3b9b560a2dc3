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

#ifndef ENTSKETCH_EXACT_SUM_HPP
#define ENTSKETCH_EXACT_SUM_HPP

#include <array>
#include <cstdint>

namespace entsketch {

/// Exact running sum of doubles in 192-bit two's-complement fixed point with
/// 64 fractional bits.
///
/// Each added double is truncated toward zero at 2^-64, so x and -x always
/// contribute exact negatives of each other. Integer addition makes the sum
/// independent of order and grouping: any sequence of adds and merges over
/// the same multiset of inputs yields identical limbs. Magnitudes must stay
/// below 2^126; larger inputs or a sum overflow throw std::overflow_error.
class ExactSum {
 public:
  using Limbs = std::array<std::uint64_t, 3>;  // least significant first

  ExactSum() = default;

  static ExactSum from_limbs(const Limbs& limbs) noexcept {
    ExactSum s;
    s.limbs_ = limbs;
    return s;
  }

  /// Exact conversion of a double (after truncation at 2^-64).
  static ExactSum from_double(double x);

  void add(double x);
  ExactSum& operator+=(const ExactSum& other);

  /// Correctly rounded nearest double.
  double to_double() const noexcept;

  bool is_zero() const noexcept {
    return (limbs_[0] | limbs_[1] | limbs_[2]) == 0;
  }
  bool is_negative() const noexcept { return (limbs_[2] >> 63) != 0; }

  const Limbs& limbs() const noexcept { return limbs_; }

  friend bool operator==(const ExactSum&, const ExactSum&) = default;

 private:
  Limbs limbs_{0, 0, 0};
};

}  // namespace entsketch

#endif  // ENTSKETCH_EXACT_SUM_HPP
