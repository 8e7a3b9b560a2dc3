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

#include "entsketch/exact_sum.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace entsketch {
namespace {

using u128 = unsigned __int128;
using Limbs = ExactSum::Limbs;

Limbs add_limbs(const Limbs& a, const Limbs& b) noexcept {
  Limbs out;
  u128 carry = 0;
  for (int i = 0; i < 3; ++i) {
    const u128 t = u128(a[i]) + b[i] + carry;
    out[i] = static_cast<std::uint64_t>(t);
    carry = t >> 64;
  }
  return out;
}

Limbs negate_limbs(const Limbs& a) noexcept {
  return add_limbs({~a[0], ~a[1], ~a[2]}, {1, 0, 0});
}

bool sign_of(const Limbs& a) noexcept { return (a[2] >> 63) != 0; }

Limbs limbs_of(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("ExactSum: cannot accumulate a non-finite value");
  }
  const auto bits = std::bit_cast<std::uint64_t>(x);
  const int biased = static_cast<int>((bits >> 52) & 0x7ff);
  std::uint64_t mantissa = bits & ((std::uint64_t{1} << 52) - 1);
  int exponent = -1074;
  if (biased != 0) {
    mantissa |= std::uint64_t{1} << 52;
    exponent = biased - 1075;
  }
  // |x| * 2^64 = mantissa * 2^shift
  int shift = exponent + 64;
  if (shift < 0) {
    mantissa = -shift >= 64 ? 0 : mantissa >> -shift;
    shift = 0;
  }
  if (shift + 53 > 190) {
    throw std::overflow_error("ExactSum: value magnitude exceeds 2^126");
  }
  // Sign and limb placement are data dependent and poorly predicted, so both
  // are applied with masks instead of branches.
  const u128 wide = u128(mantissa) << (shift % 64);
  const auto w0 = static_cast<std::uint64_t>(wide);
  const auto w1 = static_cast<std::uint64_t>(wide >> 64);
  const int index = shift / 64;
  const std::uint64_t at0 = -std::uint64_t(index == 0);
  const std::uint64_t at1 = -std::uint64_t(index == 1);
  const std::uint64_t at2 = -std::uint64_t(index == 2);
  const std::uint64_t neg = -(bits >> 63 & std::uint64_t(mantissa != 0));
  // Ones' complement here; the caller supplies the +1 as a carry-in.
  return {(w0 & at0) ^ neg, ((w1 & at0) | (w0 & at1)) ^ neg,
          ((w1 & at1) | (w0 & at2)) ^ neg};
}

// a + b + carry_in over 192 bits, rejecting signed overflow.
Limbs checked_add(const Limbs& a, const Limbs& b, std::uint64_t carry_in) {
  Limbs out;
  u128 carry = carry_in;
  for (int i = 0; i < 3; ++i) {
    const u128 t = u128(a[i]) + b[i] + carry;
    out[i] = static_cast<std::uint64_t>(t);
    carry = t >> 64;
  }
  if (sign_of(a) == sign_of(b) && sign_of(out) != sign_of(a)) {
    throw std::overflow_error("ExactSum: accumulator overflow");
  }
  return out;
}

// Returns the two's-complement limbs of x (truncated at 2^-64).
Limbs exact_limbs_of(double x) {
  const Limbs ones = limbs_of(x);
  return checked_add({0, 0, 0}, ones, ones[2] >> 63);
}

}  // namespace

ExactSum ExactSum::from_double(double x) { return from_limbs(exact_limbs_of(x)); }

void ExactSum::add(double x) {
  if (x == 0.0) return;
  const Limbs ones = limbs_of(x);
  limbs_ = checked_add(limbs_, ones, ones[2] >> 63);
}

ExactSum& ExactSum::operator+=(const ExactSum& other) {
  limbs_ = checked_add(limbs_, other.limbs_, 0);
  return *this;
}

double ExactSum::to_double() const noexcept {
  if (is_zero()) return 0.0;
  const bool negative = is_negative();
  const Limbs mag = negative ? negate_limbs(limbs_) : limbs_;

  int top_limb = 2;
  while (mag[top_limb] == 0) --top_limb;
  const int msb = 64 * top_limb + (63 - std::countl_zero(mag[top_limb]));

  double value;
  if (msb < 64) {
    value = std::ldexp(static_cast<double>(mag[0]), -64);
  } else {
    // Take the 64 bits ending at msb and fold everything below into a sticky
    // bit so the uint64 -> double conversion rounds correctly.
    const int low = msb - 63;
    const int index = low / 64;
    const int offset = low % 64;
    std::uint64_t window = mag[index] >> offset;
    if (offset != 0) window |= mag[index + 1] << (64 - offset);
    bool sticky = offset != 0 && (mag[index] << (64 - offset)) != 0;
    for (int i = 0; i < index; ++i) sticky = sticky || mag[i] != 0;
    if (sticky) window |= 1;
    value = std::ldexp(static_cast<double>(window), low - 64);
  }
  return negative ? -value : value;
}

}  // namespace entsketch
