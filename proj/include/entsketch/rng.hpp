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

#ifndef ENTSKETCH_RNG_HPP
#define ENTSKETCH_RNG_HPP

#include <cstdint>
#include <limits>

namespace entsketch {

// SplitMix64 output finalizer (Stafford mix13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;
inline constexpr std::uint64_t kStreamGamma = 0xd1b54a32d192ed03ULL;

// Child key number `index` of `base`. Used for both rng substreams and
// per-row hash keys.
constexpr std::uint64_t derive_key(std::uint64_t base,
                                   std::uint64_t index) noexcept {
  return mix64(base + (index + 1) * kStreamGamma);
}

// Word number `counter` of the counter-based stream identified by `key`.
// This is exactly the SplitMix64 sequence started at state `key`.
constexpr std::uint64_t counter_word(std::uint64_t key,
                                     std::uint64_t counter) noexcept {
  return mix64(key + (counter + 1) * kGoldenGamma);
}

// Maps a 64-bit word to the open interval (0, 1). The top 52 bits are used so
// that (m + 0.5) * 2^-52 is exact in double precision and never reaches 0 or 1.
constexpr double open_unit(std::uint64_t word) noexcept {
  return (static_cast<double>(word >> 12) + 0.5) * 0x1.0p-52;
}

/// Counter-based generator keyed by (seed, stream). Output n of a stream is a
/// pure function of (seed, stream, n), so Monte Carlo replicates can be
/// assigned to workers in any order without changing results.
///
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(derive_key(mix64(seed), stream)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return counter_word(key_, counter_++); }

  double uniform_open() noexcept { return open_unit((*this)()); }

  // Independent child stream; does not advance this generator.
  CounterRng split(std::uint64_t stream) const noexcept {
    return CounterRng(key_, stream, 0);
  }

  std::uint64_t position() const noexcept { return counter_; }
  void seek(std::uint64_t position) noexcept { counter_ = position; }

  friend bool operator==(const CounterRng&, const CounterRng&) = default;

 private:
  CounterRng(std::uint64_t parent_key, std::uint64_t stream,
             std::uint64_t counter) noexcept
      : key_(derive_key(parent_key, stream)), counter_(counter) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace entsketch

#endif  // ENTSKETCH_RNG_HPP
