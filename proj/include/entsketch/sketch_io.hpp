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

#ifndef ENTSKETCH_SKETCH_IO_HPP
#define ENTSKETCH_SKETCH_IO_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "entsketch/sketch.hpp"

namespace entsketch {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr char kSketchMagic[4] = {'E', 'S', 'K', 'T'};
inline constexpr std::uint16_t kSketchFormatVersion = 1;

// Binary layout, all fields little-endian:
//
//   offset  size  field
//   0       4     magic "ESKT"
//   4       2     format version (1)
//   6       2     reserved, zero
//   8       4     k
//   12      8     zeta (IEEE-754 double)
//   20      8     master seed
//   28      8     total (double, rounded from the exact register)
//   36      8k    projections (doubles, rounded from the exact registers)
//   36+8k   24    exact total register (3 x u64, least significant first)
//   60+8k   24k   exact projection registers
//
// The double fields make the file readable without the fixed-point trailer;
// the trailer makes the round trip and later merges exact.
std::vector<std::uint8_t> serialize(const EntropySketch& sketch);

/// Throws FormatError on wrong magic, unsupported version, truncation,
/// trailing bytes, an invalid configuration, or doubles that disagree with
/// the exact registers.
EntropySketch deserialize(const std::vector<std::uint8_t>& bytes);

void write_sketch_file(const std::filesystem::path& path,
                       const EntropySketch& sketch);
EntropySketch read_sketch_file(const std::filesystem::path& path);

/// Debug form with the same fields as the binary header and the rounded
/// projections. Reading it back rebuilds the registers from the doubles.
nlohmann::json to_json(const EntropySketch& sketch);
EntropySketch sketch_from_json(const nlohmann::json& j);

}  // namespace entsketch

#endif  // ENTSKETCH_SKETCH_IO_HPP
