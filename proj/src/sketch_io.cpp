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

#include "entsketch/sketch_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace entsketch {
namespace {

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}

  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void exact(const ExactSum& s) {
    for (std::uint64_t limb : s.limbs()) u64(limb);
  }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& in) : in_(in) {}

  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(get(8)); }
  ExactSum exact() {
    ExactSum::Limbs limbs;
    for (auto& limb : limbs) limb = u64();
    return ExactSum::from_limbs(limbs);
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::uint64_t get(int n) {
    if (remaining() < static_cast<std::size_t>(n)) {
      throw FormatError("sketch data is truncated");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t(in_[pos_ + i]) << (8 * i);
    pos_ += n;
    return v;
  }
  const std::vector<std::uint8_t>& in_;
  std::size_t pos_ = 0;
};

constexpr std::size_t kHeaderSize = 36;

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

std::vector<std::uint8_t> serialize(const EntropySketch& sketch) {
  const SketchConfig& cfg = sketch.config();
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + 32 * std::size_t{cfg.k} + 24);
  out.insert(out.end(), std::begin(kSketchMagic), std::end(kSketchMagic));
  Writer w(out);
  w.u16(kSketchFormatVersion);
  w.u16(0);
  w.u32(cfg.k);
  w.f64(cfg.zeta);
  w.u64(cfg.master_seed);
  w.f64(sketch.total());
  for (const auto& row : sketch.exact_projections()) w.f64(row.to_double());
  w.exact(sketch.exact_total());
  for (const auto& row : sketch.exact_projections()) w.exact(row);
  return out;
}

EntropySketch deserialize(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kSketchMagic, 4) != 0) {
    throw FormatError("not an entropy sketch (bad magic bytes)");
  }
  const std::vector<std::uint8_t> body(bytes.begin() + 4, bytes.end());
  Reader r(body);
  const std::uint16_t version = r.u16();
  if (version != kSketchFormatVersion) {
    throw FormatError("unsupported sketch format version " +
                      std::to_string(version));
  }
  if (r.u16() != 0) throw FormatError("reserved header field is not zero");

  SketchConfig cfg;
  cfg.k = r.u32();
  cfg.zeta = r.f64();
  cfg.master_seed = r.u64();
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid sketch configuration: ") + e.what());
  }
  const std::size_t expected = (kHeaderSize - 4) + 8 * std::size_t{cfg.k} + 24 +
                               24 * std::size_t{cfg.k};
  if (body.size() < expected) throw FormatError("sketch data is truncated");
  if (body.size() > expected) throw FormatError("trailing bytes after sketch");

  const double total = r.f64();
  std::vector<double> rounded(cfg.k);
  for (double& v : rounded) v = r.f64();
  const ExactSum exact_total = r.exact();
  std::vector<ExactSum> rows(cfg.k);
  for (auto& row : rows) row = r.exact();

  if (!same_bits(total, exact_total.to_double())) {
    throw FormatError("sketch total disagrees with its exact register");
  }
  for (std::uint32_t l = 0; l < cfg.k; ++l) {
    if (!same_bits(rounded[l], rows[l].to_double())) {
      throw FormatError("projection " + std::to_string(l) +
                        " disagrees with its exact register");
    }
  }
  return EntropySketch::from_exact(cfg, exact_total, std::move(rows));
}

void write_sketch_file(const std::filesystem::path& path,
                       const EntropySketch& sketch) {
  const auto bytes = serialize(sketch);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

EntropySketch read_sketch_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

nlohmann::json to_json(const EntropySketch& sketch) {
  const SketchConfig& cfg = sketch.config();
  return {
      {"format", "ESKT"},
      {"version", kSketchFormatVersion},
      {"k", cfg.k},
      {"zeta", cfg.zeta},
      {"master_seed", cfg.master_seed},
      {"total", sketch.total()},
      {"projections", sketch.projections()},
  };
}

EntropySketch sketch_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "ESKT") {
      throw FormatError("JSON document is not an entropy sketch");
    }
    if (j.at("version").get<int>() != kSketchFormatVersion) {
      throw FormatError("unsupported sketch format version");
    }
    SketchConfig cfg;
    cfg.k = j.at("k").get<std::uint32_t>();
    cfg.zeta = j.at("zeta").get<double>();
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    cfg.validate();
    const auto values = j.at("projections").get<std::vector<double>>();
    if (values.size() != cfg.k) {
      throw FormatError("projection count does not match k");
    }
    std::vector<ExactSum> rows;
    rows.reserve(values.size());
    for (double v : values) rows.push_back(ExactSum::from_double(v));
    return EntropySketch::from_exact(
        cfg, ExactSum::from_double(j.at("total").get<double>()), std::move(rows));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed sketch JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid sketch configuration: ") + e.what());
  }
}

}  // namespace entsketch
