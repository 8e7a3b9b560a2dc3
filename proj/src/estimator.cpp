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

#include "entsketch/estimator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "entsketch/parallel.hpp"
#include "entsketch/rng.hpp"
#include "entsketch/stable.hpp"

namespace entsketch {
namespace {

void check_zeta(double zeta) {
  if (!(zeta > 0.0) || !std::isfinite(zeta)) {
    throw std::invalid_argument("zeta must be a positive finite number");
  }
}

constexpr std::uint32_t kInterpolateMaxK = 1000;

}  // namespace

std::string_view to_string(BiasSource source) {
  switch (source) {
    case BiasSource::shipped: return "shipped";
    case BiasSource::monte_carlo: return "monte_carlo";
    case BiasSource::interpolated: return "interpolated";
    case BiasSource::extrapolated: return "extrapolated";
    case BiasSource::zero: return "zero";
  }
  return "unknown";
}

BiasTable BiasTable::shipped() { return parse(shipped_bias_table_text()); }

BiasTable BiasTable::parse(std::string_view text, BiasSource source) {
  BiasTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    BiasEntry entry;
    entry.source = source;
    if (!(fields >> entry.k)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::invalid_argument("bias table line " +
                                  std::to_string(line_number) + " is malformed");
    }
    if (!(fields >> entry.zeta >> entry.bc >> entry.std_error) || entry.k == 0) {
      throw std::invalid_argument("bias table line " +
                                  std::to_string(line_number) + " is malformed");
    }
    table.insert(entry);
  }
  return table;
}

std::optional<BiasEntry> BiasTable::find(std::uint32_t k, double zeta) const {
  const auto it = entries_.find({zeta, k});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void BiasTable::insert(const BiasEntry& entry) {
  entries_[{entry.zeta, entry.k}] = entry;
}

std::vector<BiasEntry> BiasTable::entries() const {
  std::vector<BiasEntry> out;
  out.reserve(entries_.size());
  for (const auto& [key, entry] : entries_) out.push_back(entry);
  return out;
}

double log_mean(std::span<const double> y, double zeta) {
  check_zeta(zeta);
  if (y.empty()) throw std::invalid_argument("log_mean: no sketch rows");
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : y) peak = std::max(peak, zeta * v);
  if (!std::isfinite(peak)) {
    throw std::domain_error("log_mean: non-finite sketch row");
  }
  double sum = 0.0;
  for (double v : y) sum += std::exp(zeta * v - peak);
  const double log_sum = peak + std::log(sum);
  return (log_sum - std::log(static_cast<double>(y.size())) -
          zeta * std::log(zeta)) /
         zeta;
}

BiasEstimate bias_correction(std::uint32_t k, double zeta, std::uint64_t reps,
                             std::uint64_t seed, unsigned workers) {
  check_zeta(zeta);
  if (k == 0) throw std::invalid_argument("bias_correction: k must be >= 1");
  if (reps == 0) throw std::invalid_argument("bias_correction: reps must be >= 1");

  std::vector<double> values(reps);
  const std::size_t blocks = std::min<std::uint64_t>(reps, std::max(1u, workers));
  parallel_for(blocks, workers, [&](std::size_t b) {
    std::vector<double> z(k);
    const std::uint64_t begin = reps * b / blocks;
    const std::uint64_t end = reps * (b + 1) / blocks;
    for (std::uint64_t r = begin; r < end; ++r) {
      CounterRng rng(seed, r);
      for (auto& v : z) v = sample_g0(rng);
      values[r] = log_mean(z, zeta);
    }
  });

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(reps);
  double se = std::numeric_limits<double>::quiet_NaN();
  if (reps > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    se = std::sqrt(ss / static_cast<double>(reps - 1)) /
         std::sqrt(static_cast<double>(reps));
  }
  return {mean, se, reps};
}

std::optional<BiasMode> parse_bias_mode(std::string_view name) {
  if (name == "montecarlo" || name == "monte_carlo") return BiasMode::monte_carlo;
  if (name == "interpolate" || name == "fast") return BiasMode::interpolate;
  if (name == "none") return BiasMode::none;
  return std::nullopt;
}

BiasResolver::BiasResolver(Options options, BiasTable table)
    : options_(options), table_(std::move(table)) {
  if (options_.reps == 0) throw std::invalid_argument("bias reps must be >= 1");
}

BiasTable BiasResolver::table() const {
  std::lock_guard lock(mutex_);
  return table_;
}

std::optional<BiasResolution> BiasResolver::interpolate(std::uint32_t k,
                                                        double zeta) const {
  std::vector<BiasEntry> column;
  for (const auto& e : table_.entries()) {
    if (e.zeta == zeta && e.source == BiasSource::shipped) column.push_back(e);
  }
  if (column.empty() || k < column.front().k) return std::nullopt;

  const BiasEntry& last = column.back();
  if (k > kInterpolateMaxK) {
    return BiasResolution{0.0, 0.0, BiasSource::zero,
                          "bias correction taken as 0 for k > " +
                              std::to_string(kInterpolateMaxK)};
  }
  if (k > last.k) {
    const double scale = static_cast<double>(last.k) / k;
    return BiasResolution{last.bc * scale, last.std_error * scale,
                          BiasSource::extrapolated, ""};
  }
  const auto upper = std::find_if(column.begin(), column.end(),
                                  [k](const BiasEntry& e) { return e.k >= k; });
  if (upper->k == k) {
    return BiasResolution{upper->bc, upper->std_error, BiasSource::shipped, ""};
  }
  const BiasEntry& lo = *(upper - 1);
  const BiasEntry& hi = *upper;
  const double x = 1.0 / k;
  const double x0 = 1.0 / lo.k;
  const double x1 = 1.0 / hi.k;
  const double w = (x - x0) / (x1 - x0);
  return BiasResolution{lo.bc + w * (hi.bc - lo.bc),
                        std::max(lo.std_error, hi.std_error),
                        BiasSource::interpolated, ""};
}

BiasResolution BiasResolver::resolve(std::uint32_t k, double zeta) {
  check_zeta(zeta);
  if (options_.mode == BiasMode::none) return {};

  {
    std::lock_guard lock(mutex_);
    if (const auto hit = table_.find(k, zeta)) {
      return {hit->bc, hit->std_error, hit->source, ""};
    }
    if (options_.mode == BiasMode::interpolate) {
      if (auto r = interpolate(k, zeta)) return *r;
    }
  }

  // Computed outside the lock; a concurrent duplicate computation yields the
  // same value because the seed is fixed.
  const BiasEstimate mc =
      bias_correction(k, zeta, options_.reps, options_.seed, options_.workers);
  std::lock_guard lock(mutex_);
  table_.insert({k, zeta, mc.bc, mc.std_error, BiasSource::monte_carlo});
  return {mc.bc, mc.std_error, BiasSource::monte_carlo, ""};
}

EstimateResult estimate_from_rows(std::span<const double> y, double zeta,
                                  const BiasResolution& bias) {
  EstimateResult r;
  r.k = static_cast<std::uint32_t>(y.size());
  r.zeta = zeta;
  r.raw_delta = log_mean(y, zeta);
  r.bias_correction = bias.bc;
  r.bias_source = bias.source;
  r.delta_hat = r.raw_delta - bias.bc;
  r.entropy_hat = -r.delta_hat;
  r.asymptotic_se = asymptotic_std_error(r.k, zeta);
  r.warning = bias.warning;
  return r;
}

EstimateResult estimate(const EntropySketch& sketch, BiasResolver& resolver) {
  const std::vector<double> y = sketch.normalized();
  const double zeta = sketch.config().zeta;
  return estimate_from_rows(y, zeta, resolver.resolve(sketch.k(), zeta));
}

double are(double zeta) {
  check_zeta(zeta);
  return zeta * zeta / (kFisherInformation * std::expm1(zeta * std::log(4.0)));
}

Maximum are_argmax() {
  return golden_section_maximize([](double z) { return are(z); }, 1e-6, 2.0,
                                 1e-12);
}

double asymptotic_std_error(std::uint32_t k, double zeta) {
  check_zeta(zeta);
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  return std::sqrt(std::expm1(zeta * std::log(4.0)) / (zeta * zeta * k));
}

double cramer_rao_bound(std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  return 1.0 / (kFisherInformation * k);
}

}  // namespace entsketch
