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

#ifndef ENTSKETCH_ESTIMATOR_HPP
#define ENTSKETCH_ESTIMATOR_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entsketch/golden_section.hpp"
#include "entsketch/sketch.hpp"

namespace entsketch {

/// Fisher information per sketch row about the location of G(y; delta).
inline constexpr double kFisherInformation = 0.3445;

enum class BiasSource { shipped, monte_carlo, interpolated, extrapolated, zero };

std::string_view to_string(BiasSource source);

struct BiasEntry {
  std::uint32_t k = 0;
  double zeta = 1.0;
  double bc = 0.0;
  double std_error = 0.0;
  BiasSource source = BiasSource::shipped;
};

/// Small-sample bias constants keyed by (k, zeta). The shipped entries come
/// from the versioned text asset data/bias_table_v1.txt; locally recomputed
/// entries are tagged BiasSource::monte_carlo.
class BiasTable {
 public:
  static BiasTable shipped();

  /// Parses `k zeta bc se` rows; '#' starts a comment.
  static BiasTable parse(std::string_view text,
                         BiasSource source = BiasSource::shipped);

  std::optional<BiasEntry> find(std::uint32_t k, double zeta) const;
  void insert(const BiasEntry& entry);

  /// Entries sorted by (zeta, k).
  std::vector<BiasEntry> entries() const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::pair<double, std::uint32_t>, BiasEntry> entries_;
};

/// Text of the shipped bias table asset.
std::string_view shipped_bias_table_text();

struct BiasEstimate {
  double bc;
  double std_error;  // NaN when reps < 2
  std::uint64_t reps;
};

/// Monte Carlo estimate of
///   BC = zeta^-1 E log( zeta^-zeta k^-1 sum_j exp(zeta z_j) ),  z_j ~ G(z;0).
/// Replicate r draws its k variates from CounterRng(seed, r), so the result is
/// independent of `workers`.
BiasEstimate bias_correction(std::uint32_t k, double zeta, std::uint64_t reps,
                             std::uint64_t seed, unsigned workers = 1);

enum class BiasMode {
  monte_carlo,  // table entry if present, else cached Monte Carlo
  interpolate,  // table entry, else interpolation in 1/k (see resolve)
  none,         // no correction
};

std::optional<BiasMode> parse_bias_mode(std::string_view name);

struct BiasResolution {
  double bc = 0.0;
  double std_error = 0.0;
  BiasSource source = BiasSource::zero;
  std::string warning;
};

inline constexpr std::uint64_t kDefaultBiasSeed = 0x5eed0b1a5c0ffeeULL;
inline constexpr std::uint64_t kDefaultBiasReps = 500000;

/// Chooses the BC subtracted by the estimator. Thread-safe; Monte Carlo
/// results are cached in the owned table.
///
/// interpolate mode, for zeta with shipped entries:
///   10 <= k <= 150   linear in 1/k between neighbouring entries
///   150 < k <= 1000  linear in 1/k between the k = 150 entry and 0 at 1/k = 0
///   k > 1000         0, with a warning
/// Anything else (k < 10, zeta without entries) falls back to Monte Carlo.
class BiasResolver {
 public:
  struct Options {
    BiasMode mode = BiasMode::monte_carlo;
    std::uint64_t reps = kDefaultBiasReps;
    std::uint64_t seed = kDefaultBiasSeed;
    unsigned workers = 1;
  };

  BiasResolver() : BiasResolver(Options{}) {}
  explicit BiasResolver(Options options,
                        BiasTable table = BiasTable::shipped());

  BiasResolution resolve(std::uint32_t k, double zeta);

  const Options& options() const noexcept { return options_; }
  BiasTable table() const;

 private:
  std::optional<BiasResolution> interpolate(std::uint32_t k, double zeta) const;

  Options options_;
  BiasTable table_;
  mutable std::mutex mutex_;
};

/// zeta^-1 log( zeta^-zeta k^-1 sum_j exp(zeta y_j) ), evaluated with a
/// max-shifted log-sum-exp.
double log_mean(std::span<const double> y, double zeta);

struct EstimateResult {
  double delta_hat = 0.0;    // raw_delta - bias_correction
  double entropy_hat = 0.0;  // -delta_hat
  double raw_delta = 0.0;    // uncorrected log-mean
  double bias_correction = 0.0;
  BiasSource bias_source = BiasSource::zero;
  double asymptotic_se = 0.0;
  std::uint32_t k = 0;
  double zeta = 1.0;
  std::string warning;
};

EstimateResult estimate_from_rows(std::span<const double> y, double zeta,
                                  const BiasResolution& bias);

/// Bias-corrected log-mean estimate of delta = sum p log p and H = -delta.
/// Throws std::domain_error if the sketch total is not positive.
EstimateResult estimate(const EntropySketch& sketch, BiasResolver& resolver);

/// zeta^2 / (0.3445 (4^zeta - 1)).
double are(double zeta);

/// Maximizer of are() over (0, 2].
Maximum are_argmax();

/// sqrt((4^zeta - 1) / (zeta^2 k)), the large-k standard deviation of the
/// estimate.
double asymptotic_std_error(std::uint32_t k, double zeta);

/// (0.3445 k)^-1, the variance lower bound for unbiased estimates of delta.
double cramer_rao_bound(std::uint32_t k);

}  // namespace entsketch

#endif  // ENTSKETCH_ESTIMATOR_HPP
