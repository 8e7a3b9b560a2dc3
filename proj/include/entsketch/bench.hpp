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

#ifndef ENTSKETCH_BENCH_HPP
#define ENTSKETCH_BENCH_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "entsketch/estimator.hpp"
#include "entsketch/rng.hpp"
#include "entsketch/tail_bounds.hpp"

namespace entsketch {

enum class ExperimentKind { bias_table, mse_curve, tail_curve, end_to_end };
enum class Distribution { uniform, zipf };

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);
std::string_view to_string(ExperimentKind kind);

struct StreamSpec {
  Distribution distribution = Distribution::uniform;
  std::uint64_t alphabet = 4;
  double zipf_s = 1.2;
  std::uint64_t updates = 1000000;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::bias_table;
  std::vector<std::uint32_t> ks{10};
  std::vector<double> zetas{1.0};
  std::uint64_t reps = 10000;
  std::uint64_t seed = 1;
  std::string output;  // empty: standard output
  std::vector<double> epsilons{0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0};
  double reference_delta = -1.3862943611198906;  // -log 4
  StreamSpec stream;
  unsigned workers = 1;
  BiasMode bias_mode = BiasMode::monte_carlo;
  std::size_t cache_items = 16384;

  void validate() const;
};

/// Accepts either a JSON object or `key = value` lines ('#' comments). Keys:
/// kind, k, zeta, reps, seed, output, epsilon, reference_delta, distribution,
/// alphabet, zipf_s, updates, workers, bias_mode, cache. List-valued keys
/// (k, zeta, epsilon) take comma-separated values or JSON arrays.
ExperimentSpec parse_experiment_spec(std::string_view text);

/// Applies one `key`/`value` setting to `spec`; throws std::invalid_argument
/// for unknown keys or bad values.
void apply_setting(ExperimentSpec& spec, std::string_view key,
                   std::string_view value);

/// Finite stream of unit-weight updates over items "i0", "i1", ...;
/// uniform or Zipf(s) by rank.
class StreamGenerator {
 public:
  StreamGenerator(const StreamSpec& spec, CounterRng rng);

  std::uint64_t next_index();
  static std::string item_name(std::uint64_t index);
  /// Exact Shannon entropy of the generating distribution.
  double distribution_entropy() const;

 private:
  StreamSpec spec_;
  CounterRng rng_;
  std::vector<double> cumulative_;  // zipf only
};

struct BiasRow {
  std::uint32_t k;
  double zeta;
  double bc;
  double std_error;  // NaN for a single replicate
  std::uint64_t reps;
};

struct MseRow {
  std::uint32_t k;
  double zeta;
  std::uint64_t reps;
  double reference_delta;
  double bias;                 // mean of (corrected estimate - delta)
  double variance;             // sample variance of the corrected estimate
  double mse;                  // mean squared error
  double relative_mse;         // mse / delta^2
  double asymptotic_variance;  // (4^zeta - 1) / (zeta^2 k)
  double cr_bound;             // (0.3445 k)^-1
  double relative_cr_bound;    // cr_bound / delta^2
};

struct EndToEndRow {
  std::uint64_t replicate;
  std::uint32_t k;
  double zeta;
  std::uint64_t updates;
  double entropy_hat;
  double entropy_oracle;
  double error;  // entropy_hat - entropy_oracle
};

/// Monte Carlo BC per (zeta, k), from z_j ~ G(z;0) directly.
std::vector<BiasRow> run_bias_table(const ExperimentSpec& spec);

/// Error of the corrected estimate on y_j = reference_delta + z_j.
/// Throws std::invalid_argument if reference_delta is 0.
std::vector<MseRow> run_mse_curve(const ExperimentSpec& spec,
                                  BiasResolver& resolver);

/// Tail constants over spec.epsilons for each zeta.
std::vector<TailBoundResult> run_tail_curve(const ExperimentSpec& spec);

/// Streams through sketch + estimator and the exact oracle, one stream per
/// replicate and a fresh hash seed per replicate.
std::vector<EndToEndRow> run_end_to_end(const ExperimentSpec& spec,
                                        BiasResolver& resolver);

void write_csv(std::ostream& out, const std::vector<BiasRow>& rows);
void write_csv(std::ostream& out, const std::vector<MseRow>& rows);
void write_csv(std::ostream& out, const std::vector<TailBoundResult>& rows);
void write_csv(std::ostream& out, const std::vector<EndToEndRow>& rows);

/// Runs the experiment and writes its CSV to `out`.
void run_experiment(const ExperimentSpec& spec, std::ostream& out);

}  // namespace entsketch

#endif  // ENTSKETCH_BENCH_HPP
