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

// Command-line front end for entropy sketches.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "entsketch/bench.hpp"
#include "entsketch/estimator.hpp"
#include "entsketch/oracle.hpp"
#include "entsketch/sketch.hpp"
#include "entsketch/sketch_io.hpp"
#include "entsketch/stream_io.hpp"
#include "entsketch/tail_bounds.hpp"

namespace {

using namespace entsketch;

constexpr const char* kSeedEnv = "ENTSKETCH_SEED";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t seed = 0;
  const std::string_view text(env);
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument(std::string(kSeedEnv) + " is not an unsigned integer");
  }
  return seed;
}

char delimiter_from(const std::string& text) {
  if (text == "\\t" || text == "tab") return '\t';
  if (text.size() != 1) throw std::invalid_argument("delimiter must be a single character");
  return text[0];
}

template <class Fn>
std::size_t with_input(const std::string& path, char delimiter, Fn&& sink) {
  if (path.empty() || path == "-") return read_stream(std::cin, delimiter, sink);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_stream(in, delimiter, sink);
}

struct IngestArgs {
  std::string input;
  std::string output;
  std::uint32_t k = 0;
  double zeta = 1.0;
  std::optional<std::uint64_t> seed;
  std::string delimiter = ",";
  std::size_t cache = 4096;
};

int cmd_ingest(const IngestArgs& a) {
  const SketchConfig config{a.k, a.zeta, a.seed ? *a.seed : default_seed()};
  config.validate();
  EntropySketch sketch(config);
  if (a.cache > 0) {
    VariateCache cache(config.plan(), a.cache);
    with_input(a.input, delimiter_from(a.delimiter),
               [&](std::string_view item, double delta) { sketch.update(item, delta, cache); });
  } else {
    with_input(a.input, delimiter_from(a.delimiter),
               [&](std::string_view item, double delta) { sketch.update(item, delta); });
  }
  write_sketch_file(a.output, sketch);
  return 0;
}

struct EstimateArgs {
  std::string sketch;
  std::string bias_mode = "montecarlo";
  std::uint64_t reps = kDefaultBiasReps;
  std::optional<double> zeta;
};

int cmd_estimate(const EstimateArgs& a) {
  if (a.zeta) {
    throw std::invalid_argument("zeta is fixed when the sketch is created and cannot be overridden");
  }
  const auto mode = parse_bias_mode(a.bias_mode);
  if (!mode) throw std::invalid_argument("unknown bias mode '" + a.bias_mode + "'");
  const EntropySketch sketch = read_sketch_file(a.sketch);
  BiasResolver::Options options;
  options.mode = *mode;
  options.reps = a.reps;
  BiasResolver resolver(options);
  const EstimateResult r = estimate(sketch, resolver);
  std::cout << "entropy=" << num(r.entropy_hat) << '\n'
            << "delta_hat=" << num(r.delta_hat) << '\n'
            << "raw_delta=" << num(r.raw_delta) << '\n'
            << "bias_correction=" << num(r.bias_correction) << '\n'
            << "bias_source=" << to_string(r.bias_source) << '\n'
            << "asymptotic_se=" << num(r.asymptotic_se) << '\n'
            << "k=" << r.k << '\n'
            << "zeta=" << num(r.zeta) << '\n'
            << "total=" << num(sketch.total()) << '\n';
  if (!r.warning.empty()) {
    std::cout << "warning=" << r.warning << '\n';
    std::cerr << "warning: " << r.warning << '\n';
  }
  return 0;
}

int cmd_merge(const std::string& a, const std::string& b, const std::string& out) {
  write_sketch_file(out, merge(read_sketch_file(a), read_sketch_file(b)));
  return 0;
}

int cmd_inspect(const std::string& path) {
  std::cout << to_json(read_sketch_file(path)).dump(2) << '\n';
  return 0;
}

int cmd_size(double epsilon, double gamma, double zeta) {
  const TailBoundResult g = tail_constants(zeta, epsilon);
  std::cout << "k=" << required_sketch_size(epsilon, gamma, zeta) << '\n'
            << "g_right=" << num(g.g_right) << '\n'
            << "g_left=" << num(g.g_left) << '\n';
  return 0;
}

int cmd_oracle(const std::string& input, const std::string& delimiter, double alpha) {
  AccumulationVector acc;
  with_input(input, delimiter_from(delimiter),
             [&](std::string_view item, double delta) { acc.add(item, delta); });
  const Entropies e = exact_entropies(acc, alpha);
  std::cout << "shannon=" << num(e.shannon) << '\n'
            << "renyi=" << num(e.renyi) << '\n'
            << "tsallis=" << num(e.tsallis) << '\n'
            << "alpha=" << num(alpha) << '\n'
            << "distinct_items=" << acc.distinct_items() << '\n'
            << "total=" << num(acc.total()) << '\n';
  return 0;
}

struct BenchArgs {
  std::string spec_file;
  std::vector<std::string> settings;
  std::string kind, k, zeta, epsilon, output, bias_mode;
  std::optional<std::uint64_t> reps, seed;
  std::optional<unsigned> workers;
};

int cmd_bench(const BenchArgs& a) {
  std::string text;
  if (!a.spec_file.empty()) {
    std::ifstream in(a.spec_file);
    if (!in) throw std::runtime_error("cannot open " + a.spec_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  ExperimentSpec spec;
  if (!text.empty()) spec = parse_experiment_spec(text);
  for (const auto& s : a.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value");
    apply_setting(spec, s.substr(0, eq), s.substr(eq + 1));
  }
  if (!a.kind.empty()) apply_setting(spec, "kind", a.kind);
  if (!a.k.empty()) apply_setting(spec, "k", a.k);
  if (!a.zeta.empty()) apply_setting(spec, "zeta", a.zeta);
  if (!a.epsilon.empty()) apply_setting(spec, "epsilon", a.epsilon);
  if (!a.output.empty()) spec.output = a.output;
  if (!a.bias_mode.empty()) apply_setting(spec, "bias_mode", a.bias_mode);
  if (a.reps) spec.reps = *a.reps;
  if (a.seed) spec.seed = *a.seed;
  if (a.workers) spec.workers = *a.workers;
  spec.validate();

  if (spec.output.empty() || spec.output == "-") {
    run_experiment(spec, std::cout);
  } else {
    std::ostringstream buffer;
    run_experiment(spec, buffer);
    std::ofstream out(spec.output, std::ios::binary);
    if (!(out << buffer.str())) throw std::runtime_error("cannot write " + spec.output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming Shannon entropy sketches"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a sketch from an item stream");
  ingest_cmd->add_option("--input,-i", ingest.input, "Stream file (default: standard input)");
  ingest_cmd->add_option("--output,-o", ingest.output, "Sketch file to write")->required();
  ingest_cmd->add_option("--k", ingest.k, "Number of projections")->required()
      ->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--zeta", ingest.zeta, "Log-mean exponent")->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--seed", ingest.seed,
                         std::string("Master seed (default: $") + kSeedEnv + " or 0)");
  ingest_cmd->add_option("--delimiter,-d", ingest.delimiter, "Field delimiter");
  ingest_cmd->add_option("--cache", ingest.cache, "Cached items, 0 disables the cache");

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "Estimate Shannon entropy from a sketch");
  est_cmd->add_option("sketch", est.sketch, "Sketch file")->required();
  est_cmd->add_option("--bias-mode", est.bias_mode, "montecarlo, interpolate or none");
  est_cmd->add_option("--reps", est.reps, "Monte Carlo replicates for the bias correction")
      ->check(CLI::PositiveNumber);
  est_cmd->add_option("--zeta", est.zeta, "Rejected: zeta is stored in the sketch");

  std::string merge_a, merge_b, merge_out;
  auto* merge_cmd = app.add_subcommand("merge", "Merge two sketches with identical settings");
  merge_cmd->add_option("a", merge_a)->required();
  merge_cmd->add_option("b", merge_b)->required();
  merge_cmd->add_option("--output,-o", merge_out)->required();

  std::string inspect_path;
  auto* inspect_cmd = app.add_subcommand("inspect", "Print a sketch as JSON");
  inspect_cmd->add_option("sketch", inspect_path)->required();

  double size_eps = 0.1, size_gamma = 0.05, size_zeta = 1.0;
  auto* size_cmd = app.add_subcommand("size", "Sketch size for an (epsilon, gamma) guarantee");
  size_cmd->add_option("--epsilon", size_eps)->required();
  size_cmd->add_option("--gamma", size_gamma)->required();
  size_cmd->add_option("--zeta", size_zeta);

  std::string oracle_input, oracle_delim = ",";
  double oracle_alpha = 0.999;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact entropies of a stream");
  oracle_cmd->add_option("--input,-i", oracle_input, "Stream file (default: standard input)");
  oracle_cmd->add_option("--delimiter,-d", oracle_delim);
  oracle_cmd->add_option("--alpha", oracle_alpha, "Order of the Renyi and Tsallis entropies");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a Monte Carlo experiment, CSV output");
  bench_cmd->add_option("--spec", bench.spec_file, "Experiment file, key=value or JSON");
  bench_cmd->add_option("--set", bench.settings, "Extra key=value setting");
  bench_cmd->add_option("--kind", bench.kind);
  bench_cmd->add_option("--k", bench.k, "Comma separated list");
  bench_cmd->add_option("--zeta", bench.zeta, "Comma separated list");
  bench_cmd->add_option("--epsilon", bench.epsilon, "Comma separated list");
  bench_cmd->add_option("--reps", bench.reps);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--workers", bench.workers);
  bench_cmd->add_option("--bias-mode", bench.bias_mode);
  bench_cmd->add_option("--output,-o", bench.output);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest_cmd) return cmd_ingest(ingest);
    if (*est_cmd) return cmd_estimate(est);
    if (*merge_cmd) return cmd_merge(merge_a, merge_b, merge_out);
    if (*inspect_cmd) return cmd_inspect(inspect_path);
    if (*size_cmd) return cmd_size(size_eps, size_gamma, size_zeta);
    if (*oracle_cmd) return cmd_oracle(oracle_input, oracle_delim, oracle_alpha);
    if (*bench_cmd) return cmd_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
