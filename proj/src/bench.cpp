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

#include "entsketch/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "entsketch/oracle.hpp"
#include "entsketch/parallel.hpp"
#include "entsketch/sketch.hpp"
#include "entsketch/stable.hpp"

namespace entsketch {
namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(ws) - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument("bad value '" + std::string(text) + "' for " +
                                std::string(key));
  }
  return value;
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_number<T>(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument(std::string(key) + " needs values");
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "NA";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Moments {
  double mean;
  double variance;
  double mean_square;
};

Moments moments(const std::vector<double>& xs) {
  double mean = 0.0;
  double sq = 0.0;
  for (double x : xs) {
    mean += x;
    sq += x * x;
  }
  const double n = static_cast<double>(xs.size());
  mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, xs.size() > 1 ? ss / (n - 1.0) : 0.0, sq / n};
}

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
  if (name == "bias_table") return ExperimentKind::bias_table;
  if (name == "mse_curve") return ExperimentKind::mse_curve;
  if (name == "tail_curve") return ExperimentKind::tail_curve;
  if (name == "end_to_end") return ExperimentKind::end_to_end;
  return std::nullopt;
}

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::bias_table: return "bias_table";
    case ExperimentKind::mse_curve: return "mse_curve";
    case ExperimentKind::tail_curve: return "tail_curve";
    case ExperimentKind::end_to_end: return "end_to_end";
  }
  return "unknown";
}

void ExperimentSpec::validate() const {
  if (reps == 0) throw std::invalid_argument("reps must be at least 1");
  if (ks.empty() || zetas.empty()) {
    throw std::invalid_argument("experiment needs at least one k and one zeta");
  }
  for (auto k : ks) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
  }
  for (double z : zetas) {
    if (!(z > 0.0) || !std::isfinite(z)) throw std::invalid_argument("zeta must be positive");
  }
  if (kind == ExperimentKind::tail_curve) {
    if (epsilons.empty()) throw std::invalid_argument("tail_curve needs epsilon values");
    for (double e : epsilons) {
      if (!(e > 0.0)) throw std::invalid_argument("epsilon must be positive");
    }
  }
  if (kind == ExperimentKind::end_to_end) {
    if (stream.alphabet == 0) throw std::invalid_argument("alphabet must be at least 1");
    if (stream.updates == 0) throw std::invalid_argument("updates must be at least 1");
    if (stream.distribution == Distribution::zipf && !(stream.zipf_s > 0.0)) {
      throw std::invalid_argument("zipf exponent must be positive");
    }
    if (cache_items == 0) throw std::invalid_argument("cache must hold at least one item");
  }
}

void apply_setting(ExperimentSpec& spec, std::string_view key,
                   std::string_view value) {
  value = trim(value);
  if (key == "kind") {
    const auto kind = parse_experiment_kind(value);
    if (!kind) throw std::invalid_argument("unknown experiment kind '" + std::string(value) + "'");
    spec.kind = *kind;
  } else if (key == "k") {
    spec.ks = parse_list<std::uint32_t>(key, value);
  } else if (key == "zeta") {
    spec.zetas = parse_list<double>(key, value);
  } else if (key == "reps") {
    spec.reps = parse_number<std::uint64_t>(key, value);
  } else if (key == "seed") {
    spec.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "output") {
    spec.output = std::string(value);
  } else if (key == "epsilon") {
    spec.epsilons = parse_list<double>(key, value);
  } else if (key == "reference_delta") {
    spec.reference_delta = parse_number<double>(key, value);
  } else if (key == "distribution") {
    if (value == "uniform") {
      spec.stream.distribution = Distribution::uniform;
    } else if (value == "zipf") {
      spec.stream.distribution = Distribution::zipf;
    } else {
      throw std::invalid_argument("distribution must be uniform or zipf");
    }
  } else if (key == "alphabet") {
    spec.stream.alphabet = parse_number<std::uint64_t>(key, value);
  } else if (key == "zipf_s") {
    spec.stream.zipf_s = parse_number<double>(key, value);
  } else if (key == "updates") {
    spec.stream.updates = parse_number<std::uint64_t>(key, value);
  } else if (key == "workers") {
    spec.workers = parse_number<unsigned>(key, value);
  } else if (key == "bias_mode") {
    const auto mode = parse_bias_mode(value);
    if (!mode) throw std::invalid_argument("unknown bias mode '" + std::string(value) + "'");
    spec.bias_mode = *mode;
  } else if (key == "cache") {
    spec.cache_items = parse_number<std::size_t>(key, value);
  } else {
    throw std::invalid_argument("unknown experiment setting '" + std::string(key) + "'");
  }
}

ExperimentSpec parse_experiment_spec(std::string_view text) {
  ExperimentSpec spec;
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("experiment spec is not valid JSON: ") + e.what());
    }
    for (const auto& [key, value] : j.items()) {
      std::string flat;
      if (value.is_array()) {
        for (const auto& v : value) {
          if (!flat.empty()) flat += ',';
          flat += v.is_string() ? v.get<std::string>() : v.dump();
        }
      } else {
        flat = value.is_string() ? value.get<std::string>() : value.dump();
      }
      apply_setting(spec, key, flat);
    }
  } else {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      const std::string_view content = trim(line);
      if (content.empty() || content.front() == '#') continue;
      const auto eq = content.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("experiment spec line " + std::to_string(line_number) +
                                    " is not key = value");
      }
      apply_setting(spec, trim(content.substr(0, eq)), content.substr(eq + 1));
    }
  }
  spec.validate();
  return spec;
}

StreamGenerator::StreamGenerator(const StreamSpec& spec, CounterRng rng)
    : spec_(spec), rng_(rng) {
  if (spec_.alphabet == 0) throw std::invalid_argument("alphabet must be at least 1");
  if (spec_.distribution == Distribution::zipf) {
    cumulative_.resize(spec_.alphabet);
    double acc = 0.0;
    for (std::uint64_t i = 0; i < spec_.alphabet; ++i) {
      acc += std::pow(static_cast<double>(i + 1), -spec_.zipf_s);
      cumulative_[i] = acc;
    }
  }
}

std::uint64_t StreamGenerator::next_index() {
  if (spec_.distribution == Distribution::uniform) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(rng_()) * spec_.alphabet) >> 64);
  }
  const double target = rng_.uniform_open() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  return std::min<std::uint64_t>(it - cumulative_.begin(), spec_.alphabet - 1);
}

std::string StreamGenerator::item_name(std::uint64_t index) {
  return "i" + std::to_string(index);
}

double StreamGenerator::distribution_entropy() const {
  if (spec_.distribution == Distribution::uniform) {
    return std::log(static_cast<double>(spec_.alphabet));
  }
  std::vector<double> p(spec_.alphabet);
  double prev = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = (cumulative_[i] - prev) / cumulative_.back();
    prev = cumulative_[i];
  }
  return shannon_entropy(p);
}

std::vector<BiasRow> run_bias_table(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<BiasRow> rows;
  for (double zeta : sorted_unique(spec.zetas)) {
    for (auto k : sorted_unique(spec.ks)) {
      const BiasEstimate b = bias_correction(k, zeta, spec.reps, spec.seed, spec.workers);
      rows.push_back({k, zeta, b.bc, b.std_error, b.reps});
    }
  }
  return rows;
}

std::vector<MseRow> run_mse_curve(const ExperimentSpec& spec,
                                  BiasResolver& resolver) {
  spec.validate();
  const double delta = spec.reference_delta;
  if (delta == 0.0) {
    throw std::invalid_argument("relative MSE is undefined for reference delta 0");
  }
  std::vector<MseRow> rows;
  for (double zeta : sorted_unique(spec.zetas)) {
    for (auto k : sorted_unique(spec.ks)) {
      const BiasResolution bias = resolver.resolve(k, zeta);
      std::vector<double> estimates(spec.reps);
      parallel_for(spec.workers, spec.workers, [&](std::size_t b) {
        std::vector<double> y(k);
        const std::uint64_t begin = spec.reps * b / spec.workers;
        const std::uint64_t end = spec.reps * (b + 1) / spec.workers;
        for (std::uint64_t r = begin; r < end; ++r) {
          CounterRng rng(spec.seed, r);
          for (auto& v : y) v = delta + sample_g0(rng);
          estimates[r] = log_mean(y, zeta) - bias.bc;
        }
      });
      std::vector<double> errors(estimates.size());
      for (std::size_t i = 0; i < errors.size(); ++i) errors[i] = estimates[i] - delta;
      const Moments m = moments(errors);
      const double cr = cramer_rao_bound(k);
      const double asym = asymptotic_std_error(k, zeta);
      rows.push_back({k, zeta, spec.reps, delta, m.mean, m.variance, m.mean_square,
                      m.mean_square / (delta * delta), asym * asym, cr,
                      cr / (delta * delta)});
    }
  }
  return rows;
}

std::vector<TailBoundResult> run_tail_curve(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<TailBoundResult> rows;
  for (double zeta : sorted_unique(spec.zetas)) {
    for (double eps : sorted_unique(spec.epsilons)) {
      rows.push_back(tail_constants(zeta, eps));
    }
  }
  return rows;
}

std::vector<EndToEndRow> run_end_to_end(const ExperimentSpec& spec,
                                        BiasResolver& resolver) {
  spec.validate();
  const auto ks = sorted_unique(spec.ks);
  const auto zetas = sorted_unique(spec.zetas);

  struct Column {
    std::uint32_t k;
    double zeta;
    BiasResolution bias;
  };
  std::vector<Column> columns;
  for (double zeta : zetas) {
    for (auto k : ks) columns.push_back({k, zeta, resolver.resolve(k, zeta)});
  }

  std::vector<std::string> names(spec.stream.alphabet);
  for (std::uint64_t i = 0; i < names.size(); ++i) names[i] = StreamGenerator::item_name(i);

  std::vector<std::vector<EndToEndRow>> per_replicate(spec.reps);
  parallel_for(spec.reps, spec.workers, [&](std::size_t r) {
    StreamGenerator gen(spec.stream, CounterRng(spec.seed, 2 * r));
    const std::uint64_t sketch_seed = counter_word(mix64(spec.seed), 2 * r + 1);

    std::vector<EntropySketch> sketches;
    std::vector<VariateCache> caches;
    for (const auto& c : columns) {
      const SketchConfig cfg{c.k, c.zeta, sketch_seed};
      sketches.emplace_back(cfg);
      caches.emplace_back(cfg.plan(), std::min<std::size_t>(spec.cache_items,
                                                            spec.stream.alphabet));
    }
    AccumulationVector oracle;
    for (std::uint64_t t = 0; t < spec.stream.updates; ++t) {
      const std::string& item = names[gen.next_index()];
      for (std::size_t c = 0; c < sketches.size(); ++c) {
        sketches[c].update(item, 1.0, caches[c]);
      }
      oracle.add(item, 1.0);
    }
    const double h = shannon_entropy(oracle);
    for (std::size_t c = 0; c < sketches.size(); ++c) {
      const EstimateResult e = estimate_from_rows(sketches[c].normalized(),
                                                  columns[c].zeta, columns[c].bias);
      per_replicate[r].push_back({r, columns[c].k, columns[c].zeta, spec.stream.updates,
                                  e.entropy_hat, h, e.entropy_hat - h});
    }
  });

  std::vector<EndToEndRow> rows;
  for (auto& block : per_replicate) {
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BiasRow>& rows) {
  out << "k,zeta,bc,std_error,reps\n";
  for (const auto& r : rows) {
    out << r.k << ',' << format_double(r.zeta) << ',' << format_double(r.bc) << ','
        << format_double(r.std_error) << ',' << r.reps << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<MseRow>& rows) {
  out << "k,zeta,reps,reference_delta,bias,variance,mse,relative_mse,"
         "asymptotic_variance,cr_bound,relative_cr_bound\n";
  for (const auto& r : rows) {
    out << r.k << ',' << format_double(r.zeta) << ',' << r.reps << ','
        << format_double(r.reference_delta) << ',' << format_double(r.bias) << ','
        << format_double(r.variance) << ',' << format_double(r.mse) << ','
        << format_double(r.relative_mse) << ',' << format_double(r.asymptotic_variance)
        << ',' << format_double(r.cr_bound) << ',' << format_double(r.relative_cr_bound)
        << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<TailBoundResult>& rows) {
  out << "zeta,epsilon,g_right,g_left,t_star_right,t_star_left\n";
  for (const auto& r : rows) {
    out << format_double(r.zeta) << ',' << format_double(r.epsilon) << ','
        << format_double(r.g_right) << ',' << format_double(r.g_left) << ','
        << format_double(r.t_star_right) << ',' << format_double(r.t_star_left) << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<EndToEndRow>& rows) {
  out << "replicate,k,zeta,updates,entropy_hat,entropy_oracle,error\n";
  for (const auto& r : rows) {
    out << r.replicate << ',' << r.k << ',' << format_double(r.zeta) << ',' << r.updates
        << ',' << format_double(r.entropy_hat) << ',' << format_double(r.entropy_oracle)
        << ',' << format_double(r.error) << '\n';
  }
}

void run_experiment(const ExperimentSpec& spec, std::ostream& out) {
  BiasResolver::Options options;
  options.mode = spec.bias_mode;
  options.workers = spec.workers;
  BiasResolver resolver(options);
  switch (spec.kind) {
    case ExperimentKind::bias_table: write_csv(out, run_bias_table(spec)); break;
    case ExperimentKind::mse_curve: write_csv(out, run_mse_curve(spec, resolver)); break;
    case ExperimentKind::tail_curve: write_csv(out, run_tail_curve(spec)); break;
    case ExperimentKind::end_to_end: write_csv(out, run_end_to_end(spec, resolver)); break;
  }
}

}  // namespace entsketch
