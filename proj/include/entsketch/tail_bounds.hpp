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

#ifndef ENTSKETCH_TAIL_BOUNDS_HPP
#define ENTSKETCH_TAIL_BOUNDS_HPP

#include <cstdint>
#include <stdexcept>

namespace entsketch {

struct SeriesConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Region where M_zeta(t) = sum_j t^j j^(zeta j) / j! is given by an
/// absolutely convergent series: |t| < t_max with t_max = 1/e at zeta = 1 and
/// +infinity for zeta < 1.
struct SeriesDomain {
  double zeta;
  double t_max;

  static SeriesDomain for_zeta(double zeta);
  bool contains(double t) const noexcept;
};

/// M_zeta(t), the moment generating function of zeta^-zeta exp(zeta z) with
/// z ~ G(z;0), summed termwise with terms in log space. Throws
/// std::domain_error outside SeriesDomain or for zeta outside (0, 1], and
/// SeriesConvergenceError if the sum cannot be evaluated to ~1e-12 relative
/// accuracy (very close to the radius, or catastrophic cancellation for
/// large negative t).
double m_series(double zeta, double t);
double log_m_series(double zeta, double t);

enum class Tail { right, left };

/// Chernoff exponent per sketch row:
///   right: Q(t, eps)   = -log M(t)  + t e^(zeta eps)
///   left:  Q(-t, -eps) = -log M(-t) - t e^(-zeta eps)
/// for t in the series domain. Returns -infinity where the series cannot be
/// evaluated.
double tail_objective(Tail tail, double zeta, double epsilon, double t);

struct TailBoundResult {
  double g_right;
  double g_left;
  double t_star_right;
  double t_star_left;
  double zeta;
  double epsilon;
};

/// G_R = eps^2 / sup_t Q(t, eps) and G_L = eps^2 / sup_t Q(-t, -eps), each
/// supremum found by golden-section search (relative tolerance 1e-10) over
/// the series domain. Both tails use the same domain. Guarantees
///   P(raw - delta >= eps) < exp(-k eps^2 / G_R),
///   P(raw - delta <= -eps) < exp(-k eps^2 / G_L)
/// for the log-mean estimate without bias correction.
/// Throws std::invalid_argument unless eps > 0 and 0 < zeta <= 1; no
/// exponential bound exists for zeta > 1.
TailBoundResult tail_constants(double zeta, double epsilon);

/// 2 (4^zeta - 1) / zeta^2, the eps -> 0 limit of both constants.
double tail_constant_limit(double zeta);

/// Smallest k with exp(-k eps^2/G_R) + exp(-k eps^2/G_L) <= gamma. The
/// guarantee is for the estimate without bias correction.
std::uint64_t required_sketch_size(double epsilon, double gamma, double zeta);

}  // namespace entsketch

#endif  // ENTSKETCH_TAIL_BOUNDS_HPP
