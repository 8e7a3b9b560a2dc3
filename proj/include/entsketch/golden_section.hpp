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

#ifndef ENTSKETCH_GOLDEN_SECTION_HPP
#define ENTSKETCH_GOLDEN_SECTION_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace entsketch {

struct Maximum {
  double argmax;
  double value;
  int iterations;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
/// Stops when the bracket width falls below rel_tol times the bracket
/// midpoint magnitude. `f` may return -infinity (treated as the lowest value).
template <class F>
Maximum golden_section_maximize(F&& f, double lo, double hi,
                                double rel_tol = 1e-10, int max_iter = 500) {
  if (!(lo < hi)) throw std::invalid_argument("golden section: empty bracket");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  for (; it < max_iter; ++it) {
    const double scale = std::max(std::abs(lo + hi) / 2.0,
                                  std::numeric_limits<double>::min());
    if (hi - lo <= rel_tol * scale) break;
    if (fc < fd) {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    } else {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    }
  }
  return fc >= fd ? Maximum{c, fc, it} : Maximum{d, fd, it};
}

}  // namespace entsketch

#endif  // ENTSKETCH_GOLDEN_SECTION_HPP
