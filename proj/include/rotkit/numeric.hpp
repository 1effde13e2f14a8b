// Copyright 2026 The rotkit Authors
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

#pragma once

#include <cmath>

namespace rotkit::detail {

// Bisection for the boundary of a predicate that is true at `lo` and false at
// `hi` (either orientation of lo/hi is fine). Returns the last point known to
// satisfy the predicate, within `xtol` of the boundary.
template <class Pred>
double bisect_boundary(Pred&& holds, double lo, double hi, double xtol = 1e-15) {
  for (int it = 0; it < 200 && std::abs(hi - lo) > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (holds(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Golden-section search for the maximiser of a unimodal function on [a, b].
template <class Fn>
double golden_argmax(Fn&& f, double a, double b, double xtol = 1e-15) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (b - a) > xtol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  // The bracket ends are also candidates (maximum attained at an endpoint).
  double best = 0.5 * (a + b);
  double fbest = f(best);
  for (double p : {a, b, c, d}) {
    const double fp = f(p);
    if (fp > fbest) {
      best = p;
      fbest = fp;
    }
  }
  return best;
}

}  // namespace rotkit::detail
