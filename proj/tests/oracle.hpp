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

// Test oracles: exact rational iteration of piecewise-linear liftings,
// written independently of the library evaluators, plus a seeded generator
// of random non-decreasing piecewise-linear liftings with rational data.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;

inline Q floor_q(const Q& x) {
  const Z n = boost::multiprecision::numerator(x);
  const Z d = boost::multiprecision::denominator(x);
  Z q = n / d;
  if (n < 0 && q * d != n) --q;
  return Q(q);
}

/// A lifting given by its restriction to [0, 1) as a list of linear pieces.
struct PlMap {
  std::vector<Q> xs;  // 0 = xs[0] < ... < xs.back() = 1
  std::vector<Q> ys;  // ys.back() = ys[0] + 1

  Q fundamental(const Q& u) const {
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (u <= xs[i]) return ys[i - 1] + (ys[i] - ys[i - 1]) * (u - xs[i - 1]) / (xs[i] - xs[i - 1]);
    }
    return ys.back();
  }

  Q operator()(const Q& x) const {
    const Q k = floor_q(x);
    return fundamental(x - k) + k;
  }
};

/// F_mu(x) = 4/3 x + mu on [0, 3/4], mu + 1 on [3/4, 1].
inline PlMap fmu(const Q& mu) {
  return {{Q(0), Q(3, 4), Q(1)}, {mu, mu + 1, mu + 1}};
}

/// The non-decreasing map with no lifted cycle through its constant section.
inline PlMap counterexample() {
  // Pieces x + 1/5, x/2 + 1/4, 7x - 17/10, x/4 + 1, 6/5.
  return {{Q(0), Q(1, 10), Q(3, 10), Q(2, 5), Q(4, 5), Q(1)},
          {Q(1, 5), Q(3, 10), Q(2, 5), Q(11, 10), Q(6, 5), Q(6, 5)}};
}

/// Orbit of 0 that became periodic mod 1: frac(F^{start + p}(0)) =
/// frac(F^start(0)). Gives F^n(0) for all n and rho = shift / period.
struct PeriodicOrbit {
  std::vector<Q> prefix;  // F^0(0), ..., F^{start + period}(0)
  std::int64_t start = 0;
  std::int64_t period = 0;
  Z shift = 0;  // F^{start+period}(0) - F^start(0)

  Q rho() const { return Q(shift) / Q(period); }

  Q iterate(std::int64_t n) const {
    if (n <= start + period) return prefix[static_cast<std::size_t>(n)];
    const std::int64_t k = (n - start) / period;
    const std::int64_t r = (n - start) % period;
    return prefix[static_cast<std::size_t>(start + r)] + Q(shift * k);
  }
};

/// Iterates 0 exactly for at most `max_steps` steps and detects a repeated
/// fractional part.
inline std::optional<PeriodicOrbit> find_periodic_orbit(const PlMap& f, std::int64_t max_steps) {
  PeriodicOrbit orbit;
  std::map<Q, std::int64_t> seen;
  Q x = 0;
  for (std::int64_t n = 0; n <= max_steps; ++n) {
    orbit.prefix.push_back(x);
    const Q frac = x - floor_q(x);
    const auto [it, inserted] = seen.emplace(frac, n);
    if (!inserted) {
      orbit.start = it->second;
      orbit.period = n - it->second;
      const Q rise = x - orbit.prefix[static_cast<std::size_t>(orbit.start)];
      orbit.shift = boost::multiprecision::numerator(rise);
      return orbit;
    }
    x = f(x);
  }
  return std::nullopt;
}

/// Random continuous non-decreasing piecewise-linear lifting with small
/// rational knots and at least one flat piece.
inline PlMap random_monotone_pl(std::mt19937_64& rng) {
  constexpr int kDen = 24;
  std::uniform_int_distribution<int> pieces(3, 6);
  const int k = pieces(rng);
  std::vector<int> cuts;
  {
    std::vector<int> all;
    for (int i = 1; i < kDen; ++i) all.push_back(i);
    std::shuffle(all.begin(), all.end(), rng);
    cuts.assign(all.begin(), all.begin() + (k - 1));
    std::sort(cuts.begin(), cuts.end());
  }
  PlMap f;
  f.xs.push_back(Q(0));
  for (int c : cuts) f.xs.push_back(Q(c, kDen));
  f.xs.push_back(Q(1));

  // Increments of the total rise 1 over the k pieces; one piece is flat.
  std::uniform_int_distribution<int> weight(0, 6);
  std::vector<int> w(static_cast<std::size_t>(k));
  for (auto& v : w) v = weight(rng);
  std::uniform_int_distribution<int> pick(0, k - 1);
  const auto flat = static_cast<std::size_t>(pick(rng));
  w[flat] = 0;
  int total = 0;
  for (int v : w) total += v;
  if (total == 0) {
    w[(flat + 1) % w.size()] = 1;
    total = 1;
  }

  std::uniform_int_distribution<int> y0(0, 2 * kDen - 1);
  const Q start(y0(rng) - kDen, kDen);  // F(0) in [-1, 1)
  f.ys.push_back(start);
  int acc = 0;
  for (int v : w) {
    acc += v;
    f.ys.push_back(start + Q(acc, total));
  }
  return f;
}

}  // namespace oracle
