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

// Error bounds of the direct estimator checked on random non-decreasing
// piecewise-linear liftings whose rotation number is certified exactly:
//
//   |rho - F^n(0)/n| < 1/n                    for n = 1..max_n,
//   l(n)/n <= rho <= (l(n) + 1)/n             for n = 1..grid_n,
//
// with l(n) = min_x floor(F^n(x) - x) over a uniform grid of x.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "rotkit/families.hpp"
#include "rotkit/lifting.hpp"

namespace error_lemma {

struct Report {
  int maps = 0;
  int rejected = 0;               // generated maps without a certified cycle
  std::int64_t exact_checks = 0;  // (n, map) pairs checked in rationals
  std::int64_t exact_violations = 0;
  std::int64_t float_checks = 0;  // same, with the library's floating orbit
  std::int64_t float_violations = 0;
  std::int64_t grid_checks = 0;
  std::int64_t grid_violations = 0;
  std::vector<std::string> failures;
};

inline rotkit::Lifting to_lifting(const oracle::PlMap& f) {
  std::vector<std::pair<rotkit::Rational, rotkit::Rational>> knots;
  for (std::size_t i = 0; i < f.xs.size(); ++i) {
    knots.emplace_back(rotkit::Rational(f.xs[i].str()), rotkit::Rational(f.ys[i].str()));
  }
  return rotkit::piecewise_linear(knots);
}

inline Report run(int maps, std::uint64_t seed, std::int64_t max_n = 10000, int grid = 4096, int grid_n = 100) {
  Report report;
  std::mt19937_64 rng(seed);
  while (report.maps < maps) {
    const oracle::PlMap f = oracle::random_monotone_pl(rng);
    const auto orbit = oracle::find_periodic_orbit(f, 200);
    if (!orbit) {
      ++report.rejected;
      continue;
    }
    ++report.maps;
    const oracle::Q rho = orbit->rho();
    const double rho_d = rho.convert_to<double>();
    const rotkit::Lifting lifting = to_lifting(f);

    rotkit::OrbitAccumulator s;
    for (std::int64_t n = 1; n <= max_n; ++n) {
      // Exact: |n rho - F^n(0)| < 1.
      const oracle::Q gap = oracle::Q(n) * rho - orbit->iterate(n);
      ++report.exact_checks;
      if (!(abs(gap) < 1)) {
        ++report.exact_violations;
        report.failures.push_back("exact n=" + std::to_string(n) + " rho=" + rho.str());
      }
      s = rotkit::orbit_step(lifting, s);
      ++report.float_checks;
      if (!(std::abs(rho_d - s.value() / static_cast<double>(n)) < 1.0 / static_cast<double>(n))) {
        ++report.float_violations;
        report.failures.push_back("float n=" + std::to_string(n) + " rho=" + rho.str());
      }
    }

    std::vector<std::int64_t> ell(static_cast<std::size_t>(grid_n) + 1, INT64_MAX);
    for (int i = 0; i < grid; ++i) {
      const double x0 = static_cast<double>(i) / grid;
      rotkit::OrbitAccumulator p{x0, 0, 0};
      for (int n = 1; n <= grid_n; ++n) {
        p = rotkit::orbit_step(lifting, p);
        const auto k = static_cast<std::int64_t>(rotkit::floor_of(p.value() - x0));
        ell[static_cast<std::size_t>(n)] = std::min(ell[static_cast<std::size_t>(n)], k);
      }
    }
    for (int n = 1; n <= grid_n; ++n) {
      const oracle::Q l(ell[static_cast<std::size_t>(n)]);
      const oracle::Q n_rho = oracle::Q(n) * rho;
      ++report.grid_checks;
      if (!(l <= n_rho && n_rho <= l + 1)) {
        ++report.grid_violations;
        report.failures.push_back("grid n=" + std::to_string(n) + " rho=" + rho.str());
      }
    }
  }
  return report;
}

}  // namespace error_lemma
