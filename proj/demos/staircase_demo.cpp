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

// Small tour of the library: rotation numbers of F_mu with the three
// estimators, and rotation intervals of the standard-like families.

#include <cstdio>
#include <numbers>
#include <variant>

#include "rotkit/rotkit.hpp"

int main() {
  std::printf("F_mu: constant-section vs direct vs simo bracket\n");
  for (const double mu : {0.1, 0.25, 0.5, 0.9}) {
    const rotkit::Lifting f = rotkit::f_mu(mu);
    const auto csb = rotkit::rotation_interval(f).upper;
    const auto direct = rotkit::rho_direct(f);
    const auto simo = rotkit::simo_as_estimate(rotkit::rho_simo(f), rotkit::kDefaultSimoIterates);
    std::printf("  mu=%.2f  csb=%s (%lld/%lld after %lld iterates)  direct=%.9f  simo=%.9f +- %.1e\n", mu,
                csb.is_exact() ? "exact" : "approx", static_cast<long long>(csb.reduced.num),
                static_cast<long long>(csb.reduced.den), static_cast<long long>(csb.iterations_used), direct.value,
                simo.value, simo.error_bound);
  }

  std::printf("\nRotation intervals at omega = 0\n");
  for (const double a : {0.5, 2.0, 4.0, 2.0 * std::numbers::pi}) {
    const auto s = rotkit::rotation_interval(rotkit::standard_map(0.0, a));
    const auto t = rotkit::rotation_interval(rotkit::pwl_standard(0.0, a));
    const auto d = rotkit::rotation_interval(rotkit::disc_standard(0.0, a));
    std::printf("  a=%.4f  S:[%+.6f, %+.6f]  T:[%+.6f, %+.6f]  D:[%+.6f, %+.6f]\n", a, s.lower.value,
                s.upper.value, t.lower.value, t.upper.value, d.lower.value, d.upper.value);
  }
  return 0;
}
