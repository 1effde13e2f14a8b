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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
//
// The full staircase is computed with all three estimators (the direct one
// takes 10^11 iterates), so this binary runs for a few minutes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "error_lemma.hpp"
#include "oracle.hpp"
#include "rotkit/rotkit.hpp"

namespace {

int g_failed = 0;

void report(const char* id, bool pass, const std::string& detail) {
  std::printf("[%s] %s %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failed;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[1024];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

rotkit::SweepConfig staircase_config(rotkit::Algorithm alg, int workers) {
  rotkit::SweepConfig cfg;
  cfg.family = rotkit::Family::FMu;
  cfg.mu_step = 1e-5;
  cfg.error = 1e-6;
  cfg.tol = 1e-10;
  cfg.simo_n = 1000;
  cfg.algorithms = {alg};
  cfg.workers = workers;
  return cfg;
}

}  // namespace

int main() {
  using rotkit::Algorithm;
  using rotkit::EstimateKind;
  using rotkit::Rational;
  const int workers = rotkit::resolve_threads();
  std::printf("acceptance: %d worker thread(s)\n", workers);

  // 1. Exactness and speed on the staircase.
  auto t0 = std::chrono::steady_clock::now();
  const auto csb = rotkit::devils_staircase(staircase_config(Algorithm::Csb, workers));
  const double t_csb = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const auto direct = rotkit::devils_staircase(staircase_config(Algorithm::Direct, workers));
  const double t_direct = seconds_since(t0);
  {
    std::int64_t bad = 0;
    for (const auto& row : csb) {
      const bool end = row.mu == 0.0 || row.mu == 1.0;
      if (row.rho.is_exact() == end) ++bad;
    }
    const double ratio = t_direct / t_csb;
    report("AC1", csb.size() == 100001 && bad == 0 && t_csb < 60.0 && ratio >= 100.0,
           fmt("rows=%zu misclassified=%lld csb=%.3fs direct=%.1fs speedup=%.0fx (need exact except mu=0,1; "
               "csb<60s; speedup>=100x)",
               csb.size(), static_cast<long long>(bad), t_csb, t_direct, ratio));
  }

  // 2. Tangency guard.
  {
    const double mu = 819.0 / 3124.0 - 1e-16;
    const auto r = rotkit::rotation_interval(rotkit::f_mu(mu), 1e-6, 1e-10).upper;
    const bool not_two_fifths = !(r.is_exact() && r.reduced == (rotkit::Fraction{2, 5}));
    const Rational mu_q(819, 3124);
    const auto f5 = rotkit::iterate_n_exact(rotkit::f_mu(mu_q), 5).value();
    oracle::Q y = 0;
    const auto g = oracle::fmu(oracle::Q(819, 3124));
    for (int i = 0; i < 5; ++i) y = g(y);
    const auto ex = rotkit::rho_constant_section_exact(rotkit::conjugate(rotkit::f_mu(mu_q), 0.75), Rational(1, 4));
    const bool exact_ok = f5 == Rational(7, 4) && y == oracle::Q(7, 4) && ex.is_exact() && ex.m == 2 && ex.n == 5;
    report("AC2", not_two_fifths && std::abs(r.value - 0.3983) < 1e-3 && exact_ok,
           fmt("float: kind=%s value=%.6f (need not exact 2/5, |v-0.3983|<1e-3); exact: F^5(0)=%s oracle=%s "
               "result=%s %lld/%lld",
               rotkit::kind_name(r), r.value, f5.str().c_str(), y.str().c_str(), rotkit::kind_name(ex),
               static_cast<long long>(ex.m), static_cast<long long>(ex.n)));
  }

  // 3. Counterexample.
  {
    const rotkit::Lifting f = rotkit::counterexample_map();
    const auto r = rotkit::rotation_interval(f, 1e-6, 1e-10).upper;
    Rational x(1, 10);
    for (int i = 0; i < 3; ++i) x = f.exact(x);
    bool section_ok = true;
    for (int i = 0; i <= 20; ++i) {
      Rational k = Rational(4, 5) + Rational(i, 100);
      for (int j = 0; j < 3; ++j) k = f.exact(k);
      section_ok = section_ok && k == Rational(7, 4);
    }
    oracle::Q z(1, 10);
    const auto g = oracle::counterexample();
    for (int i = 0; i < 3; ++i) z = g(z);
    report("AC3",
           !r.is_exact() && std::abs(r.value - 1.0 / 3.0) < 1e-6 && x == Rational(11, 10) &&
               z == oracle::Q(11, 10) && section_ok,
           fmt("kind=%s |value-1/3|=%.2e F^3(0.1)=%s F^3(K)={7/4}:%s", rotkit::kind_name(r),
               std::abs(r.value - 1.0 / 3.0), x.str().c_str(), section_ok ? "yes" : "no"));
  }

  // 4. Error bounds on random piecewise-linear liftings.
  {
    const auto rep = error_lemma::run(50, 20240901, 10000, 4096, 100);
    for (std::size_t i = 0; i < rep.failures.size() && i < 5; ++i) std::printf("  %s\n", rep.failures[i].c_str());
    report("AC4",
           rep.maps == 50 && rep.exact_violations == 0 && rep.float_violations == 0 && rep.grid_violations == 0,
           fmt("maps=%d (rejected %d) |rho-F^n(0)/n|<1/n: exact %lld/%lld float %lld/%lld violations; "
               "grid l(n) bounds: %lld/%lld violations",
               rep.maps, rep.rejected, static_cast<long long>(rep.exact_violations),
               static_cast<long long>(rep.exact_checks), static_cast<long long>(rep.float_violations),
               static_cast<long long>(rep.float_checks), static_cast<long long>(rep.grid_violations),
               static_cast<long long>(rep.grid_checks)));
  }

  // 5. Interval structure.
  {
    const double error = 1e-6;
    bool ok = true;
    std::string detail;
    for (const double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const auto r = rotkit::rotation_interval(rotkit::standard_map(0.0, a), error);
      const bool d = r.lower.value == 0.0 && r.upper.value == 0.0;
      ok = ok && d;
      if (!d) detail += fmt(" S(a=%g) not {0};", a);
    }
    double worst_sym = 0.0;
    for (const double a : {2.0, 4.0, 2.0 * std::numbers::pi}) {
      const auto r = rotkit::rotation_interval(rotkit::standard_map(0.0, a), error);
      worst_sym = std::max(worst_sym, std::abs(r.lower.value + r.upper.value));
    }
    ok = ok && worst_sym < 2.0 * error;
    const auto d = rotkit::rotation_interval(rotkit::disc_standard(0.0, 2.0 * std::numbers::pi), error);
    const bool disc_ok = std::abs(d.lower.value) <= error && std::abs(d.upper.value - 1.0) <= error;
    ok = ok && disc_ok;
    bool pwl_ok = true;
    for (int i = 0; i <= 8; ++i) {
      const double a = std::numbers::pi / 2.0 * i / 8.0;
      const rotkit::Lifting t = rotkit::pwl_standard(0.0, a);
      const auto r = rotkit::rotation_interval(t, error);
      pwl_ok = pwl_ok && t.is_non_decreasing() && rotkit::check_lifting(t).empty() &&
               r.lower.value == r.upper.value;
    }
    ok = ok && pwl_ok;
    report("AC5", ok,
           fmt("S a<=1 {0}%s; max|lo+hi| S a in {2,4,2pi}=%.2e (<2e-6); D(0,2pi)=[%.7f,%.7f]; T a<=pi/2 "
               "degenerate:%s",
               detail.empty() ? ":yes" : detail.c_str(), worst_sym, d.lower.value, d.upper.value,
               pwl_ok ? "yes" : "no"));
  }

  // 6. Agreement of the three estimators over the full staircase grid.
  {
    const auto simo = rotkit::devils_staircase(staircase_config(Algorithm::Simo, workers));
    double worst = 0.0;
    std::int64_t brackets = 0;
    std::int64_t periodic = 0;
    std::int64_t outside = 0;
    for (std::size_t i = 0; i < csb.size(); ++i) {
      worst = std::max(worst, std::abs(csb[i].rho.value - direct[i].rho.value));
      const auto& s = simo[i].rho;
      if (s.is_exact()) {
        ++periodic;
        const bool same = csb[i].rho.is_exact() ? csb[i].rho.reduced == s.reduced
                                                : std::abs(csb[i].rho.value - s.value) <= csb[i].rho.error_bound;
        if (!same) ++outside;
      } else {
        ++brackets;
        // The bracket is [value - half, value + half].
        const double lo = s.value - s.error_bound;
        const double hi = s.value + s.error_bound;
        const double slack = csb[i].rho.error_bound;
        if (!(lo - slack <= csb[i].rho.value && csb[i].rho.value <= hi + slack)) ++outside;
      }
    }
    report("AC6", worst <= 1e-6 && outside == 0,
           fmt("max|csb-direct|=%.3e (<=1e-6); simo brackets=%lld periodic=%lld disagreeing=%lld", worst,
               static_cast<long long>(brackets), static_cast<long long>(periodic), static_cast<long long>(outside)));
  }

  // 7. Tongue sanity.
  {
    bool ok = true;
    std::int64_t line_cells = 0;
    std::int64_t row_cells = 0;
    std::int64_t failed = 0;
    for (const auto fam : {rotkit::Family::Standard, rotkit::Family::PwlStandard}) {
      rotkit::SweepConfig cfg;
      cfg.family = fam;
      cfg.workers = workers;
      cfg.a_steps = 512;
      cfg.omega_steps = 33;
      for (const auto& c : rotkit::arnold_tongue(cfg, rotkit::parse_target("0"))) {
        if (c.failed) ++failed;
        if (c.omega == 0.0) {
          ++line_cells;
          ok = ok && !c.failed && c.member;
        }
      }
    }
    for (const auto fam : {rotkit::Family::Standard, rotkit::Family::PwlStandard, rotkit::Family::DiscStandard}) {
      for (const char* t : {"0", "1/3", "1/2", "golden"}) {
        rotkit::SweepConfig cfg;
        cfg.family = fam;
        cfg.workers = workers;
        cfg.a_min = cfg.a_max = 0.0;
        cfg.a_steps = 1;
        cfg.omega_steps = 513;
        const auto target = rotkit::parse_target(t);
        for (const auto& c : rotkit::arnold_tongue(cfg, target)) {
          ++row_cells;
          if (c.failed) ++failed;
          ok = ok && !c.failed && c.member == (std::abs(c.omega - target.value) <= cfg.error);
        }
      }
    }
    report("AC7", ok && failed == 0,
           fmt("Omega=0 line of 0-tongues (standard, pwl; 512 a-values each): %lld cells; a=0 rows vs "
               "|Omega-target|<=error: %lld cells; failed cells=%lld",
               static_cast<long long>(line_cells), static_cast<long long>(row_cells), static_cast<long long>(failed)));
  }

  // 8. Inversion.
  {
    const auto golden = rotkit::invert_staircase(rotkit::golden_mean(), 1e-6, 200);
    const auto half = rotkit::invert_staircase(0.5, 1e-3, 200);
    const bool ok = golden.status == rotkit::InversionResult::Status::IllConditioned && golden.bisections <= 200 &&
                    half.status == rotkit::InversionResult::Status::Converged && half.bisections < 50;
    report("AC8", ok,
           fmt("golden: %s after %d bisections (bracket %.3e); 1/2: %s after %d bisections (mu=%.10f rho=%s)",
               golden.status == rotkit::InversionResult::Status::IllConditioned ? "ill-conditioned" : "converged",
               golden.bisections, golden.bracket_width,
               half.status == rotkit::InversionResult::Status::Converged ? "converged" : "ill-conditioned",
               half.bisections, half.mu, rotkit::to_string(half.rho.reduced).c_str()));
  }

  // 9. Determinism across worker counts.
  {
    std::ostringstream one;
    std::ostringstream eight;
    rotkit::write_staircase(one, rotkit::devils_staircase(staircase_config(Algorithm::Csb, 1)));
    rotkit::write_staircase(eight, rotkit::devils_staircase(staircase_config(Algorithm::Csb, 8)));
    report("AC9", one.str() == eight.str() && !one.str().empty(),
           fmt("staircase CSV (%zu bytes) identical at 1 and 8 workers: %s", one.str().size(),
               one.str() == eight.str() ? "yes" : "no"));
  }

  std::printf("acceptance: %d criterion(s) failed\n", g_failed);
  return g_failed;
}
