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

// Parameter sweeps: Devil's staircase of F_mu, rotation-interval graphs,
// Arnold tongues, inversion of the staircase and the algorithm benchmark.
//
// Every grid cell is an independent pure task. Cells are handed to a small
// worker pool and their results stored by grid index, so the emitted rows
// are identical for any worker count.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "rotkit/csv.hpp"
#include "rotkit/families.hpp"
#include "rotkit/rational.hpp"
#include "rotkit/rotnum.hpp"

namespace rotkit {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Algorithm { Direct, Simo, Csb };

inline std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Direct:
      return "direct";
    case Algorithm::Simo:
      return "simo";
    case Algorithm::Csb:
      return "csb";
  }
  return "unknown";
}

inline Algorithm parse_algorithm(std::string_view name) {
  if (name == "direct") return Algorithm::Direct;
  if (name == "simo") return Algorithm::Simo;
  if (name == "csb") return Algorithm::Csb;
  throw UsageError("unknown algorithm '" + std::string(name) + "' (expected direct, simo, csb)");
}

// ---------------------------------------------------------------------------
// Worker pool.

/// Worker count: an explicit positive request wins, then ROTKIT_THREADS, then
/// the hardware concurrency.
inline int resolve_threads(std::optional<int> requested = std::nullopt) {
  if (requested) {
    if (*requested < 1) throw UsageError("--threads must be positive");
    return *requested;
  }
  if (const char* env = std::getenv("ROTKIT_THREADS"); env != nullptr && *env != '\0') {
    int value = 0;
    const std::string_view text(env);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || value < 1) {
      throw UsageError("ROTKIT_THREADS must be a positive integer");
    }
    return value;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Calls fn(i) for every i in [0, count) on `workers` threads. The first
/// exception thrown by a task is rethrown once all workers have stopped.
template <class Fn>
void parallel_for_index(std::int64_t count, int workers, Fn&& fn) {
  if (count <= 0) return;
  workers = static_cast<int>(std::clamp<std::int64_t>(workers, 1, count));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        stop.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Configuration.

struct SweepConfig {
  Family family = Family::FMu;
  // Staircase grid: mu_min, mu_min + step, ..., mu_max.
  double mu_min = 0.0;
  double mu_max = 1.0;
  double mu_step = 1e-5;
  // Two-parameter grids: `steps` equally spaced points including both ends.
  double a_min = 0.0;
  double a_max = 4.0 * std::numbers::pi;
  std::int64_t a_steps = 512;
  double omega = 0.0;  // fixed omega of the interval graph
  double omega_min = 0.0;
  double omega_max = 1.0;
  std::int64_t omega_steps = 512;
  double error = kDefaultError;
  double tol = kDefaultTol;
  std::int64_t simo_n = kDefaultSimoIterates;
  std::vector<Algorithm> algorithms{Algorithm::Csb};
  int workers = 1;

  void validate() const {
    if (!(error > 0.0) || !std::isfinite(error)) throw UsageError("--error must be positive");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw UsageError("--tol must be positive");
    if (!(mu_step > 0.0) || !std::isfinite(mu_step)) throw UsageError("--mu-step must be positive");
    if (!(mu_min <= mu_max)) throw UsageError("empty mu range");
    if (!(a_min <= a_max)) throw UsageError("empty a range");
    if (!(omega_min <= omega_max)) throw UsageError("empty omega range");
    if (a_steps < 1 || omega_steps < 1) throw UsageError("--steps must be positive");
    if (simo_n < 2) throw UsageError("--simo-iters must be at least 2");
    if (workers < 1) throw UsageError("--threads must be positive");
    if (algorithms.empty()) throw UsageError("no algorithm selected");
  }

  std::int64_t mu_count() const { return std::llround((mu_max - mu_min) / mu_step) + 1; }
  double mu_at(std::int64_t i) const {
    const std::int64_t last = mu_count() - 1;
    if (last == 0) return mu_min;
    return i == last ? mu_max : mu_min + (mu_max - mu_min) * static_cast<double>(i) / static_cast<double>(last);
  }
  double a_at(std::int64_t i) const { return grid_point(a_min, a_max, a_steps, i); }
  double omega_at(std::int64_t i) const { return grid_point(omega_min, omega_max, omega_steps, i); }

  Algorithm single_algorithm(const char* who) const {
    if (algorithms.size() != 1) throw UsageError(std::string(who) + " takes exactly one algorithm");
    return algorithms.front();
  }

 private:
  static double grid_point(double lo, double hi, std::int64_t steps, std::int64_t i) {
    if (steps == 1) return lo;
    return i == steps - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
};

// ---------------------------------------------------------------------------
// Devil's staircase of F_mu.

struct StaircaseRow {
  double mu = 0.0;
  RotationEstimate rho;
};

/// Constant-section estimate for F_mu on its section [3/4, 1]; the same
/// computation as rotation_interval(f_mu(mu)) without the type erasure.
inline RotationEstimate fmu_constant_section(double mu, double error, double tol) {
  const FMuFundamental<double> f{mu};
  const double alpha = f.knee;
  const ConjugatedFundamental<FMuFundamental<double>> g{f, alpha};
  return rho_constant_section<double>(g, (1.0 - alpha) - 2.0 * tol, error, tol);
}

/// Simo bracket encoded as an estimate: midpoint with half-width error, or an
/// exact rational when the orbit closed up.
inline RotationEstimate simo_as_estimate(const SimoResult& r, std::int64_t n) {
  if (const auto* p = std::get_if<PeriodicOrbitDetected>(&r)) {
    RotationEstimate e = RotationEstimate::exact(p->rho.num, p->rho.den);
    e.iterations_used = n;
    return e;
  }
  const auto& b = std::get<SimoBracket>(r);
  return RotationEstimate::approx(0.5 * (b.rho_min + b.rho_max), 0.5 * (b.rho_max - b.rho_min), n);
}

inline constexpr std::size_t kDirectLanes = 4;

inline std::vector<StaircaseRow> devils_staircase(const SweepConfig& cfg) {
  cfg.validate();
  if (cfg.family != Family::FMu) throw UsageError("the staircase is defined for the fmu family");
  if (cfg.mu_min < 0.0 || cfg.mu_max > 1.0) throw UsageError("mu range must lie in [0, 1]");
  const Algorithm algorithm = cfg.single_algorithm("staircase");
  const std::int64_t count = cfg.mu_count();
  std::vector<StaircaseRow> rows(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) rows[static_cast<std::size_t>(i)].mu = cfg.mu_at(i);

  if (algorithm == Algorithm::Direct) {
    const std::int64_t lanes = static_cast<std::int64_t>(kDirectLanes);
    const std::int64_t blocks = (count + lanes - 1) / lanes;
    parallel_for_index(blocks, cfg.workers, [&](std::int64_t b) {
      std::array<FMuFundamental<double>, kDirectLanes> fns;
      for (std::int64_t l = 0; l < lanes; ++l) {
        const std::int64_t i = std::min(b * lanes + l, count - 1);
        fns[static_cast<std::size_t>(l)] = FMuFundamental<double>{rows[static_cast<std::size_t>(i)].mu};
      }
      const auto out = rho_direct_lanes(fns, cfg.error);
      for (std::int64_t l = 0; l < lanes && b * lanes + l < count; ++l) {
        rows[static_cast<std::size_t>(b * lanes + l)].rho = out[static_cast<std::size_t>(l)];
      }
    });
    return rows;
  }
  parallel_for_index(count, cfg.workers, [&](std::int64_t i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    if (algorithm == Algorithm::Csb) {
      row.rho = fmu_constant_section(row.mu, cfg.error, cfg.tol);
    } else {
      row.rho = simo_as_estimate(rho_simo(FMuFundamental<double>{row.mu}, cfg.simo_n), cfg.simo_n);
    }
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Rotation-interval graph and Arnold tongues.

inline bool is_interval_family(Family f) {
  return f == Family::Standard || f == Family::PwlStandard || f == Family::DiscStandard;
}

inline IntervalAlgorithm interval_algorithm(Algorithm a) {
  switch (a) {
    case Algorithm::Direct:
      return IntervalAlgorithm::Direct;
    case Algorithm::Csb:
      return IntervalAlgorithm::ConstantSection;
    case Algorithm::Simo:
      break;
  }
  throw UsageError("the simo bracket is not available for rotation intervals (rho may leave [0, 1])");
}

struct IntervalRow {
  double a = 0.0;
  double omega = 0.0;
  std::optional<RotationInterval> interval;  // empty when the cell failed
  std::string failure;
};

inline IntervalRow interval_cell(Family family, double a, double omega, const SweepConfig& cfg,
                                 IntervalAlgorithm algorithm) {
  IntervalRow row{a, omega, std::nullopt, {}};
  try {
    const Lifting f = make_lifting(FamilyParams{family, 0.0, omega, a});
    row.interval = rotation_interval(f, cfg.error, cfg.tol, algorithm);
  } catch (const std::exception& e) {
    row.failure = e.what();
  }
  return row;
}

inline std::vector<IntervalRow> rotation_interval_graph(const SweepConfig& cfg) {
  cfg.validate();
  if (!is_interval_family(cfg.family)) throw UsageError("interval graphs need the standard, pwl or disc family");
  const IntervalAlgorithm algorithm = interval_algorithm(cfg.single_algorithm("interval"));
  std::vector<IntervalRow> rows(static_cast<std::size_t>(cfg.a_steps));
  parallel_for_index(cfg.a_steps, cfg.workers, [&](std::int64_t i) {
    rows[static_cast<std::size_t>(i)] = interval_cell(cfg.family, cfg.a_at(i), cfg.omega, cfg, algorithm);
  });
  return rows;
}

/// Target rotation number of a tongue: exact when given as p/q or an integer.
struct RotationTarget {
  double value = 0.0;
  std::optional<Fraction> exact;
  std::string text;
};

inline double golden_mean() { return (std::sqrt(5.0) - 1.0) / 2.0; }

inline RotationTarget parse_target(const std::string& text) {
  if (text == "golden") return {golden_mean(), std::nullopt, text};
  const bool rational_form = text.find('/') != std::string::npos ||
                             (!text.empty() && text.find_first_not_of("+-0123456789") == std::string::npos);
  if (rational_form) {
    try {
      const Rational q = parse_rational(text);
      const BigInt& num = boost::multiprecision::numerator(q);
      const BigInt& den = boost::multiprecision::denominator(q);
      const BigInt limit(std::int64_t{1} << 62);
      if (abs(num) > limit || den > limit) throw UsageError("target fraction too large: " + text);
      const Fraction f = Fraction::reduced(num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>());
      return {f.value(), f, text};
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("invalid rotation target '" + text + "'");
    }
  }
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw UsageError("invalid rotation target '" + text + "' (expected p/q, a decimal or golden)");
  }
  return {v, std::nullopt, text};
}

namespace detail {

// e <= target, decided exactly when both are rational.
inline bool at_most(const RotationEstimate& e, const RotationTarget& t) {
  if (e.is_exact() && t.exact) return compare(e.reduced, *t.exact) <= 0;
  return e.value - e.error_bound <= t.value;
}

inline bool at_least(const RotationEstimate& e, const RotationTarget& t) {
  if (e.is_exact() && t.exact) return compare(e.reduced, *t.exact) >= 0;
  return e.value + e.error_bound >= t.value;
}

}  // namespace detail

/// target in [lo - lo_err, hi + hi_err].
inline bool tongue_member(const RotationInterval& r, const RotationTarget& target) {
  return detail::at_most(r.lower, target) && detail::at_least(r.upper, target);
}

struct TongueCell {
  double a = 0.0;
  double omega = 0.0;
  bool failed = false;
  bool member = false;
  double lo = 0.0;
  double hi = 0.0;
  double lo_err = 0.0;
  double hi_err = 0.0;
};

/// Row-major over (a, omega): cell index = ia * omega_steps + io.
inline std::vector<TongueCell> arnold_tongue(const SweepConfig& cfg, const RotationTarget& target) {
  cfg.validate();
  if (!is_interval_family(cfg.family)) throw UsageError("tongues need the standard, pwl or disc family");
  const IntervalAlgorithm algorithm = interval_algorithm(cfg.single_algorithm("tongue"));
  const std::int64_t count = cfg.a_steps * cfg.omega_steps;
  std::vector<TongueCell> cells(static_cast<std::size_t>(count));
  parallel_for_index(count, cfg.workers, [&](std::int64_t k) {
    const double a = cfg.a_at(k / cfg.omega_steps);
    const double omega = cfg.omega_at(k % cfg.omega_steps);
    const IntervalRow row = interval_cell(cfg.family, a, omega, cfg, algorithm);
    TongueCell& cell = cells[static_cast<std::size_t>(k)];
    cell.a = a;
    cell.omega = omega;
    if (!row.interval) {
      cell.failed = true;
      cell.lo = cell.hi = cell.lo_err = cell.hi_err = std::nan("");
      return;
    }
    cell.lo = row.interval->lower.value;
    cell.hi = row.interval->upper.value;
    cell.lo_err = row.interval->lower.error_bound;
    cell.hi_err = row.interval->upper.error_bound;
    cell.member = tongue_member(*row.interval, target);
  });
  return cells;
}

// ---------------------------------------------------------------------------
// Inversion of the staircase: find mu with rho(F_mu) close to a target.

struct InversionResult {
  enum class Status { Converged, IllConditioned };
  Status status = Status::IllConditioned;
  double mu = 0.0;
  RotationEstimate rho;
  int bisections = 0;
  double bracket_width = 1.0;
};

/// Bisection on mu in [0, 1], using that mu -> rho(F_mu) is non-decreasing.
/// Succeeds when |rho - target| <= eps + error bound of rho; reports
/// IllConditioned when max_bisections is exhausted or the bracket can no
/// longer be split in double precision.
inline InversionResult invert_staircase(double target, double eps, int max_bisections,
                                        double error = kDefaultError, double tol = kDefaultTol) {
  if (!(target > 0.0 && target < 1.0)) throw UsageError("inversion target must lie in (0, 1)");
  if (!(eps > 0.0)) throw UsageError("--eps must be positive");
  if (max_bisections < 1) throw UsageError("--max-bisections must be positive");
  InversionResult result;
  double lo = 0.0;
  double hi = 1.0;
  for (int k = 1; k <= max_bisections; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const RotationEstimate r = fmu_constant_section(mid, error, tol);
    result.bisections = k;
    result.mu = mid;
    result.rho = r;
    if (std::abs(r.value - target) <= eps + r.error_bound) {
      result.status = InversionResult::Status::Converged;
      result.bracket_width = hi - lo;
      return result;
    }
    if (r.value < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.status = InversionResult::Status::IllConditioned;
  result.bracket_width = hi - lo;
  return result;
}

// ---------------------------------------------------------------------------
// Benchmark.

struct BenchmarkRow {
  std::string problem;
  std::string family;
  std::string algorithm;
  std::optional<double> seconds;
  std::string status;  // ok, N/A or failed
};

/// Wall-clock time of each selected algorithm on the staircase, the
/// rotation-interval graphs and the 0-tongues of the three standard-like
/// families, with the grids of `cfg`.
inline std::vector<BenchmarkRow> benchmark(const SweepConfig& cfg) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  auto timed = [](auto&& run) {
    const auto t0 = Clock::now();
    const bool ok = run();
    return std::pair{std::chrono::duration<double>(Clock::now() - t0).count(), ok};
  };
  std::vector<BenchmarkRow> rows;
  for (const Algorithm alg : cfg.algorithms) {
    SweepConfig c = cfg;
    c.family = Family::FMu;
    c.algorithms = {alg};
    const auto [secs, ok] = timed([&] {
      devils_staircase(c);
      return true;
    });
    rows.push_back({"staircase", family_name(Family::FMu), algorithm_name(alg), secs, ok ? "ok" : "failed"});
  }
  const RotationTarget zero = parse_target("0");
  for (const char* problem : {"interval", "tongue"}) {
    for (const Family fam : {Family::Standard, Family::PwlStandard, Family::DiscStandard}) {
      for (const Algorithm alg : cfg.algorithms) {
        if (alg == Algorithm::Simo) {
          rows.push_back({problem, family_name(fam), algorithm_name(alg), std::nullopt, "N/A"});
          continue;
        }
        SweepConfig c = cfg;
        c.family = fam;
        c.algorithms = {alg};
        const auto [secs, ok] = timed([&] {
          if (std::string_view(problem) == "interval") {
            const auto out = rotation_interval_graph(c);
            return std::none_of(out.begin(), out.end(), [](const auto& r) { return !r.interval; });
          }
          const auto out = arnold_tongue(c, zero);
          return std::none_of(out.begin(), out.end(), [](const auto& r) { return r.failed; });
        });
        rows.push_back({problem, family_name(fam), algorithm_name(alg), secs, ok ? "ok" : "failed"});
      }
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV emission.

inline const char* kind_name(const RotationEstimate& e) { return e.is_exact() ? "exact" : "approx"; }

inline void write_staircase(std::ostream& out, const std::vector<StaircaseRow>& rows) {
  out << csv::kStaircaseHeader << '\n';
  csv::RowWriter w(out);
  for (const auto& r : rows) {
    w.field(r.mu).field(r.rho.value).field(kind_name(r.rho));
    if (r.rho.is_exact()) {
      w.field(r.rho.m).field(r.rho.n).empty();
    } else {
      w.empty().empty().field(r.rho.error_bound);
    }
    w.field(r.rho.iterations_used);
    w.end_row();
  }
}

/// Returns the number of failed cells (flagged in-file with kind "failed").
inline std::int64_t write_interval_graph(std::ostream& out, const std::vector<IntervalRow>& rows) {
  out << csv::kIntervalHeader << '\n';
  csv::RowWriter w(out);
  std::int64_t failures = 0;
  const double nan = std::nan("");
  for (const auto& r : rows) {
    w.field(r.a).field(r.omega);
    if (!r.interval) {
      ++failures;
      w.field(nan).field("failed").field(nan).field(nan).field("failed").field(nan);
    } else {
      const auto& lo = r.interval->lower;
      const auto& hi = r.interval->upper;
      w.field(lo.value).field(kind_name(lo)).field(lo.error_bound);
      w.field(hi.value).field(kind_name(hi)).field(hi.error_bound);
    }
    w.end_row();
  }
  return failures;
}

inline std::int64_t write_tongue(std::ostream& out, const std::vector<TongueCell>& cells) {
  out << csv::kTongueHeader << '\n';
  csv::RowWriter w(out);
  std::int64_t failures = 0;
  for (const auto& c : cells) {
    w.field(c.a).field(c.omega);
    if (c.failed) {
      ++failures;
      w.field("failed");
    } else {
      w.field(c.member ? 1 : 0);
    }
    w.field(c.lo).field(c.hi);
    w.end_row();
  }
  return failures;
}

inline void write_inversion(std::ostream& out, const RotationTarget& target, const InversionResult& r) {
  out << csv::kInvertHeader << '\n';
  csv::RowWriter w(out);
  w.field(target.text);
  w.field(r.status == InversionResult::Status::Converged ? "converged" : "ill-conditioned");
  w.field(r.mu).field(r.rho.value).field(kind_name(r.rho)).field(r.bisections).field(r.bracket_width);
  w.end_row();
}

inline void write_benchmark(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
  out << csv::kBenchmarkHeader << '\n';
  csv::RowWriter w(out);
  for (const auto& r : rows) {
    w.field(r.problem).field(r.family).field(r.algorithm);
    if (r.seconds) {
      w.field(*r.seconds);
    } else {
      w.empty();
    }
    w.field(r.status);
    w.end_row();
  }
}

}  // namespace rotkit
