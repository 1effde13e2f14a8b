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

// Rotation numbers of non-decreasing degree-one liftings and rotation
// intervals of general ones.
//
// Three estimators are provided:
//
//  * rho_direct            F^n(0) / n with n = ceil(1 / error); the error is
//                          below 1/n for every non-decreasing lifting.
//  * rho_simo              lower/upper bounds from the ordering of the
//                          fractional parts of an orbit of length n + 1.
//  * rho_constant_section  for liftings constant on [0, beta + 2 tol]: the
//                          first n with frac(F^n(0)) <= beta
//                          gives rho = floor(F^n(0)) / n exactly. Falls back
//                          to the direct estimate after ceil(1 / error)
//                          iterates.
//
// All estimators only call the fundamental-domain function on [0, 1) and
// keep the orbit split into fractional part and accumulated floor.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rotkit/envelope.hpp"
#include "rotkit/lifting.hpp"
#include "rotkit/rational.hpp"

namespace rotkit {

class InvalidSection : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kDefaultError = 1e-6;
inline constexpr double kDefaultTol = 1e-10;
inline constexpr int kDefaultSimoIterates = 1000;
inline constexpr double kSimoTieEps = 1e-14;

enum class EstimateKind { Exact, Approx };

struct RotationEstimate {
  EstimateKind kind = EstimateKind::Approx;
  double value = 0.0;
  // Raw m/n as produced by the estimator (Exact only).
  std::int64_t m = 0;
  std::int64_t n = 1;
  Fraction reduced;
  // 0 for Exact results; exactness is conditional on rounding staying below tol.
  double error_bound = 0.0;
  std::int64_t iterations_used = 0;

  bool is_exact() const { return kind == EstimateKind::Exact; }

  static RotationEstimate exact(std::int64_t m, std::int64_t n) {
    RotationEstimate r;
    r.kind = EstimateKind::Exact;
    r.m = m;
    r.n = n;
    r.reduced = Fraction::reduced(m, n);
    r.value = static_cast<double>(m) / static_cast<double>(n);
    r.error_bound = 0.0;
    r.iterations_used = n;
    return r;
  }

  static RotationEstimate approx(double value, double error_bound, std::int64_t iterations) {
    RotationEstimate r;
    r.kind = EstimateKind::Approx;
    r.value = value;
    r.error_bound = error_bound;
    r.iterations_used = iterations;
    return r;
  }
};

struct RotationInterval {
  RotationEstimate lower;
  RotationEstimate upper;
};

struct SimoBracket {
  double rho_min = 0.0;
  double rho_max = 1.0;
  std::int64_t n = 0;

  bool contains(double rho, double slack = 0.0) const {
    return rho_min - slack <= rho && rho <= rho_max + slack;
  }
};

/// Two fractional parts of the orbit coincided: the orbit is (numerically)
/// periodic with rotation number `rho`.
struct PeriodicOrbitDetected {
  Fraction rho;
  std::int64_t first = 0;
  std::int64_t second = 0;
};

using SimoResult = std::variant<SimoBracket, PeriodicOrbitDetected>;

/// ceil(1 / error), the iterate count that makes 1/n <= error.
inline std::int64_t iterations_for(double error) {
  if (!(error > 0.0) || !std::isfinite(error)) throw std::invalid_argument("error must be positive");
  const double n = std::ceil(1.0 / error);
  if (n > 4e18) throw std::invalid_argument("error too small for a 64-bit iterate count");
  return static_cast<std::int64_t>(n);
}

// ---------------------------------------------------------------------------
// Direct estimator.

template <class Fn>
RotationEstimate rho_direct(const Fn& fundamental, double error) {
  const std::int64_t n = iterations_for(error);
  // Work with G = F - floor(F(0)) so that G(0) lies in [0, 1).
  const double shift = floor_of(fundamental(0.0));
  double x = 0.0;
  std::int64_t m = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    x = fundamental(x);
    if (shift != 0.0) x -= shift;
    const double s = floor_of(x);
    m += static_cast<std::int64_t>(s);
    x -= s;
  }
  const double value = (static_cast<double>(m) + x) / static_cast<double>(n) + shift;
  return RotationEstimate::approx(value, 1.0 / static_cast<double>(n), n);
}

/// rho_direct for L liftings at once. The orbits are interleaved so that the
/// iterate latency overlaps; every lane performs exactly the operations of
/// rho_direct and gives bit-identical results.
template <std::size_t L, class Fn>
std::array<RotationEstimate, L> rho_direct_lanes(const std::array<Fn, L>& fundamentals, double error) {
  const std::int64_t n = iterations_for(error);
  std::array<double, L> shift{};
  std::array<double, L> x{};
  std::array<std::int64_t, L> m{};
  for (std::size_t l = 0; l < L; ++l) shift[l] = floor_of(fundamentals[l](0.0));
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < L; ++l) {
      double y = fundamentals[l](x[l]);
      if (shift[l] != 0.0) y -= shift[l];
      const double s = floor_of(y);
      m[l] += static_cast<std::int64_t>(s);
      x[l] = y - s;
    }
  }
  std::array<RotationEstimate, L> out;
  for (std::size_t l = 0; l < L; ++l) {
    const double value = (static_cast<double>(m[l]) + x[l]) / static_cast<double>(n) + shift[l];
    out[l] = RotationEstimate::approx(value, 1.0 / static_cast<double>(n), n);
  }
  return out;
}

inline void require_non_decreasing(const Lifting& f, const char* who) {
  if (!f.is_non_decreasing()) {
    throw std::invalid_argument(std::string(who) + ": '" + f.label() + "' is not non-decreasing");
  }
}

inline RotationEstimate rho_direct(const Lifting& f, double error = kDefaultError) {
  require_non_decreasing(f, "rho_direct");
  return rho_direct(f.fundamental_fn(), error);
}

// ---------------------------------------------------------------------------
// Simo et al. bracket.

template <class Fn>
SimoResult rho_simo(const Fn& fundamental, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("rho_simo needs n >= 2");
  const double shift = floor_of(fundamental(0.0));
  const auto count = static_cast<std::size_t>(n) + 1;
  std::vector<double> alpha(count);
  std::vector<std::int64_t> k(count);
  double x = 0.0;
  std::int64_t m = 0;
  alpha[0] = 0.0;
  k[0] = 0;
  for (std::size_t i = 1; i < count; ++i) {
    x = fundamental(x) - shift;
    const double s = floor_of(x);
    m += static_cast<std::int64_t>(s);
    x -= s;
    alpha[i] = x;
    k[i] = m;
  }
  std::vector<std::size_t> index(count);
  std::iota(index.begin(), index.end(), std::size_t{0});
  std::stable_sort(index.begin(), index.end(),
                   [&](std::size_t a, std::size_t b) { return alpha[a] < alpha[b]; });

  const auto s = static_cast<std::int64_t>(shift);
  SimoBracket bracket{0.0, 1.0, n};
  for (std::size_t j = 0; j + 1 < count; ++j) {
    const std::size_t a = index[j];
    const std::size_t b = index[j + 1];
    if (alpha[b] - alpha[a] <= kSimoTieEps) {
      const std::size_t lo = std::min(a, b);
      const std::size_t hi = std::max(a, b);
      const auto q = static_cast<std::int64_t>(hi - lo);
      const Fraction rho = Fraction::reduced(k[hi] - k[lo] + s * q, q);
      return PeriodicOrbitDetected{rho, static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)};
    }
    const double aux = static_cast<double>(k[b] - k[a]) / (static_cast<double>(b) - static_cast<double>(a));
    if (b > a) {
      bracket.rho_min = std::max(bracket.rho_min, aux);
    } else {
      bracket.rho_max = std::min(bracket.rho_max, aux);
    }
  }
  bracket.rho_min += shift;
  bracket.rho_max += shift;
  return bracket;
}

inline SimoResult rho_simo(const Lifting& f, std::int64_t n = kDefaultSimoIterates) {
  require_non_decreasing(f, "rho_simo");
  return rho_simo(f.fundamental_fn(), n);
}

/// Error of the Simo bracket when rho satisfies |rho - p/q| <= c q^-nu:
/// 1 / (c n^nu)^(1 / (nu - 1)).
inline double simo_error_bound(double c, double nu, std::int64_t n) {
  if (!(c > 0.0) || !(nu >= 2.0) || n < 1) throw std::invalid_argument("simo_error_bound: need c > 0, nu >= 2, n >= 1");
  return 1.0 / std::pow(c * std::pow(static_cast<double>(n), nu), 1.0 / (nu - 1.0));
}

// ---------------------------------------------------------------------------
// Constant-section estimator. G must be parametrised so that [0, beta + 2 tol]
// is a constant section; orbit points within 2 tol of its right end, or just
// left of 0, are not trusted to lie in it. T is double, or Rational for the exact mode.

template <class T, class Fn>
RotationEstimate rho_constant_section(const Fn& fundamental, const T& beta, double error, double tol) {
  if (!(beta > T(0))) throw InvalidSection("rho_constant_section: beta must be positive");
  if (!(tol >= 0.0)) throw InvalidSection("rho_constant_section: tol must be non-negative");
  const std::int64_t max_iter = iterations_for(error);
  T x(0);
  std::int64_t m = 0;
  for (std::int64_t n = 1; n <= max_iter; ++n) {
    x = fundamental(x);
    const T s = floor_of(x);
    m += to_int64(s);
    x -= s;
    if (x <= beta) return RotationEstimate::exact(m, n);
  }
  const double xd = static_cast<double>(x);
  return RotationEstimate::approx((static_cast<double>(m) + xd) / static_cast<double>(max_iter),
                                  1.0 / static_cast<double>(max_iter), max_iter);
}

inline RotationEstimate rho_constant_section(const Lifting& g, double beta, double error = kDefaultError,
                                             double tol = kDefaultTol) {
  require_non_decreasing(g, "rho_constant_section");
  return rho_constant_section<double>(g.fundamental_fn(), beta, error, tol);
}

inline RotationEstimate rho_constant_section_exact(const Lifting& g, const Rational& beta,
                                                   double error = kDefaultError) {
  require_non_decreasing(g, "rho_constant_section_exact");
  if (!g.has_exact()) throw std::logic_error("lifting '" + g.label() + "' has no exact evaluator");
  return rho_constant_section<Rational>(g.exact_fn(), beta, error, 0.0);
}

// ---------------------------------------------------------------------------
// Rotation interval.

enum class IntervalAlgorithm { ConstantSection, Direct };

/// Rotation number of a monotone envelope: the constant-section estimator on
/// its widest section when that is wider than 2 tol, the direct one otherwise.
inline RotationEstimate envelope_rotation_number(const MonotoneEnvelope& e, double error, double tol,
                                                 IntervalAlgorithm algorithm = IntervalAlgorithm::ConstantSection) {
  if (algorithm == IntervalAlgorithm::ConstantSection) {
    const auto widest = widest_section(find_maximal_sections(e));
    if (widest && widest->width() > 2.0 * tol) {
      const Reparametrized g = reparametrize_to_zero(e.lifting, {widest->alpha, widest->beta, tol});
      return rho_constant_section(g.lifting, g.section.beta, error, tol);
    }
  }
  return rho_direct(e.lifting, error);
}

/// rot(F) = [rho(F_l), rho(F_u)].
inline RotationInterval rotation_interval(const Lifting& f, double error = kDefaultError, double tol = kDefaultTol,
                                          IntervalAlgorithm algorithm = IntervalAlgorithm::ConstantSection,
                                          EnvelopeMethod method = EnvelopeMethod::Auto) {
  if (f.is_non_decreasing()) {
    const RotationEstimate r = envelope_rotation_number(upper_map(f, method), error, tol, algorithm);
    return {r, r};
  }
  return {envelope_rotation_number(lower_map(f, method), error, tol, algorithm),
          envelope_rotation_number(upper_map(f, method), error, tol, algorithm)};
}

}  // namespace rotkit
