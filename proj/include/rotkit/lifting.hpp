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
#include <concepts>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rotkit/rational.hpp"

namespace rotkit {

enum class MonotoneClass { NonDecreasing, General };
enum class ContinuityClass { Continuous, Heavy };

/// A closed interval [lo, hi] on which a lifting is constant, hi - lo < 1.
struct SectionBounds {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

struct EnvelopeSpec;

/// A degree-one lifting F of a circle map, stored through its restriction
/// to the fundamental domain [0, 1]:
///
///     F(x) = F|[0,1](frac(x)) + floor(x).
///
/// Instances are immutable values; copies share the optional attachments
/// (exact evaluator, one-sided limits, analytic envelopes).
class Lifting {
 public:
  using Fundamental = std::function<double(double)>;
  using ExactFundamental = std::function<Rational(const Rational&)>;

  Lifting(Fundamental fundamental, MonotoneClass monotone, ContinuityClass continuity,
          std::string label)
      : fundamental_(std::move(fundamental)),
        monotone_(monotone),
        continuity_(continuity),
        label_(std::move(label)) {
    if (!fundamental_) throw std::invalid_argument("lifting needs a fundamental-domain function");
  }

  double operator()(double x) const {
    const double fl = floor_of(x);
    return fundamental_(x - fl) + fl;
  }

  double fundamental(double u) const { return fundamental_(u); }
  const Fundamental& fundamental_fn() const { return fundamental_; }

  MonotoneClass monotone_class() const { return monotone_; }
  ContinuityClass continuity_class() const { return continuity_; }
  bool is_non_decreasing() const { return monotone_ == MonotoneClass::NonDecreasing; }
  const std::string& label() const { return label_; }

  // Exact-rational counterpart of the fundamental restriction.
  bool has_exact() const { return static_cast<bool>(exact_); }
  const ExactFundamental& exact_fn() const { return exact_; }
  Rational exact(const Rational& x) const {
    if (!exact_) throw std::logic_error("lifting '" + label_ + "' has no exact evaluator");
    const Rational fl = floor_of(x);
    return exact_(x - fl) + fl;
  }

  // lim_{y -> x-} F(y) and lim_{y -> x+} F(y). Continuous liftings return F(x).
  double left_limit(double x) const {
    if (!left_) return (*this)(x);
    const double fl = floor_of(x);
    const double u = x - fl;
    return u == 0.0 ? left_(1.0) + fl - 1.0 : left_(u) + fl;
  }
  double right_limit(double x) const {
    if (!right_) return (*this)(x);
    const double fl = floor_of(x);
    return right_(x - fl) + fl;
  }
  bool has_limits() const { return static_cast<bool>(left_) || static_cast<bool>(right_); }

  const EnvelopeSpec* analytic_upper() const { return upper_.get(); }
  const EnvelopeSpec* analytic_lower() const { return lower_.get(); }

  Lifting with_exact(ExactFundamental exact) const {
    Lifting copy = *this;
    copy.exact_ = std::move(exact);
    return copy;
  }
  // left/right are one-sided limits of the fundamental restriction on [0, 1].
  Lifting with_limits(Fundamental left, Fundamental right) const {
    Lifting copy = *this;
    copy.left_ = std::move(left);
    copy.right_ = std::move(right);
    return copy;
  }
  Lifting with_envelopes(std::shared_ptr<const EnvelopeSpec> upper,
                         std::shared_ptr<const EnvelopeSpec> lower) const {
    Lifting copy = *this;
    copy.upper_ = std::move(upper);
    copy.lower_ = std::move(lower);
    return copy;
  }
  Lifting with_label(std::string label) const {
    Lifting copy = *this;
    copy.label_ = std::move(label);
    return copy;
  }

 private:
  Fundamental fundamental_;
  MonotoneClass monotone_;
  ContinuityClass continuity_;
  std::string label_;
  ExactFundamental exact_;
  Fundamental left_;
  Fundamental right_;
  std::shared_ptr<const EnvelopeSpec> upper_;
  std::shared_ptr<const EnvelopeSpec> lower_;
};

/// Closed-form upper or lower map registered by a family, together with its
/// maximal constant sections (one representative per period).
struct EnvelopeSpec {
  Lifting map;
  std::vector<SectionBounds> sections;
};

/// Orbit of 0 kept split as x = frac(F^n(0)) and m = floor(F^n(0)).
template <class T = double>
struct BasicOrbit {
  T x{};
  std::int64_t m = 0;
  std::int64_t n = 0;

  T value() const { return x + T(m); }
};

using OrbitAccumulator = BasicOrbit<double>;

// One iterate; `fundamental` is only ever called on [0, 1).
template <class T, class Fn>
  requires std::invocable<const Fn&, const T&>
BasicOrbit<T> orbit_step(const Fn& fundamental, const BasicOrbit<T>& s) {
  T x = fundamental(s.x);
  const T fl = floor_of(x);
  x -= fl;
  return {std::move(x), s.m + to_int64(fl), s.n + 1};
}

inline OrbitAccumulator orbit_step(const Lifting& f, const OrbitAccumulator& s) {
  return orbit_step(f.fundamental_fn(), s);
}

template <class T, class Fn>
BasicOrbit<T> iterate_n(const Fn& fundamental, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("iterate_n: negative iterate count");
  BasicOrbit<T> s;
  for (std::int64_t i = 0; i < n; ++i) s = orbit_step<T>(fundamental, s);
  return s;
}

inline OrbitAccumulator iterate_n(const Lifting& f, std::int64_t n) {
  return iterate_n<double>(f.fundamental_fn(), n);
}

inline BasicOrbit<Rational> iterate_n_exact(const Lifting& f, std::int64_t n) {
  if (!f.has_exact()) throw std::logic_error("lifting '" + f.label() + "' has no exact evaluator");
  return iterate_n<Rational>(f.exact_fn(), n);
}

/// Fundamental restriction of G(x) = F(x + shift) - shift, the conjugate of F
/// by the rotation of angle `shift`.
template <class Fn, class T = double>
struct ConjugatedFundamental {
  Fn inner;
  T shift;

  T operator()(const T& u) const {
    const T y = u + shift;
    const T fl = floor_of(y);
    return inner(y - fl) + fl - shift;
  }
};

inline Lifting conjugate(const Lifting& f, double shift) {
  Lifting g(ConjugatedFundamental<Lifting::Fundamental>{f.fundamental_fn(), shift},
            f.monotone_class(), f.continuity_class(), f.label());
  if (f.has_exact()) {
    g = g.with_exact(
        ConjugatedFundamental<Lifting::ExactFundamental, Rational>{f.exact_fn(), Rational(shift)});
  }
  return g;
}

// F - k for an integer k.
inline Lifting shift_down(const Lifting& f, double k) {
  auto inner = f.fundamental_fn();
  Lifting g([inner, k](double u) { return inner(u) - k; }, f.monotone_class(),
            f.continuity_class(), f.label());
  if (f.has_exact()) {
    auto exact = f.exact_fn();
    const Rational kq(k);
    g = g.with_exact([exact, kq](const Rational& u) { return exact(u) - kq; });
  }
  return g;
}

/// Checks the degree-one invariants on a sampled grid and returns the list of
/// violations (empty when the lifting is well formed).
inline std::vector<std::string> check_lifting(const Lifting& f, int grid = 4096) {
  std::vector<std::string> problems;
  const double f0 = f.fundamental(0.0);
  const double f1 = f.fundamental(1.0);
  if (!std::isfinite(f0) || !std::isfinite(f1)) {
    problems.push_back("fundamental is not finite at the domain ends");
    return problems;
  }
  if (f.continuity_class() == ContinuityClass::Continuous) {
    if (std::abs(f1 - (f0 + 1.0)) > 1e-12) problems.push_back("F(1) != F(0) + 1");
  } else {
    // Heavy: F(x+) <= F(x) <= F(x-) at the integers.
    const double left = f.left_limit(1.0);
    const double right = f.right_limit(1.0);
    const double at = f(1.0);
    if (!(right <= at + 1e-12 && at <= left + 1e-12)) problems.push_back("heavy condition fails at 1");
    const double left0 = f.left_limit(0.0);
    const double right0 = f.right_limit(0.0);
    const double at0 = f(0.0);
    if (!(right0 <= at0 + 1e-12 && at0 <= left0 + 1e-12)) problems.push_back("heavy condition fails at 0");
  }
  double prev = f.fundamental(0.0);
  bool monotone = true;
  for (int i = 1; i <= grid; ++i) {
    const double u = static_cast<double>(i) / grid;
    const double v = i == grid ? f.left_limit(1.0) : f.fundamental(u);
    if (!std::isfinite(v)) {
      problems.push_back("fundamental is not finite on the grid");
      break;
    }
    if (v < prev - 1e-12) monotone = false;
    prev = v;
  }
  if (f.is_non_decreasing() && !monotone) problems.push_back("declared non-decreasing but decreases on the grid");
  return problems;
}

}  // namespace rotkit
