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
#include <cstdio>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rotkit/lifting.hpp"
#include "rotkit/numeric.hpp"
#include "rotkit/rational.hpp"

namespace rotkit {

class InvalidParam : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The parameter `a` of the standard-like families enters through a / 2pi.
inline double a_to_coefficient(double a) { return a / (2.0 * std::numbers::pi); }

// ---------------------------------------------------------------------------
// Fundamental-domain functors. Templated on the scalar so that the same
// formula serves the double and the exact-rational evaluators.

template <class T>
struct FMuFundamental {
  T mu;
  T slope = T(4) / T(3);
  T knee = T(3) / T(4);

  // Both branches are evaluated so that the double version compiles to a select.
  T operator()(const T& x) const {
    const T rising = slope * x + mu;
    const T flat = mu + T(1);
    return x <= knee ? rising : flat;
  }
};

template <class T>
T tau(const T& x) {
  if (x <= T(1) / T(4)) return T(4) * x;
  if (x <= T(3) / T(4)) return T(2) - T(4) * x;
  return T(4) * (x - T(1));
}

struct StandardFundamental {
  double omega;
  double coeff;  // a / 2pi

  double operator()(double x) const {
    return x + omega - coeff * std::sin(2.0 * std::numbers::pi * x);
  }
};

template <class T>
struct PwlStandardFundamental {
  T omega;
  T coeff;

  T operator()(const T& x) const { return x + omega - coeff * tau(x); }
};

// D(x) = x + omega + coeff * frac(x); at x = 1 the defining formula uses
// frac(1) = 0.
template <class T>
struct DiscStandardFundamental {
  T omega;
  T coeff;

  T operator()(const T& x) const { return x < T(1) ? x + omega + coeff * x : x + omega; }
};

template <class T>
struct CounterexampleFundamental {
  T operator()(const T& x) const {
    if (x <= T(1) / T(10)) return x + T(1) / T(5);
    if (x <= T(3) / T(10)) return x / T(2) + T(1) / T(4);
    if (x <= T(2) / T(5)) return T(7) * x - T(17) / T(10);
    if (x <= T(4) / T(5)) return x / T(4) + T(1);
    return T(6) / T(5);
  }
};

/// Linear interpolation through knots (x_0 = 0 < ... < x_k = 1, y_i).
template <class T>
struct PiecewiseLinearFundamental {
  std::vector<T> xs;
  std::vector<T> ys;

  T operator()(const T& x) const {
    std::size_t i = 1;
    while (i + 1 < xs.size() && x > xs[i]) ++i;
    if (x == xs[i]) return ys[i];
    if (x == xs[i - 1]) return ys[i - 1];
    return ys[i - 1] + (ys[i] - ys[i - 1]) * (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  }
};

namespace detail {

inline std::shared_ptr<const EnvelopeSpec> make_spec(Lifting map, std::vector<SectionBounds> sections) {
  return std::make_shared<const EnvelopeSpec>(EnvelopeSpec{std::move(map), std::move(sections)});
}

// A non-decreasing lifting is its own upper and lower map.
inline Lifting self_enveloped(const Lifting& f, std::vector<SectionBounds> sections) {
  auto spec = make_spec(f, std::move(sections));
  return f.with_envelopes(spec, spec);
}

inline std::string fmt_param(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Constructors.

/// F_mu: slope 4/3 on [0, 3/4], constant mu + 1 on [3/4, 1].
inline Lifting f_mu(const Rational& mu_exact, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw InvalidParam("f_mu: mu must lie in [0, 1]");
  Lifting f(FMuFundamental<double>{mu}, MonotoneClass::NonDecreasing, ContinuityClass::Continuous,
            "F_mu(" + detail::fmt_param(mu) + ")");
  f = f.with_exact(FMuFundamental<Rational>{mu_exact});
  return detail::self_enveloped(f, {{0.75, 1.0}});
}

inline Lifting f_mu(double mu) { return f_mu(Rational(mu), mu); }

inline Lifting f_mu(const Rational& mu) { return f_mu(mu, mu.convert_to<double>()); }

/// S(x) = x + omega - a/2pi sin(2 pi x); non-invertible for a > 1.
inline Lifting standard_map(double omega, double a) {
  if (!(a >= 0.0)) throw InvalidParam("standard_map: a must be non-negative");
  const double c = a_to_coefficient(a);
  const StandardFundamental s{omega, c};
  const std::string label = "S(" + detail::fmt_param(omega) + "," + detail::fmt_param(a) + ")";
  if (a <= 1.0) {
    Lifting f(s, MonotoneClass::NonDecreasing, ContinuityClass::Continuous, label);
    return detail::self_enveloped(f, {});
  }
  Lifting f(s, MonotoneClass::General, ContinuityClass::Continuous, label);
  auto global = [s](double x) {
    const double fl = floor_of(x);
    return s(x - fl) + fl;
  };

  // S' = 1 - a cos(2 pi x) vanishes at x1 (local min) and x2 = 1 - x1
  // (local max); S decreases on (-x1, x1).
  const double x1 = std::acos(1.0 / a) / (2.0 * std::numbers::pi);
  const double x2 = 1.0 - x1;
  const double top = global(-x1);
  const double bottom = global(x1);
  // End of the upper plateau on the increasing branch [x1, x2].
  const double upper_end = rotkit::detail::bisect_boundary([&](double x) { return global(x) <= top; }, x1, x2);
  // Start of the lower plateau on the increasing branch [x1 - 1, -x1].
  const double lower_start =
      rotkit::detail::bisect_boundary([&](double x) { return global(x) >= bottom; }, -x1, x1 - 1.0);

  Lifting upper(
      [s, top, upper_end, x2](double u) {
        if (u <= upper_end) return top;
        if (u < x2) return s(u);
        return top + 1.0;
      },
      MonotoneClass::NonDecreasing, ContinuityClass::Continuous, label + "_u");
  Lifting lower(
      [s, bottom, x1, lower_start](double u) {
        if (u <= x1) return bottom;
        if (u < lower_start + 1.0) return s(u);
        return bottom + 1.0;
      },
      MonotoneClass::NonDecreasing, ContinuityClass::Continuous, label + "_l");
  return f.with_envelopes(detail::make_spec(upper, {{-x1, upper_end}}),
                          detail::make_spec(lower, {{lower_start, x1}}));
}

inline Lifting rigid_rotation(double omega) {
  return standard_map(omega, 0.0).with_label("R(" + detail::fmt_param(omega) + ")");
}

/// T(x) = x + omega - a/2pi tau(frac x), with omega and a/2pi given exactly.
inline Lifting pwl_standard_exact(const Rational& omega, const Rational& coeff) {
  if (coeff < 0) throw InvalidParam("pwl_standard: a must be non-negative");
  const double om = omega.convert_to<double>();
  const double c = coeff.convert_to<double>();
  const std::string label = "T(" + detail::fmt_param(om) + ",2pi*" + detail::fmt_param(c) + ")";
  const Rational quarter(1, 4);
  if (coeff <= quarter) {
    Lifting f(PwlStandardFundamental<double>{om, c}, MonotoneClass::NonDecreasing,
              ContinuityClass::Continuous, label);
    f = f.with_exact(PwlStandardFundamental<Rational>{omega, coeff});
    // Slope 1 - 4c on [-1/4, 1/4] vanishes exactly at c = 1/4.
    std::vector<SectionBounds> sections;
    if (coeff == quarter) sections.push_back({-0.25, 0.25});
    return detail::self_enveloped(f, std::move(sections));
  }
  Lifting f(PwlStandardFundamental<double>{om, c}, MonotoneClass::General,
            ContinuityClass::Continuous, label);
  f = f.with_exact(PwlStandardFundamental<Rational>{omega, coeff});

  // Upper map: flat at the local max T(-1/4) = omega + c - 1/4 until the
  // increasing branch [1/4, 3/4] reaches it at (3c - 1/4) / (1 + 4c).
  // Lower map: flat at the local min T(1/4) = omega - c + 1/4 from
  // (1/4 - 3c) / (1 + 4c) on.
  auto upper_fn = [](const auto& om_, const auto& c_, const auto& u) {
    using T = std::decay_t<decltype(u)>;
    const T top = om_ + c_ - T(1) / T(4);
    const T end = (T(3) * c_ - T(1) / T(4)) / (T(1) + T(4) * c_);
    if (u <= end) return top;
    if (u <= T(3) / T(4)) return T(u + om_ - c_ * (T(2) - T(4) * u));
    return T(top + T(1));
  };
  auto lower_fn = [](const auto& om_, const auto& c_, const auto& u) {
    using T = std::decay_t<decltype(u)>;
    const T bottom = om_ - c_ + T(1) / T(4);
    const T start = (T(5) / T(4) + c_) / (T(1) + T(4) * c_);
    if (u <= T(1) / T(4)) return bottom;
    if (u < start) return T(u + om_ - c_ * (T(2) - T(4) * u));
    return T(bottom + T(1));
  };
  Lifting upper([=](double u) { return upper_fn(om, c, u); }, MonotoneClass::NonDecreasing,
                ContinuityClass::Continuous, label + "_u");
  upper = upper.with_exact([=](const Rational& u) { return upper_fn(omega, coeff, u); });
  Lifting lower([=](double u) { return lower_fn(om, c, u); }, MonotoneClass::NonDecreasing,
                ContinuityClass::Continuous, label + "_l");
  lower = lower.with_exact([=](const Rational& u) { return lower_fn(omega, coeff, u); });

  const double upper_end = (3.0 * c - 0.25) / (1.0 + 4.0 * c);
  const double lower_start = (0.25 - 3.0 * c) / (1.0 + 4.0 * c);
  return f.with_envelopes(detail::make_spec(upper, {{-0.25, upper_end}}),
                          detail::make_spec(lower, {{lower_start, 0.25}}));
}

inline Lifting pwl_standard(double omega, double a) {
  if (!(a >= 0.0)) throw InvalidParam("pwl_standard: a must be non-negative");
  return pwl_standard_exact(Rational(omega), Rational(a_to_coefficient(a)));
}

/// D(x) = x + omega + a/2pi frac(x): a heavy map falling by a/2pi at the
/// integers.
inline Lifting disc_standard_exact(const Rational& omega, const Rational& coeff) {
  if (coeff < 0) throw InvalidParam("disc_standard: a must be non-negative (heavy condition)");
  const double om = omega.convert_to<double>();
  const double c = coeff.convert_to<double>();
  const std::string label = "D(" + detail::fmt_param(om) + ",2pi*" + detail::fmt_param(c) + ")";
  const MonotoneClass mono = coeff == 0 ? MonotoneClass::NonDecreasing : MonotoneClass::General;
  Lifting f(DiscStandardFundamental<double>{om, c}, mono, ContinuityClass::Heavy, label);
  f = f.with_exact(DiscStandardFundamental<Rational>{omega, coeff});
  f = f.with_limits([om, c](double u) { return u + om + c * u; },
                    [om, c](double u) { return u < 1.0 ? u + om + c * u : u + om; });
  if (coeff == 0) return detail::self_enveloped(f, {});

  // F_u = max(omega + c, (1 + c) x + omega), F_l = min((1 + c) x + omega, 1 + omega).
  auto upper_fn = [](const auto& om_, const auto& c_, const auto& u) {
    using T = std::decay_t<decltype(u)>;
    const T rise = (T(1) + c_) * u + om_;
    const T top = om_ + c_;
    return rise > top ? rise : top;
  };
  auto lower_fn = [](const auto& om_, const auto& c_, const auto& u) {
    using T = std::decay_t<decltype(u)>;
    const T rise = (T(1) + c_) * u + om_;
    const T top = om_ + T(1);
    return rise < top ? rise : top;
  };
  Lifting upper([=](double u) { return upper_fn(om, c, u); }, MonotoneClass::NonDecreasing,
                ContinuityClass::Continuous, label + "_u");
  upper = upper.with_exact([=](const Rational& u) { return upper_fn(omega, coeff, u); });
  Lifting lower([=](double u) { return lower_fn(om, c, u); }, MonotoneClass::NonDecreasing,
                ContinuityClass::Continuous, label + "_l");
  lower = lower.with_exact([=](const Rational& u) { return lower_fn(omega, coeff, u); });
  return f.with_envelopes(detail::make_spec(upper, {{0.0, c / (1.0 + c)}}),
                          detail::make_spec(lower, {{1.0 / (1.0 + c), 1.0}}));
}

inline Lifting disc_standard(double omega, double a) {
  if (!(a >= 0.0)) throw InvalidParam("disc_standard: a must be non-negative (heavy condition)");
  return disc_standard_exact(Rational(omega), Rational(a_to_coefficient(a)));
}

/// Non-decreasing map with constant section [0.8, 1] and rotation number 1/3
/// whose only lifted cycles, {0.1, 0.3, 0.4} + Z among them, miss the section.
inline Lifting counterexample_map() {
  Lifting f(CounterexampleFundamental<double>{}, MonotoneClass::NonDecreasing,
            ContinuityClass::Continuous, "counterexample");
  f = f.with_exact(CounterexampleFundamental<Rational>{});
  return detail::self_enveloped(f, {{0.8, 1.0}});
}

/// Continuous piecewise-linear lifting through rational knots (0, y0), ...,
/// (1, y0 + 1). Monotonicity and flat pieces are read off the data.
inline Lifting piecewise_linear(const std::vector<std::pair<Rational, Rational>>& knots,
                                std::string label = "pwl") {
  if (knots.size() < 2 || knots.front().first != 0 || knots.back().first != 1) {
    throw InvalidParam("piecewise_linear: knots must span [0, 1]");
  }
  if (knots.back().second != knots.front().second + 1) {
    throw InvalidParam("piecewise_linear: F(1) must equal F(0) + 1");
  }
  PiecewiseLinearFundamental<Rational> exact;
  PiecewiseLinearFundamental<double> approx;
  bool monotone = true;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (i > 0 && !(knots[i].first > knots[i - 1].first)) {
      throw InvalidParam("piecewise_linear: knot abscissae must increase");
    }
    if (i > 0 && knots[i].second < knots[i - 1].second) monotone = false;
    exact.xs.push_back(knots[i].first);
    exact.ys.push_back(knots[i].second);
    approx.xs.push_back(knots[i].first.convert_to<double>());
    approx.ys.push_back(knots[i].second.convert_to<double>());
  }
  Lifting f(approx, monotone ? MonotoneClass::NonDecreasing : MonotoneClass::General,
            ContinuityClass::Continuous, std::move(label));
  f = f.with_exact(exact);
  if (!monotone) return f;
  // Merge consecutive flat pieces, including across the period boundary.
  std::vector<SectionBounds> sections;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (knots[i].second != knots[i - 1].second) continue;
    const double lo = approx.xs[i - 1];
    const double hi = approx.xs[i];
    if (!sections.empty() && sections.back().hi == lo) {
      sections.back().hi = hi;
    } else {
      sections.push_back({lo, hi});
    }
  }
  if (sections.size() >= 2 && sections.front().lo == 0.0 && sections.back().hi == 1.0) {
    sections.back().hi = 1.0 + sections.front().hi;
    sections.erase(sections.begin());
  }
  return detail::self_enveloped(f, std::move(sections));
}

// ---------------------------------------------------------------------------

enum class Family { FMu, Standard, PwlStandard, DiscStandard, Counterexample };

struct FamilyParams {
  Family family = Family::FMu;
  double mu = 0.0;
  double omega = 0.0;
  double a = 0.0;
};

inline Lifting make_lifting(const FamilyParams& p) {
  switch (p.family) {
    case Family::FMu:
      return f_mu(p.mu);
    case Family::Standard:
      return standard_map(p.omega, p.a);
    case Family::PwlStandard:
      return pwl_standard(p.omega, p.a);
    case Family::DiscStandard:
      return disc_standard(p.omega, p.a);
    case Family::Counterexample:
      return counterexample_map();
  }
  throw InvalidParam("unknown family");
}

inline std::string family_name(Family f) {
  switch (f) {
    case Family::FMu:
      return "fmu";
    case Family::Standard:
      return "standard";
    case Family::PwlStandard:
      return "pwl";
    case Family::DiscStandard:
      return "disc";
    case Family::Counterexample:
      return "counterexample";
  }
  return "unknown";
}

inline Family parse_family(const std::string& name) {
  if (name == "fmu") return Family::FMu;
  if (name == "standard") return Family::Standard;
  if (name == "pwl") return Family::PwlStandard;
  if (name == "disc") return Family::DiscStandard;
  if (name == "counterexample") return Family::Counterexample;
  throw InvalidParam("unknown family '" + name + "' (expected fmu, standard, pwl, disc, counterexample)");
}

}  // namespace rotkit
