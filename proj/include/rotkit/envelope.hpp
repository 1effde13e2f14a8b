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

// Upper and lower maps of a degree-one lifting,
//
//     F_u(x) = sup { F(y) : y <= x },    F_l(x) = inf { F(y) : y >= x },
//
// and the maximal constant sections used by the constant-section estimator.

#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rotkit/lifting.hpp"
#include "rotkit/numeric.hpp"

namespace rotkit {

class NumericEnvelopeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SectionTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constant section [alpha, beta] together with the rounding guard `tol`.
struct ConstantSection {
  double alpha = 0.0;
  double beta = 0.0;
  double tol = 0.0;

  double width() const { return beta - alpha; }
};

enum class EnvelopeSource { Analytic, Numeric };
enum class EnvelopeMethod { Auto, Numeric };

struct MonotoneEnvelope {
  Lifting lifting;
  std::vector<ConstantSection> sections;
  EnvelopeSource source = EnvelopeSource::Numeric;
};

inline constexpr int kEnvelopeGrid = 4096;

namespace detail {

inline double flat_eps(double v) { return 8.0 * DBL_EPSILON * std::max(1.0, std::abs(v)); }

inline double wrap_unit(double x) { return x - floor_of(x); }

inline std::vector<ConstantSection> to_sections(const std::vector<SectionBounds>& bounds) {
  std::vector<ConstantSection> out;
  out.reserve(bounds.size());
  for (const auto& b : bounds) out.push_back({b.lo, b.hi, 0.0});
  return out;
}

struct Plateau {
  double lo;
  double hi;
  double value;
};

// Reflection F~(x) = -F(-x); its upper map gives the lower map of F through
// F_l(x) = -(F~)_u(-x).
inline Lifting reflect(const Lifting& f) {
  Lifting r([f](double u) { return -f(-u); }, f.monotone_class(), f.continuity_class(),
            f.label() + "~");
  if (f.has_limits()) {
    r = r.with_limits([f](double u) { return -f.right_limit(-u); },
                      [f](double u) { return -f.left_limit(-u); });
  }
  return r;
}

}  // namespace detail

/// Maximal constant sections of a non-decreasing lifting found on a uniform
/// grid; boundaries are refined by bisection. Sections narrower than one grid
/// cell are not detected.
inline std::vector<SectionBounds> scan_constant_sections(const Lifting& f, int grid = kEnvelopeGrid) {
  const double h = 1.0 / grid;
  std::vector<double> v(grid + 1);
  for (int i = 0; i <= grid; ++i) v[i] = f(i * h);
  std::vector<char> flat(grid);
  int flats = 0;
  int rough = -1;
  for (int i = 0; i < grid; ++i) {
    flat[i] = std::abs(v[i + 1] - v[i]) <= detail::flat_eps(v[i]);
    flats += flat[i];
    if (!flat[i] && rough < 0) rough = i;
  }
  if (flats == 0) return {};
  if (rough < 0) throw NumericEnvelopeFailure("lifting '" + f.label() + "' is constant on a whole period");

  std::vector<SectionBounds> out;
  // Walk cells cyclically starting after a non-flat one; absolute cell
  // indices may exceed `grid`, f is evaluated globally.
  for (int k = 1; k <= grid; ++k) {
    const int start = rough + k;
    if (!flat[start % grid] || flat[(start - 1) % grid]) continue;
    int end = start;
    while (flat[(end + 1) % grid]) ++end;
    const double c = f(start * h);
    auto on_level = [&](double x) { return std::abs(f(x) - c) <= detail::flat_eps(c); };
    const double lo = detail::bisect_boundary(on_level, start * h, (start - 1) * h);
    const double hi = detail::bisect_boundary(on_level, (end + 1) * h, (end + 2) * h);
    const double shift = floor_of(lo);
    out.push_back({lo - shift, hi - shift});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  return out;
}

namespace detail {

// Running-sup construction of the upper map on one period, starting at the
// global maximiser (where F_u = F).
inline MonotoneEnvelope numeric_upper(const Lifting& f, int grid) {
  const bool heavy = f.has_limits();
  auto g = [&f, heavy](double x) { return heavy ? std::max(f(x), f.left_limit(x)) : f(x); };
  const double h = 1.0 / grid;

  int argmax = 0;
  double best = -INFINITY;
  for (int i = 0; i < grid; ++i) {
    const double v = g(i * h);
    if (!std::isfinite(v)) throw NumericEnvelopeFailure("lifting '" + f.label() + "' is not finite on the grid");
    if (v > best) {
      best = v;
      argmax = i;
    }
  }
  const double start = golden_argmax(g, (argmax - 1) * h, (argmax + 1) * h);
  const double start_value = std::max(g(start), best);

  std::vector<Plateau> plateaus;
  double running = start_value;
  double prev_x = start;
  double prev2_x = start;
  for (int i = 1; i <= grid;) {
    const double x = start + i * h;
    const double v = g(x);
    if (v >= running - flat_eps(running)) {
      running = std::max(running, v);
      prev2_x = prev_x;
      prev_x = x;
      ++i;
      continue;
    }
    // g fell below the running sup: a local maximum lies in [prev2_x, x].
    const double peak = golden_argmax(g, prev2_x, x);
    const double top = std::max(running, g(peak));
    const double lo = g(peak) >= running ? peak : prev_x;
    int k = i;
    while (k <= grid && g(start + k * h) <= top) ++k;
    if (k > grid) throw NumericEnvelopeFailure("upper plateau of '" + f.label() + "' does not close");
    const double hi = bisect_boundary([&](double y) { return g(y) <= top; }, start + (k - 1) * h, start + k * h);
    plateaus.push_back({lo, hi, top});
    running = g(start + k * h);
    prev2_x = start + (k - 1) * h;
    prev_x = start + k * h;
    i = k + 1;
  }

  auto plateau_list = std::make_shared<const std::vector<Plateau>>(plateaus);
  Lifting envelope(
      [f, start, plateau_list](double u) {
        // Move u into the frame [start, start + 1).
        const double lift = u < start ? 1.0 : (u >= start + 1.0 ? -1.0 : 0.0);
        const double t = u + lift;
        for (const auto& p : *plateau_list) {
          if (t >= p.lo && t <= p.hi) return p.value - lift;
        }
        return f(t) - lift;
      },
      MonotoneClass::NonDecreasing, ContinuityClass::Continuous, f.label() + "_u");

  // Sections from a scan of the envelope, with the plateau starts snapped to
  // the refined maxima.
  std::vector<SectionBounds> scanned = scan_constant_sections(envelope, grid);
  for (auto& s : scanned) {
    for (const auto& p : plateaus) {
      const double p_lo = p.lo - floor_of(p.lo);
      double delta = p_lo - s.lo;
      delta -= std::round(delta);
      if (delta > 0.0 && delta < 2.0 * h) s.lo += delta;
    }
    if (s.lo >= 1.0) {
      s.lo -= 1.0;
      s.hi -= 1.0;
    }
  }

  // Certify monotonicity and the sandwich F <= F_u on a refined grid.
  const int check = 4 * grid;
  double prev = envelope(0.0);
  for (int i = 1; i <= check; ++i) {
    const double x = static_cast<double>(i) / check;
    const double e = envelope(x);
    if (e < prev - 1e-12 || f(x) > e + 1e-10) {
      throw NumericEnvelopeFailure("could not certify the upper map of '" + f.label() + "'");
    }
    prev = e;
  }
  return {envelope, to_sections(scanned), EnvelopeSource::Numeric};
}

}  // namespace detail

/// F_u(x) = sup { F(y) : y <= x }. Registered closed forms are used unless
/// `method` asks for the numeric constructor.
inline MonotoneEnvelope upper_map(const Lifting& f, EnvelopeMethod method = EnvelopeMethod::Auto) {
  if (method == EnvelopeMethod::Auto && f.analytic_upper() != nullptr) {
    const EnvelopeSpec& spec = *f.analytic_upper();
    return {spec.map, detail::to_sections(spec.sections), EnvelopeSource::Analytic};
  }
  if (f.is_non_decreasing()) return {f, detail::to_sections(scan_constant_sections(f)), EnvelopeSource::Numeric};
  return detail::numeric_upper(f, kEnvelopeGrid);
}

/// F_l(x) = inf { F(y) : y >= x }.
inline MonotoneEnvelope lower_map(const Lifting& f, EnvelopeMethod method = EnvelopeMethod::Auto) {
  if (method == EnvelopeMethod::Auto && f.analytic_lower() != nullptr) {
    const EnvelopeSpec& spec = *f.analytic_lower();
    return {spec.map, detail::to_sections(spec.sections), EnvelopeSource::Analytic};
  }
  if (f.is_non_decreasing()) return {f, detail::to_sections(scan_constant_sections(f)), EnvelopeSource::Numeric};
  const MonotoneEnvelope reflected = detail::numeric_upper(detail::reflect(f), kEnvelopeGrid);
  const Lifting& ru = reflected.lifting;
  Lifting lower([ru](double u) { return -ru(-u); }, MonotoneClass::NonDecreasing,
                ContinuityClass::Continuous, f.label() + "_l");
  std::vector<ConstantSection> sections;
  for (const auto& s : reflected.sections) {
    const double lo = -s.beta;
    const double shift = floor_of(lo);
    sections.push_back({lo - shift, -s.alpha - shift, 0.0});
  }
  std::sort(sections.begin(), sections.end(), [](const auto& a, const auto& b) { return a.alpha < b.alpha; });
  return {lower, sections, EnvelopeSource::Numeric};
}

/// Inclusion-maximal constant sections of a monotone envelope, one
/// representative per period.
inline std::vector<ConstantSection> find_maximal_sections(const MonotoneEnvelope& e) {
  if (e.source == EnvelopeSource::Analytic || !e.sections.empty()) return e.sections;
  return detail::to_sections(scan_constant_sections(e.lifting));
}

/// Widest section; ties go to the leftmost representative in [0, 1).
inline std::optional<ConstantSection> widest_section(const std::vector<ConstantSection>& sections) {
  std::optional<ConstantSection> best;
  for (const auto& s : sections) {
    if (!best || s.width() > best->width() ||
        (s.width() == best->width() && detail::wrap_unit(s.alpha) < detail::wrap_unit(best->alpha))) {
      best = s;
    }
  }
  return best;
}

struct Reparametrized {
  Lifting lifting;
  ConstantSection section;
};

/// Conjugates F by a rotation so that the section starts at zero:
/// G(x) = F(x + alpha) - alpha. G keeps the rotation number of F and has the
/// constant section [0, beta - alpha]; the returned bound is shrunk by the
/// guard, beta' = beta - alpha - 2 tol.
inline Reparametrized reparametrize_to_zero(const Lifting& f, const ConstantSection& k) {
  if (!(k.width() > 2.0 * k.tol)) {
    throw SectionTooSmall("constant section of '" + f.label() + "' is not wider than 2*tol");
  }
  return {conjugate(f, k.alpha), {0.0, k.width() - 2.0 * k.tol, k.tol}};
}

}  // namespace rotkit
