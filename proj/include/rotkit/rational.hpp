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
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rotkit {

// Arbitrary precision rational, used by the exact evaluation mode of the
// piecewise-linear families and by the test oracles. Expression templates
// are off so that generic formulas deduce plain value types.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

// Mathematical floor: floor(-0.2) == -1. The truncating conversion is exact
// below 2^52 and avoids a libm call on targets without a rounding instruction.
inline double floor_of(double x) {
  if (std::abs(x) < 4.0e15) {
    const double t = static_cast<double>(static_cast<std::int64_t>(x));
    return t - (t > x ? 1.0 : 0.0);
  }
  return std::floor(x);
}

inline Rational floor_of(const Rational& x) {
  const BigInt& num = boost::multiprecision::numerator(x);
  const BigInt& den = boost::multiprecision::denominator(x);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return Rational(q);
}

// Fractional part in [0, 1).
template <class T>
T frac_of(const T& x) {
  return x - floor_of(x);
}

inline std::int64_t to_int64(double x) { return static_cast<std::int64_t>(x); }
inline std::int64_t to_int64(const Rational& x) {
  return boost::multiprecision::numerator(x).convert_to<std::int64_t>();
}

/// Reduced fraction with a positive denominator.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction reduced(std::int64_t p, std::int64_t q) {
    if (q == 0) throw std::invalid_argument("fraction with zero denominator");
    if (q < 0) {
      p = -p;
      q = -q;
    }
    const std::int64_t g = std::gcd(p, q);
    return g > 1 ? Fraction{p / g, q / g} : Fraction{p, q};
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Rational exact() const { return Rational(num) / Rational(den); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Exact comparison p1/q1 <=> p2/q2 without overflow for 64-bit inputs.
inline int compare(const Fraction& a, const Fraction& b) {
  const __int128 lhs = static_cast<__int128>(a.num) * b.den;
  const __int128 rhs = static_cast<__int128>(b.num) * a.den;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

inline std::string to_string(const Fraction& f) {
  return std::to_string(f.num) + "/" + std::to_string(f.den);
}

// Parses "p/q" or a plain integer into a rational.
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
    BigInt p(std::string(text.substr(0, slash)));
    BigInt q(std::string(text.substr(slash + 1)));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rational(p, q);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational number: " + std::string(text));
  }
}

}  // namespace rotkit
