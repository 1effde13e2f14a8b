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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "rotkit/csv.hpp"
#include "rotkit/rational.hpp"

using rotkit::Fraction;
using rotkit::Rational;

TEST(FloorOf, IsMathematicalFloor) {
  EXPECT_EQ(rotkit::floor_of(-0.2), -1.0);
  EXPECT_EQ(rotkit::floor_of(-1.0), -1.0);
  EXPECT_EQ(rotkit::floor_of(0.0), 0.0);
  EXPECT_EQ(rotkit::floor_of(1.0 - 1e-16), 0.0);
  EXPECT_EQ(rotkit::floor_of(2.5), 2.0);
  EXPECT_EQ(rotkit::floor_of(1e17 + 0.0), 1e17);
  EXPECT_EQ(rotkit::floor_of(-1e17), -1e17);
}

TEST(FloorOf, MatchesStdFloorOnRandomInputs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 100000; ++i) {
    const double x = d(rng);
    ASSERT_EQ(rotkit::floor_of(x), std::floor(x)) << x;
  }
}

TEST(FloorOf, RationalNegatives) {
  EXPECT_EQ(rotkit::floor_of(Rational(-1, 5)), Rational(-1));
  EXPECT_EQ(rotkit::floor_of(Rational(-2)), Rational(-2));
  EXPECT_EQ(rotkit::floor_of(Rational(7, 4)), Rational(1));
  EXPECT_EQ(rotkit::frac_of(Rational(-1, 5)), Rational(4, 5));
}

TEST(FractionTest, ReducesWithPositiveDenominator) {
  EXPECT_EQ(Fraction::reduced(4, -6), (Fraction{-2, 3}));
  EXPECT_EQ(Fraction::reduced(0, 5), (Fraction{0, 1}));
  EXPECT_THROW(Fraction::reduced(1, 0), std::invalid_argument);
  EXPECT_EQ(rotkit::to_string(Fraction::reduced(2, 5)), "2/5");
}

TEST(FractionTest, CompareIsExact) {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2;
  EXPECT_EQ(rotkit::compare({big, big + 1}, {big - 1, big}), 1);
  EXPECT_EQ(rotkit::compare({1, 3}, {2, 6}), 0);
  EXPECT_EQ(rotkit::compare({-1, 2}, {0, 1}), -1);
}

TEST(ParseRational, AcceptsFractionsAndIntegers) {
  EXPECT_EQ(rotkit::parse_rational("819/3124"), Rational(819, 3124));
  EXPECT_EQ(rotkit::parse_rational("-3"), Rational(-3));
  EXPECT_THROW(rotkit::parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(rotkit::parse_rational("abc"), std::invalid_argument);
}

TEST(Csv, SeventeenSignificantDigitsRoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  for (int i = 0; i < 10000; ++i) {
    const double v = d(rng);
    ASSERT_EQ(std::stod(rotkit::csv::format_double(v)), v);
  }
  EXPECT_EQ(rotkit::csv::format_double(0.5), "0.5");
  EXPECT_EQ(rotkit::csv::format_double(std::nan("")), "nan");
}
