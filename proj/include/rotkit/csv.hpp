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

// Plot-ready CSV emission. Floats are written with 17 significant digits so
// that every value round-trips; the output depends only on the rows, never on
// the locale or on how the rows were computed.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <system_error>

namespace rotkit::csv {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc()) return "nan";
  return std::string(buf, res.ptr);
}

inline constexpr const char* kStaircaseHeader = "mu,rho,kind,m,n,error_bound,iterations";
inline constexpr const char* kIntervalHeader = "a,omega,lo,lo_kind,lo_err,hi,hi_kind,hi_err";
inline constexpr const char* kTongueHeader = "a,omega,member,lo,hi";
inline constexpr const char* kBenchmarkHeader = "problem,family,algorithm,seconds,status";
inline constexpr const char* kInvertHeader = "target,status,mu,rho,kind,bisections,bracket_width";

/// Writes comma-separated fields, one row per end_row().
class RowWriter {
 public:
  explicit RowWriter(std::ostream& out) : out_(out) {}

  RowWriter& field(const std::string& s) {
    sep();
    out_ << s;
    return *this;
  }
  RowWriter& field(const char* s) { return field(std::string(s)); }
  RowWriter& field(double v) { return field(format_double(v)); }
  RowWriter& field(std::int64_t v) { return field(std::to_string(v)); }
  RowWriter& field(int v) { return field(static_cast<std::int64_t>(v)); }
  RowWriter& empty() { return field(std::string()); }

  void end_row() {
    out_ << '\n';
    first_ = true;
  }

 private:
  void sep() {
    if (!first_) out_ << ',';
    first_ = false;
  }

  std::ostream& out_;
  bool first_ = true;
};

}  // namespace rotkit::csv
