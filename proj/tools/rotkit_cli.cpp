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

// rotkit: rotation numbers and rotation intervals of circle-map families.
//
//   rotkit staircase [--mu-step 1e-5] [--algorithm csb|direct|simo]
//   rotkit interval  --family standard|pwl|disc [--omega W] [--a-range lo:hi --steps N | --a A | --a-over-2pi p/q]
//   rotkit tongue    --family standard|pwl|disc --rho 0|p/q|x|golden [--a-range lo:hi] [--omega-range lo:hi] [--steps N]
//   rotkit invert    --rho 1/2|x|golden [--eps 1e-6] [--max-bisections 200]
//   rotkit bench     [--algorithm direct,simo,csb]
//
// Output is CSV on stdout or in --out. Exit status: 0 success, 1 usage
// error, 2 when some grid cells failed (they are flagged in the CSV).

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rotkit/rotkit.hpp"

namespace {

using rotkit::UsageError;

// A real number, optionally with a trailing "pi" factor: 2, 0.5, 4pi, pi.
double parse_real(std::string_view text) {
  double factor = 1.0;
  if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
    factor = std::numbers::pi;
    text.remove_suffix(2);
    if (text.empty()) return factor;
  }
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw UsageError("not a number: '" + std::string(text) + "'");
  }
  return v * factor;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("range must be lo:hi, got '" + text + "'");
  const double lo = parse_real(std::string_view(text).substr(0, colon));
  const double hi = parse_real(std::string_view(text).substr(colon + 1));
  if (!(lo <= hi)) throw UsageError("empty range '" + text + "'");
  return {lo, hi};
}

std::vector<rotkit::Algorithm> parse_algorithms(const std::string& text) {
  std::vector<rotkit::Algorithm> out;
  std::string_view rest(text);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    out.push_back(rotkit::parse_algorithm(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.empty()) throw UsageError("no algorithm selected");
  return out;
}

struct Options {
  std::string family = "fmu";
  double mu_step = 1e-5;
  std::string mu_range = "0:1";
  double omega = 0.0;
  std::string omega_range = "0:1";
  std::string a_range = "0:4pi";
  std::int64_t steps = 512;
  std::int64_t omega_steps = 0;  // 0: same as --steps
  std::string a;
  std::string a_over_2pi;
  double error = rotkit::kDefaultError;
  double tol = rotkit::kDefaultTol;
  std::int64_t simo_iters = rotkit::kDefaultSimoIterates;
  std::string algorithm = "csb";
  std::string rho;
  double eps = 1e-6;
  int max_bisections = 200;
  std::optional<int> threads;
  std::string out;
};

void add_numeric_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--error", o.error, "Target error of the estimators")->capture_default_str();
  cmd->add_option("--tol", o.tol, "Rounding guard of the constant-section test")->capture_default_str();
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--threads", o.threads, "Worker threads (default: ROTKIT_THREADS, then all cores)");
  cmd->add_option("--out", o.out, "Output CSV path (default: stdout)");
}

rotkit::SweepConfig base_config(const Options& o) {
  rotkit::SweepConfig cfg;
  cfg.family = rotkit::parse_family(o.family);
  cfg.error = o.error;
  cfg.tol = o.tol;
  cfg.simo_n = o.simo_iters;
  cfg.algorithms = parse_algorithms(o.algorithm);
  cfg.workers = rotkit::resolve_threads(o.threads);
  cfg.mu_step = o.mu_step;
  std::tie(cfg.mu_min, cfg.mu_max) = parse_range(o.mu_range);
  cfg.omega = o.omega;
  std::tie(cfg.omega_min, cfg.omega_max) = parse_range(o.omega_range);
  std::tie(cfg.a_min, cfg.a_max) = parse_range(o.a_range);
  cfg.a_steps = o.steps;
  cfg.omega_steps = o.omega_steps > 0 ? o.omega_steps : o.steps;
  if (!o.a.empty()) {
    cfg.a_min = cfg.a_max = parse_real(o.a);
    cfg.a_steps = 1;
  }
  return cfg;
}

// Writes to --out or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int run_staircase(const Options& o) {
  rotkit::SweepConfig cfg = base_config(o);
  const auto rows = rotkit::devils_staircase(cfg);
  Sink sink(o.out);
  rotkit::write_staircase(sink.stream(), rows);
  return 0;
}

int run_interval(const Options& o) {
  rotkit::SweepConfig cfg = base_config(o);
  Sink sink(o.out);
  if (!o.a_over_2pi.empty()) {
    // A single cell with the coefficient a / 2pi given exactly.
    if (!rotkit::is_interval_family(cfg.family)) throw UsageError("interval needs the standard, pwl or disc family");
    const rotkit::Rational coeff = rotkit::parse_rational(o.a_over_2pi);
    const rotkit::Rational omega(cfg.omega);
    const double a = 2.0 * std::numbers::pi * coeff.convert_to<double>();
    rotkit::IntervalRow row{a, cfg.omega, std::nullopt, {}};
    try {
      const rotkit::Lifting f = cfg.family == rotkit::Family::PwlStandard ? rotkit::pwl_standard_exact(omega, coeff)
                                : cfg.family == rotkit::Family::DiscStandard
                                    ? rotkit::disc_standard_exact(omega, coeff)
                                    : rotkit::standard_map(cfg.omega, a);
      row.interval = rotkit::rotation_interval(f, cfg.error, cfg.tol,
                                               rotkit::interval_algorithm(cfg.single_algorithm("interval")));
    } catch (const rotkit::InvalidParam&) {
      throw;
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      row.failure = e.what();
    }
    return rotkit::write_interval_graph(sink.stream(), {row}) > 0 ? 2 : 0;
  }
  const auto rows = rotkit::rotation_interval_graph(cfg);
  return rotkit::write_interval_graph(sink.stream(), rows) > 0 ? 2 : 0;
}

int run_tongue(const Options& o) {
  if (o.rho.empty()) throw UsageError("tongue needs --rho");
  rotkit::SweepConfig cfg = base_config(o);
  const rotkit::RotationTarget target = rotkit::parse_target(o.rho);
  const auto cells = rotkit::arnold_tongue(cfg, target);
  Sink sink(o.out);
  return rotkit::write_tongue(sink.stream(), cells) > 0 ? 2 : 0;
}

int run_invert(const Options& o) {
  if (o.rho.empty()) throw UsageError("invert needs --rho");
  const rotkit::RotationTarget target = rotkit::parse_target(o.rho);
  const auto result = rotkit::invert_staircase(target.value, o.eps, o.max_bisections, o.error, o.tol);
  Sink sink(o.out);
  rotkit::write_inversion(sink.stream(), target, result);
  return 0;
}

int run_bench(const Options& o) {
  rotkit::SweepConfig cfg = base_config(o);
  const auto rows = rotkit::benchmark(cfg);
  Sink sink(o.out);
  rotkit::write_benchmark(sink.stream(), rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation numbers and rotation intervals of degree-one circle maps"};
  app.require_subcommand(1);
  Options o;

  auto* staircase = app.add_subcommand("staircase", "Devil's staircase of the F_mu family");
  staircase->add_option("--family", o.family, "Family (only fmu)")->capture_default_str();
  staircase->add_option("--mu-step", o.mu_step, "Grid step in mu")->capture_default_str();
  staircase->add_option("--mu-range", o.mu_range, "mu range lo:hi")->capture_default_str();
  staircase->add_option("--algorithm", o.algorithm, "csb, direct or simo")->capture_default_str();
  staircase->add_option("--simo-iters", o.simo_iters, "Orbit length of the simo bracket")->capture_default_str();
  add_numeric_flags(staircase, o);
  add_output_flags(staircase, o);

  auto* interval = app.add_subcommand("interval", "Rotation interval as a function of a");
  interval->add_option("--family", o.family, "standard, pwl or disc")->required();
  interval->add_option("--omega", o.omega, "Fixed omega")->capture_default_str();
  interval->add_option("--a-range", o.a_range, "a range lo:hi (pi suffix allowed)")->capture_default_str();
  interval->add_option("--steps", o.steps, "Number of a values")->capture_default_str();
  auto* a_flag = interval->add_option("--a", o.a, "Single value of a");
  interval->add_option("--a-over-2pi", o.a_over_2pi, "Single exact value of a/2pi (p/q)")->excludes(a_flag);
  interval->add_option("--algorithm", o.algorithm, "csb or direct")->capture_default_str();
  add_numeric_flags(interval, o);
  add_output_flags(interval, o);

  auto* tongue = app.add_subcommand("tongue", "Arnold tongue of a rotation number over (a, omega)");
  tongue->add_option("--family", o.family, "standard, pwl or disc")->required();
  tongue->add_option("--rho", o.rho, "Target: p/q, decimal or golden")->required();
  tongue->add_option("--a-range", o.a_range, "a range lo:hi (pi suffix allowed)")->capture_default_str();
  tongue->add_option("--omega-range", o.omega_range, "omega range lo:hi")->capture_default_str();
  tongue->add_option("--steps", o.steps, "Grid points per axis")->capture_default_str();
  tongue->add_option("--omega-steps", o.omega_steps, "Grid points along omega (default: --steps)");
  tongue->add_option("--algorithm", o.algorithm, "csb or direct")->capture_default_str();
  add_numeric_flags(tongue, o);
  add_output_flags(tongue, o);

  auto* invert = app.add_subcommand("invert", "Find mu with rho(F_mu) close to a target");
  invert->add_option("--rho", o.rho, "Target: p/q, decimal or golden")->required();
  invert->add_option("--eps", o.eps, "Accepted distance to the target")->capture_default_str();
  invert->add_option("--max-bisections", o.max_bisections, "Bisection budget")->capture_default_str();
  add_numeric_flags(invert, o);
  invert->add_option("--out", o.out, "Output CSV path (default: stdout)");

  auto* bench = app.add_subcommand("bench", "Time the estimators on the standard problems");
  bench->add_option("--algorithm", o.algorithm, "Comma-separated subset of direct,simo,csb");
  bench->add_option("--mu-step", o.mu_step, "Staircase grid step");
  bench->add_option("--omega", o.omega, "Fixed omega of the interval problems")->capture_default_str();
  bench->add_option("--a-range", o.a_range, "a range lo:hi")->capture_default_str();
  bench->add_option("--steps", o.steps, "Grid points of the interval graphs and per tongue axis");
  bench->add_option("--simo-iters", o.simo_iters, "Orbit length of the simo bracket")->capture_default_str();
  add_numeric_flags(bench, o);
  add_output_flags(bench, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (bench->parsed()) {
    // Desk-sized defaults for the benchmark grids.
    if (bench->count("--algorithm") == 0) o.algorithm = "direct,simo,csb";
    if (bench->count("--mu-step") == 0) o.mu_step = 1e-3;
    if (bench->count("--steps") == 0) o.steps = 32;
  }

  try {
    if (staircase->parsed()) return run_staircase(o);
    if (interval->parsed()) return run_interval(o);
    if (tongue->parsed()) return run_tongue(o);
    if (invert->parsed()) return run_invert(o);
    if (bench->parsed()) return run_bench(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "rotkit: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "rotkit: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
