// Copyright 2026 the bdqmc authors
//
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

#ifndef BDQMC_HARNESS_HPP
#define BDQMC_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bdqmc/digitalnet.hpp"
#include "bdqmc/transport.hpp"

namespace bdqmc {

/// Rule for the half-width of the truncation map; the rule-based forms
/// depend on n and are recomputed per resolution m.
enum class TruncationRule { Sqrt2LogN, Sqrt5LogN, Explicit };

/// One convergence-sweep configuration. Option presets:
///   1: damping, theta_j = 0.1          5: inversion
///   2: damping, theta_j = 0.1/j^2      6: damping, theta_j = 0.1/j^2
///   3: Mobius -cot(pi u)               7: damping, theta_j = 0.1/j^4
///   4: truncation, rule-based a        8: damping, theta_j = 0.1/j^6
/// option = 0 selects an explicit map via map_kind.
struct ExperimentConfig {
  int option = 0;
  std::string map_kind; // "damping" | "inversion" | "mobius" | "truncation"
  std::size_t s = 5;
  double M = 0.0;
  unsigned m_lo = 8;
  unsigned m_hi = 16;
  unsigned replicates = 30;
  std::uint64_t seed = 5;
  double theta0 = 0.1;
  double theta_exponent = 0.0;
  double p = 1.0;
  TruncationRule truncation_rule = TruncationRule::Sqrt2LogN;
  double a_explicit = 0.0;
  std::string dirs_path; // empty = default table
  std::string out_dir;
  unsigned threads = 0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Parses the JSON mirror of these field names (unknown keys rejected).
  static ExperimentConfig from_json(const std::string &text);
};

struct ResultRow {
  int option = 0;
  std::size_t s = 0;
  double M = 0.0;
  unsigned m = 0;
  std::size_t n = 0;
  double rmse = 0.0;
  double mean_estimate = 0.0;
  unsigned replicates = 0;
  std::uint64_t seed = 0;
  std::size_t failures = 0;
};

/// Builds the transport map a config resolves to at resolution m
/// (m only matters for the rule-based truncation half-width).
TransportMap make_config_map(const ExperimentConfig &cfg, unsigned m);

/// Human-readable dump of a preset's resolved parameters.
std::string describe_option(int option, double M, std::size_t s);

/// Full sweep over m in [m_lo, m_hi]; rows in ascending m, deterministic
/// given the seed.
std::vector<ResultRow> run_experiment(const ExperimentConfig &cfg,
                                      const DirectionNumbers &dirs);

/// OLS slope of log2(rmse) on m over the given window. Needs at least
/// 3 in-window rows with rmse > 0.
double fit_slope(std::span<const ResultRow> rows, unsigned m_lo,
                 unsigned m_hi);

void emit_csv(std::span<const ResultRow> rows, std::ostream &out);
void emit_csv(std::span<const ResultRow> rows, const std::string &path);
std::vector<ResultRow> parse_csv(std::istream &in);

/// Self-contained SVG log2-log2 chart: one polyline per option plus two
/// dashed reference lines with slopes -1/2 and -1 anchored at the first
/// plotted point.
void emit_plot(std::span<const ResultRow> rows, const std::string &path);

/// Resolves the direction-number table: explicit path if nonempty, else
/// $BDQMC_DATA_DIR/joe-kuo-6.21201.txt, else the build-time data dir.
std::string default_dirs_path(const std::string &explicit_path = {});

} // namespace bdqmc

#endif
