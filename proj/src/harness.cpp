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

#include "bdqmc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "bdqmc/estimator.hpp"
#include "bdqmc/testfn.hpp"

#ifndef BDQMC_DEFAULT_DATA_DIR
#define BDQMC_DEFAULT_DATA_DIR "."
#endif

namespace bdqmc {

namespace {

constexpr const char *kTableFile = "joe-kuo-6.21201.txt";

[[noreturn]] void config_fail(const std::string &field,
                              const std::string &what) {
  throw std::invalid_argument("config field '" + field + "': " + what);
}

TruncationRule parse_rule(const std::string &name) {
  if (name == "sqrt2logn")
    return TruncationRule::Sqrt2LogN;
  if (name == "sqrt5logn")
    return TruncationRule::Sqrt5LogN;
  if (name == "explicit")
    return TruncationRule::Explicit;
  config_fail("truncation_rule", "unknown rule '" + name + "'");
}

double truncation_half_width(TruncationRule rule, double a_explicit,
                             unsigned m) {
  const double log_n = m * std::log(2.0);
  switch (rule) {
  case TruncationRule::Sqrt2LogN:
    return std::sqrt(2.0 * log_n);
  case TruncationRule::Sqrt5LogN:
    return std::sqrt(5.0 * log_n);
  case TruncationRule::Explicit:
    return a_explicit;
  }
  return a_explicit;
}

std::string format_row(const ResultRow &r) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d,%zu,%.17g,%u,%zu,%.17g,%.17g,%u,%llu,%zu\n", r.option,
                r.s, r.M, r.m, r.n, r.rmse, r.mean_estimate, r.replicates,
                static_cast<unsigned long long>(r.seed), r.failures);
  return buf;
}

} // namespace

void ExperimentConfig::validate() const {
  if (option < 0 || option > 8)
    config_fail("option", "must be 0 (explicit map) or a preset 1..8");
  if (option == 0 && map_kind != "damping" && map_kind != "inversion" &&
      map_kind != "mobius" && map_kind != "truncation")
    config_fail("map_kind", "must be one of damping, inversion, mobius, "
                            "truncation when option = 0");
  if (s < 1)
    config_fail("s", "must be >= 1");
  if (!(M < 0.5))
    config_fail("M", "must be < 0.5");
  if (m_lo > m_hi)
    config_fail("m_lo", "must not exceed m_hi");
  if (m_hi > 32)
    config_fail("m_hi", "must be <= 32");
  if (replicates < 2)
    config_fail("replicates", "must be >= 2");
  if (!(theta0 > 0.0 && theta0 <= 0.5))
    config_fail("theta0", "must lie in (0, 1/2]");
  if (theta_exponent < 0.0)
    config_fail("theta_exponent", "must be >= 0");
  if (!(p >= 1.0))
    config_fail("p", "must be >= 1");
  const bool wants_truncation =
      option == 4 || (option == 0 && map_kind == "truncation");
  if (wants_truncation && truncation_rule == TruncationRule::Explicit &&
      !(a_explicit > 0.0))
    config_fail("a_explicit", "must be positive for the explicit rule");
}

ExperimentConfig ExperimentConfig::from_json(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw std::invalid_argument(std::string("config JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string &key = it.key();
    try {
      if (key == "option")
        cfg.option = it->get<int>();
      else if (key == "map_kind")
        cfg.map_kind = it->get<std::string>();
      else if (key == "s")
        cfg.s = it->get<std::size_t>();
      else if (key == "M")
        cfg.M = it->get<double>();
      else if (key == "m_lo")
        cfg.m_lo = it->get<unsigned>();
      else if (key == "m_hi")
        cfg.m_hi = it->get<unsigned>();
      else if (key == "replicates")
        cfg.replicates = it->get<unsigned>();
      else if (key == "seed")
        cfg.seed = it->get<std::uint64_t>();
      else if (key == "theta0")
        cfg.theta0 = it->get<double>();
      else if (key == "theta_exponent")
        cfg.theta_exponent = it->get<double>();
      else if (key == "p")
        cfg.p = it->get<double>();
      else if (key == "truncation_rule")
        cfg.truncation_rule = parse_rule(it->get<std::string>());
      else if (key == "a_explicit")
        cfg.a_explicit = it->get<double>();
      else if (key == "dirs_path")
        cfg.dirs_path = it->get<std::string>();
      else if (key == "out_dir")
        cfg.out_dir = it->get<std::string>();
      else if (key == "threads")
        cfg.threads = it->get<unsigned>();
      else
        config_fail(key, "unknown field");
    } catch (const nlohmann::json::exception &e) {
      config_fail(key, e.what());
    }
  }
  cfg.validate();
  return cfg;
}

TransportMap make_config_map(const ExperimentConfig &cfg, unsigned m) {
  switch (cfg.option) {
  case 1:
    return TransportMap::boundary_damping(
        DampingParams::constant(0.1, cfg.s, cfg.p));
  case 2:
  case 6:
    return TransportMap::boundary_damping(
        DampingParams::power(0.1, 2.0, cfg.s, cfg.p));
  case 7:
    return TransportMap::boundary_damping(
        DampingParams::power(0.1, 4.0, cfg.s, cfg.p));
  case 8:
    return TransportMap::boundary_damping(
        DampingParams::power(0.1, 6.0, cfg.s, cfg.p));
  case 3:
    return TransportMap::mobius(cfg.s);
  case 4: {
    // the preset binds the half-width rule to the integrand regime
    const TruncationRule rule =
        cfg.M >= 0.15 ? TruncationRule::Sqrt5LogN : TruncationRule::Sqrt2LogN;
    return TransportMap::truncation(cfg.s,
                                    truncation_half_width(rule, 0.0, m));
  }
  case 5:
    return TransportMap::inversion(cfg.s);
  case 0:
    if (cfg.map_kind == "damping")
      return TransportMap::boundary_damping(DampingParams::power(
          cfg.theta0, cfg.theta_exponent, cfg.s, cfg.p));
    if (cfg.map_kind == "inversion")
      return TransportMap::inversion(cfg.s);
    if (cfg.map_kind == "mobius")
      return TransportMap::mobius(cfg.s);
    if (cfg.map_kind == "truncation")
      return TransportMap::truncation(
          cfg.s,
          truncation_half_width(cfg.truncation_rule, cfg.a_explicit, m));
    break;
  default:
    break;
  }
  throw std::invalid_argument("make_config_map: invalid configuration");
}

std::string describe_option(int option, double M, std::size_t s) {
  std::ostringstream out;
  switch (option) {
  case 1:
    out << "Option 1: boundary damping, theta_j = 0.1, p = 1";
    break;
  case 2:
    out << "Option 2: boundary damping, theta_j = 0.1/j^2, p = 1";
    break;
  case 3:
    out << "Option 3: Mobius map T_j(u) = -cot(pi u)";
    break;
  case 4:
    out << "Option 4: truncation T_j(u) = a(2u - 1), a = sqrt("
        << (M >= 0.15 ? 5 : 2) << " log n)";
    break;
  case 5:
    out << "Option 5: inversion T_j(u) = Phi^-1(u)";
    break;
  case 6:
    out << "Option 6: boundary damping, theta_j = 0.1/j^2, p = 1";
    break;
  case 7:
    out << "Option 7: boundary damping, theta_j = 0.1/j^4, p = 1";
    break;
  case 8:
    out << "Option 8: boundary damping, theta_j = 0.1/j^6, p = 1";
    break;
  default:
    throw std::invalid_argument("describe_option: preset must be 1..8");
  }
  out << " (s = " << s << ", M = " << M << ")";
  return out.str();
}

std::vector<ResultRow> run_experiment(const ExperimentConfig &cfg,
                                      const DirectionNumbers &dirs) {
  cfg.validate();
  const ProductGaussianTest f(cfg.s, cfg.M);
  std::vector<ResultRow> rows;
  rows.reserve(cfg.m_hi - cfg.m_lo + 1);
  for (unsigned m = cfg.m_lo; m <= cfg.m_hi; ++m) {
    const DigitalNet net(dirs, cfg.s, m);
    const TransportMap map = make_config_map(cfg, m);
    const RunResult run = estimate_rmse(map, f, f.exact_mu(), net,
                                        cfg.replicates, cfg.seed, cfg.threads);
    ResultRow row;
    row.option = cfg.option;
    row.s = cfg.s;
    row.M = cfg.M;
    row.m = m;
    row.n = net.size();
    row.rmse = run.rmse;
    row.mean_estimate = run.mean;
    row.replicates = cfg.replicates;
    row.seed = cfg.seed;
    row.failures = run.failures;
    rows.push_back(row);
  }
  return rows;
}

double fit_slope(std::span<const ResultRow> rows, unsigned m_lo,
                 unsigned m_hi) {
  std::vector<double> xs, ys;
  for (const auto &r : rows) {
    if (r.m < m_lo || r.m > m_hi)
      continue;
    if (!(r.rmse > 0.0))
      throw std::invalid_argument("fit_slope: rmse must be positive inside "
                                  "the window");
    xs.push_back(r.m);
    ys.push_back(std::log2(r.rmse));
  }
  if (xs.size() < 3)
    throw std::invalid_argument("fit_slope: degenerate window, need at "
                                "least 3 rows");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("fit_slope: degenerate window, all rows "
                                "share one m");
  return sxy / sxx;
}

void emit_csv(std::span<const ResultRow> rows, std::ostream &out) {
  if (rows.empty())
    throw std::invalid_argument("emit_csv: no rows");
  out << "option,s,M,m,n,rmse,mean_estimate,replicates,seed,failures\n";
  for (const auto &r : rows)
    out << format_row(r);
}

void emit_csv(std::span<const ResultRow> rows, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("emit_csv: cannot open " + path);
  emit_csv(rows, static_cast<std::ostream &>(out));
  if (!out)
    throw std::runtime_error("emit_csv: write failed for " + path);
}

std::vector<ResultRow> parse_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("results CSV: empty input");
  std::vector<ResultRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    ResultRow r;
    unsigned long long n = 0, seed = 0, fails = 0;
    if (!(ls >> r.option >> r.s >> r.M >> r.m >> n >> r.rmse >>
          r.mean_estimate >> r.replicates >> seed >> fails))
      throw std::runtime_error("results CSV: malformed line " +
                               std::to_string(lineno));
    r.n = n;
    r.seed = seed;
    r.failures = fails;
    rows.push_back(r);
  }
  return rows;
}

void emit_plot(std::span<const ResultRow> rows, const std::string &path) {
  if (rows.empty())
    throw std::invalid_argument("emit_plot: no rows");

  // group by option in first-appearance order
  std::vector<int> options;
  for (const auto &r : rows)
    if (std::find(options.begin(), options.end(), r.option) == options.end())
      options.push_back(r.option);

  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  std::size_t plotted = 0;
  for (const auto &r : rows) {
    if (!(r.rmse > 0.0))
      continue;
    ++plotted;
    x_min = std::min(x_min, static_cast<double>(r.m));
    x_max = std::max(x_max, static_cast<double>(r.m));
    y_min = std::min(y_min, std::log2(r.rmse));
    y_max = std::max(y_max, std::log2(r.rmse));
  }
  if (plotted == 0)
    throw std::invalid_argument("emit_plot: no positive rmse values");
  if (x_max == x_min)
    x_max = x_min + 1.0;

  // reference lines with slopes -1/2 and -1, anchored at the first
  // plotted point
  const ResultRow *anchor = nullptr;
  for (const auto &r : rows)
    if (r.rmse > 0.0) {
      anchor = &r;
      break;
    }
  const double ax = anchor->m;
  const double ay = std::log2(anchor->rmse);
  y_min = std::min(y_min, ay - 1.0 * (x_max - ax));
  y_max = std::max(y_max, ay - 0.5 * (x_min - ax));
  if (y_max == y_min)
    y_max = y_min + 1.0;

  constexpr double W = 640.0, H = 480.0, ML = 70.0, MR = 160.0, MT = 30.0,
                   MB = 50.0;
  auto px = [&](double m) {
    return ML + (m - x_min) / (x_max - x_min) * (W - ML - MR);
  };
  auto py = [&](double y) {
    return MT + (y_max - y) / (y_max - y_min) * (H - MT - MB);
  };
  char buf[256];
  auto fmt = [&](const char *f, auto... args) {
    std::snprintf(buf, sizeof buf, f, args...);
    return std::string(buf);
  };

  static const char *kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("emit_plot: cannot open " + path);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
         "height=\"480\" viewBox=\"0 0 640 480\">\n"
         "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  // axes
  out << fmt("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
             "stroke=\"black\"/>\n",
             ML, H - MB, W - MR, H - MB);
  out << fmt("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
             "stroke=\"black\"/>\n",
             ML, MT, ML, H - MB);
  for (unsigned m = static_cast<unsigned>(x_min);
       m <= static_cast<unsigned>(x_max); ++m) {
    out << fmt("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
               "stroke=\"black\"/>\n",
               px(m), H - MB, px(m), H - MB + 5.0);
    out << fmt("<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" "
               "text-anchor=\"middle\">2^%u</text>\n",
               px(m), H - MB + 18.0, m);
  }
  for (int y = static_cast<int>(std::ceil(y_min));
       y <= static_cast<int>(std::floor(y_max)); y += 2) {
    out << fmt("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
               "stroke=\"black\"/>\n",
               ML - 5.0, py(y), ML, py(y));
    out << fmt("<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" "
               "text-anchor=\"end\">2^%d</text>\n",
               ML - 8.0, py(y) + 4.0, y);
  }
  out << fmt("<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" "
             "text-anchor=\"middle\">n</text>\n",
             (ML + W - MR) / 2.0, H - 10.0);
  out << fmt("<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" "
             "text-anchor=\"middle\" transform=\"rotate(-90 15 %.2f)\">"
             "RMSE</text>\n",
             15.0, (MT + H - MB) / 2.0, (MT + H - MB) / 2.0);

  // reference lines
  for (double slope : {-0.5, -1.0}) {
    out << fmt("<polyline fill=\"none\" stroke=\"#888888\" "
               "stroke-dasharray=\"6,4\" points=\"%.2f,%.2f %.2f,%.2f\"/>\n",
               px(ax), py(ay), px(x_max), py(ay + slope * (x_max - ax)));
  }
  out << fmt("<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" "
             "fill=\"#888888\">n^-1/2, n^-1</text>\n",
             W - MR + 8.0, py(ay - 0.75 * (x_max - ax)));

  // one polyline per option
  std::size_t ci = 0;
  for (int opt : options) {
    const char *color = kColors[ci % 8];
    std::string pts;
    for (const auto &r : rows)
      if (r.option == opt && r.rmse > 0.0)
        pts += fmt("%.2f,%.2f ", px(r.m), py(std::log2(r.rmse)));
    if (!pts.empty())
      out << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"" << pts << "\"/>\n";
    out << fmt("<rect x=\"%.2f\" y=\"%.2f\" width=\"14\" height=\"3\" "
               "fill=\"%s\"/>\n",
               W - MR + 8.0, MT + 14.0 * ci + 6.0, color);
    out << fmt("<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\">Option "
               "%d</text>\n",
               W - MR + 26.0, MT + 14.0 * ci + 11.0, opt);
    ++ci;
  }
  out << "</svg>\n";
  if (!out)
    throw std::runtime_error("emit_plot: write failed for " + path);
}

std::string default_dirs_path(const std::string &explicit_path) {
  if (!explicit_path.empty())
    return explicit_path;
  if (const char *env = std::getenv("BDQMC_DATA_DIR"))
    return std::string(env) + "/" + kTableFile;
  return std::string(BDQMC_DEFAULT_DATA_DIR) + "/" + kTableFile;
}

} // namespace bdqmc
