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

// Command-line driver for the bdqmc shared library.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bdqmc.h"

namespace {

// 0 = success, 2 = validation error, 1 = runtime error
[[noreturn]] void die(int rc) {
  std::fprintf(stderr, "error: %s\n", bdqmc_last_error());
  std::exit(rc == BDQMC_ERR_INVALID ? 2 : 1);
}

void check(int rc) {
  if (rc != BDQMC_OK)
    die(rc);
}

struct RunArgs {
  int option = -1;
  std::string map_kind;
  long long s = -1;
  double M = std::nan("");
  int m_lo = -1, m_hi = -1;
  long long replicates = -1;
  long long seed = -1;
  double theta0 = -1.0, theta_exp = -1.0, p = -1.0;
  std::string a_rule;
  double a_explicit = 0.0;
  std::string dirs_path;
  std::string out_dir;
  std::string config_path;
  long long threads = -1;
};

bdqmc_config *build_config(const RunArgs &args) {
  bdqmc_config *cfg = nullptr;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) {
      std::fprintf(stderr, "error: cannot open config file %s\n",
                   args.config_path.c_str());
      std::exit(1);
    }
    std::ostringstream text;
    text << in.rdbuf();
    check(bdqmc_config_from_json(text.str().c_str(), &cfg));
  } else {
    check(bdqmc_config_create(&cfg));
  }
  // flags override config-file values
  if (args.option >= 0)
    check(bdqmc_config_set_int(cfg, "option", args.option));
  if (!args.map_kind.empty())
    check(bdqmc_config_set_string(cfg, "map_kind", args.map_kind.c_str()));
  if (args.s >= 0)
    check(bdqmc_config_set_int(cfg, "s", args.s));
  if (!std::isnan(args.M))
    check(bdqmc_config_set_real(cfg, "M", args.M));
  if (args.m_lo >= 0)
    check(bdqmc_config_set_int(cfg, "m_lo", args.m_lo));
  if (args.m_hi >= 0)
    check(bdqmc_config_set_int(cfg, "m_hi", args.m_hi));
  if (args.replicates >= 0)
    check(bdqmc_config_set_int(cfg, "replicates", args.replicates));
  if (args.seed >= 0)
    check(bdqmc_config_set_int(cfg, "seed", args.seed));
  if (args.theta0 >= 0.0)
    check(bdqmc_config_set_real(cfg, "theta0", args.theta0));
  if (args.theta_exp >= 0.0)
    check(bdqmc_config_set_real(cfg, "theta_exponent", args.theta_exp));
  if (args.p >= 0.0)
    check(bdqmc_config_set_real(cfg, "p", args.p));
  if (!args.a_rule.empty())
    check(bdqmc_config_set_string(cfg, "truncation_rule",
                                  args.a_rule.c_str()));
  if (args.a_explicit > 0.0)
    check(bdqmc_config_set_real(cfg, "a_explicit", args.a_explicit));
  if (args.threads >= 0)
    check(bdqmc_config_set_int(cfg, "threads", args.threads));
  return cfg;
}

bdqmc_dirs *load_dirs(const std::string &path) {
  bdqmc_dirs *dirs = nullptr;
  if (path.empty())
    check(bdqmc_dirs_default(&dirs));
  else
    check(bdqmc_dirs_load(path.c_str(), &dirs));
  return dirs;
}

void print_rows(const bdqmc_results *res) {
  std::printf("%-8s %-4s %-6s %-3s %-8s %-13s %-13s %s\n", "option", "s",
              "M", "m", "n", "rmse", "mean", "failures");
  for (size_t i = 0; i < bdqmc_results_count(res); ++i) {
    bdqmc_result_row row;
    check(bdqmc_results_row(res, i, &row));
    std::printf("%-8d %-4zu %-6g %-3u %-8llu %-13.6e %-13.10f %llu\n",
                row.option, row.s, row.M, row.m, row.n, row.rmse,
                row.mean_estimate, row.failures);
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Boundary-damped quasi-Monte Carlo integration toolkit"};
  app.require_subcommand(1);

  // run
  RunArgs run;
  auto *cmd_run = app.add_subcommand(
      "run", "Run a convergence experiment over m in [m-lo, m-hi]");
  cmd_run->add_option("--option", run.option,
                      "Preset 1-8, or 0 with --map for an explicit map");
  cmd_run->add_option("--map", run.map_kind,
                      "Explicit map: damping|inversion|mobius|truncation");
  cmd_run->add_option("--s", run.s, "Dimension");
  cmd_run->add_option("--M", run.M, "Test-function growth parameter M < 0.5");
  cmd_run->add_option("--m-lo", run.m_lo, "Smallest resolution m");
  cmd_run->add_option("--m-hi", run.m_hi, "Largest resolution m");
  cmd_run->add_option("--replicates", run.replicates,
                      "Scramble replicates per m (default 30)");
  cmd_run->add_option("--seed", run.seed, "RNG seed");
  cmd_run->add_option("--theta0", run.theta0, "Damping theta_0");
  cmd_run->add_option("--theta-exp", run.theta_exp,
                      "Damping schedule theta_j = theta0 * j^-exp");
  cmd_run->add_option("--p", run.p, "Bump exponent p >= 1");
  cmd_run->add_option("--a-rule", run.a_rule,
                      "Truncation rule: sqrt2logn|sqrt5logn|explicit");
  cmd_run->add_option("--a", run.a_explicit,
                      "Truncation half-width for --a-rule explicit");
  cmd_run->add_option("--dirs", run.dirs_path, "Direction-number file");
  cmd_run->add_option("--out", run.out_dir,
                      "Output directory for results.csv and results.svg");
  cmd_run->add_option("--config", run.config_path,
                      "JSON config file (flags override its fields)");
  cmd_run->add_option("--threads", run.threads,
                      "Worker threads (0 = hardware default)");

  // audit-walsh
  std::string audit_thetas = "0.05,0.1,0.2,0.4";
  double audit_p = 1.0;
  std::uint32_t audit_kmax = 1u << 12;
  std::string audit_out;
  auto *cmd_audit = app.add_subcommand(
      "audit-walsh",
      "Audit the Walsh-coefficient decay bound of the damping weight");
  cmd_audit->add_option("--theta-list", audit_thetas,
                        "Comma-separated theta values");
  cmd_audit->add_option("--p", audit_p, "Bump exponent p >= 1");
  cmd_audit->add_option("--k-max", audit_kmax, "Largest Walsh index");
  cmd_audit->add_option("--out", audit_out, "CSV report path");

  // check-net
  long long net_s = 2;
  int net_m = 8, net_t = 0;
  std::string net_dirs;
  auto *cmd_net = app.add_subcommand(
      "check-net", "Verify the (t,m,s)-net property of the Sobol' net");
  cmd_net->add_option("--s", net_s, "Dimension");
  cmd_net->add_option("--m", net_m, "Resolution (n = 2^m)");
  cmd_net->add_option("--t", net_t, "Quality parameter t");
  cmd_net->add_option("--dirs", net_dirs, "Direction-number file");

  // slope
  std::string slope_csv;
  int slope_lo = 0, slope_hi = 64;
  auto *cmd_slope = app.add_subcommand(
      "slope", "OLS slope of log2(rmse) vs m from a results CSV");
  cmd_slope->add_option("--csv", slope_csv, "Results CSV path")->required();
  cmd_slope->add_option("--m-lo", slope_lo, "Window lower bound");
  cmd_slope->add_option("--m-hi", slope_hi, "Window upper bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (cmd_run->parsed()) {
    bdqmc_config *cfg = build_config(run);
    bdqmc_dirs *dirs = load_dirs(run.dirs_path);
    bdqmc_results *res = nullptr;
    check(bdqmc_run_experiment(cfg, dirs, &res));
    print_rows(res);
    if (!run.out_dir.empty()) {
      std::filesystem::create_directories(run.out_dir);
      const std::string csv = run.out_dir + "/results.csv";
      const std::string svg = run.out_dir + "/results.svg";
      check(bdqmc_results_write_csv(res, csv.c_str()));
      check(bdqmc_results_write_svg(res, svg.c_str()));
      std::printf("wrote %s and %s\n", csv.c_str(), svg.c_str());
    }
    bdqmc_results_free(res);
    bdqmc_dirs_free(dirs);
    bdqmc_config_free(cfg);
    return 0;
  }

  if (cmd_audit->parsed()) {
    std::vector<double> thetas;
    std::stringstream ss(audit_thetas);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty())
        thetas.push_back(std::stod(item));
    double max_ratio = 0.0;
    check(bdqmc_walsh_audit(thetas.data(), thetas.size(), audit_p,
                            audit_kmax,
                            audit_out.empty() ? nullptr : audit_out.c_str(),
                            &max_ratio));
    std::printf("audited %zu theta values, k <= %u: all within bound, max "
                "|coeff|/bound = %.6f\n",
                thetas.size(), audit_kmax, max_ratio);
    if (!audit_out.empty())
      std::printf("wrote %s\n", audit_out.c_str());
    return 0;
  }

  if (cmd_net->parsed()) {
    bdqmc_dirs *dirs = load_dirs(net_dirs);
    const size_t n = size_t{1} << net_m;
    std::vector<double> pts(n * static_cast<size_t>(net_s));
    check(bdqmc_sobol_points(dirs, net_s, net_m, pts.data()));
    int ok = 0;
    check(bdqmc_check_net(pts.data(), net_s, net_m, net_t, &ok));
    std::printf("Sobol' net s=%lld m=%d: (t=%d) property %s\n", net_s, net_m,
                net_t, ok ? "holds" : "does not hold");
    bdqmc_dirs_free(dirs);
    return ok ? 0 : 1;
  }

  if (cmd_slope->parsed()) {
    bdqmc_results *res = nullptr;
    check(bdqmc_results_load_csv(slope_csv.c_str(), &res));
    double slope = 0.0;
    check(bdqmc_fit_slope(res, slope_lo, slope_hi, &slope));
    std::printf("%.6f\n", slope);
    bdqmc_results_free(res);
    return 0;
  }

  return 0;
}
