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

// End-to-end acceptance checks. Each numbered criterion prints exactly one
// PASS/FAIL line; the exit status is the number of failed criteria. The
// experiment-based criteria replicate the published convergence behavior
// at the library's default seed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bdqmc/digitalnet.hpp"
#include "bdqmc/estimator.hpp"
#include "bdqmc/harness.hpp"
#include "bdqmc/testfn.hpp"
#include "bdqmc/transport.hpp"
#include "bdqmc/walsh.hpp"
#include "oracles.hpp"

using namespace bdqmc;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string &detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!ok)
    ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

const DirectionNumbers &table() {
  static const DirectionNumbers dirs =
      DirectionNumbers::load(default_dirs_path());
  return dirs;
}

// One convergence sweep at the default seed and R = 30.
std::vector<ResultRow> sweep(int option, std::size_t s, double M,
                             unsigned m_lo, unsigned m_hi) {
  ExperimentConfig cfg;
  cfg.option = option;
  cfg.s = s;
  cfg.M = M;
  cfg.m_lo = m_lo;
  cfg.m_hi = m_hi;
  cfg.replicates = 30;
  return run_experiment(cfg, table());
}

void criterion1() {
  // M = 0, s = 5: damping and Mobius near first order; truncation behind
  std::map<int, double> slope;
  for (int option : {1, 2, 3, 4})
    slope[option] = fit_slope(sweep(option, 5, 0.0, 8, 16), 8, 16);
  bool ok = true;
  for (int option : {1, 2, 3})
    ok = ok && slope[option] >= -1.2 && slope[option] <= -0.8;
  ok = ok && slope[4] > slope[2] + 0.2;
  report(1, ok,
         "M=0 s=5 slopes over m in [8,16]: opt1 " + fmt(slope[1]) +
             ", opt2 " + fmt(slope[2]) + ", opt3 " + fmt(slope[3]) +
             " (required within [-1.2,-0.8]); opt4 " + fmt(slope[4]) +
             " > opt2 + 0.2");
}

void criterion2() {
  const double slope = fit_slope(sweep(2, 30, 0.0, 10, 16), 10, 16);
  report(2, slope <= -0.65,
         "M=0 s=30 opt2 slope over m in [10,16]: " + fmt(slope) +
             " (required <= -0.65)");
}

void criterion3() {
  std::map<int, double> slope;
  for (int option : {1, 2, 3, 5})
    slope[option] = fit_slope(sweep(option, 5, 0.3, 8, 16), 8, 16);
  bool ok = slope[5] >= -0.55 && slope[5] <= -0.25;
  for (int option : {1, 2, 3})
    ok = ok && slope[option] <= -0.8;
  report(3, ok,
         "M=0.3 s=5 slopes over m in [8,16]: opt5 " + fmt(slope[5]) +
             " (required within [-0.55,-0.25]); opt1 " + fmt(slope[1]) +
             ", opt2 " + fmt(slope[2]) + ", opt3 " + fmt(slope[3]) +
             " (required <= -0.8)");
}

void criterion4() {
  std::map<int, std::vector<ResultRow>> rows;
  for (int option : {5, 6, 7, 8})
    rows[option] = sweep(option, 128, 0.25, 10, 14);
  bool damped_beat_baseline = true;
  for (std::size_t i = 0; i < rows[5].size(); ++i)
    for (int option : {6, 7, 8})
      damped_beat_baseline =
          damped_beat_baseline && rows[option][i].rmse < rows[5][i].rmse;
  const double o6 = rows[6].back().rmse, o7 = rows[7].back().rmse,
               o8 = rows[8].back().rmse;
  const bool seven_best = o7 <= std::min(o6, o8);
  report(4, damped_beat_baseline && seven_best,
         std::string("M=0.25 s=128: options 6-8 below option 5 at every m "
                     "in [10,14]: ") +
             (damped_beat_baseline ? "yes" : "no") +
             "; option 7 best at m=14: " + (seven_best ? "yes" : "no"));
}

void criterion5() {
  bool ok = true;
  std::string detail;

  ok = ok && ProductGaussianTest(5, 0.0).exact_mu() == 1.0 &&
       ProductGaussianTest(30, 0.3).exact_mu() == 1.0 &&
       ProductGaussianTest(128, 0.25).exact_mu() == 1.0;

  // inversion at M = 0 integrates the constant function without error
  const ProductGaussianTest f0(5, 0.0);
  const DigitalNet net0(table(), 5, 10);
  const auto exact =
      estimate_rmse(TransportMap::inversion(5), f0, 1.0, net0, 30, 5);
  ok = ok && exact.rmse == 0.0;

  // unbiasedness probe at 200 replicates
  const ProductGaussianTest f(3, 0.25);
  const DigitalNet net(table(), 3, 10);
  const auto map =
      TransportMap::boundary_damping(DampingParams::constant(0.1, 3));
  const auto probe = estimate_rmse(map, f, 1.0, net, 200, 5);
  double var = 0.0;
  for (double e : probe.estimates)
    var += (e - probe.mean) * (e - probe.mean);
  var /= 199.0;
  const double se = std::sqrt(var / 200.0);
  const bool unbiased = std::fabs(probe.mean - 1.0) <= 3.0 * se;
  ok = ok && unbiased;

  report(5, ok,
         "exactness: mu = 1 for all (s, M); inversion rmse at M=0 = " +
             fmt(exact.rmse) + " (required 0); |mean - 1| = " +
             fmt(std::fabs(probe.mean - 1.0) / se) +
             " standard errors over 200 replicates (required <= 3)");
}

void criterion6() {
  bool ode_ok = true;
  std::vector<TransportMap> variants;
  variants.push_back(
      TransportMap::boundary_damping(DampingParams::constant(0.2, 1)));
  variants.push_back(TransportMap::inversion(1));
  variants.push_back(TransportMap::mobius(1));
  variants.push_back(TransportMap::truncation(1, 2.0));
  const double h = 1e-6;
  for (const auto &map : variants) {
    for (int i = 1; i <= 1000; ++i) {
      const double u = i / 1001.0;
      const double w = map.weight(0, u);
      if (w < 1e-30)
        continue;
      const double fd =
          (map.map(0, u + h) - map.map(0, u - h)) / (2.0 * h) *
          gauss_pdf(map.map(0, u));
      if (std::fabs(w - fd) / std::max(w, 1e-12) > 1e-5)
        ode_ok = false;
    }
  }

  bool norm_ok = true;
  for (double theta : {0.01, 0.1, 0.2, 0.5}) {
    for (double p : {1.0, 2.0}) {
      const double q = oracles::integrate(
          [theta, p](double t) { return weight_theta(theta, p, t); }, 0.0,
          1.0, 1e-13);
      if (std::fabs(q - 1.0) > 1e-10 ||
          weight_theta_cumulative(theta, p, 1.0) != 1.0)
        norm_ok = false;
    }
  }

  bool quantile_ok = true;
  for (int e = -12; e <= -1; ++e) {
    for (double mant : {1.0, 3.0, 7.0}) {
      const double u = mant * std::pow(10.0, e);
      if (u >= 0.5)
        continue;
      for (double v : {u, 1.0 - u})
        if (std::fabs(gauss_cdf(gauss_quantile(v)) - v) > 1e-9)
          quantile_ok = false;
    }
  }

  report(6, ode_ok && norm_ok && quantile_ok,
         std::string("transport: ODE consistency 1e-5 on 10^3 points: ") +
             (ode_ok ? "yes" : "no") +
             "; weight normalization to 1e-10: " + (norm_ok ? "yes" : "no") +
             "; quantile round-trip 1e-9: " + (quantile_ok ? "yes" : "no"));
}

void criterion7() {
  bool audit_ok = true;
  double max_ratio = 0.0;
  try {
    const std::vector<double> thetas = {0.05, 0.1, 0.2, 0.4};
    const auto rows = audit_lemma_bound(thetas, 1.0, 1u << 12);
    for (const auto &row : rows)
      max_ratio = std::max(max_ratio, row.ratio);
  } catch (const std::exception &) {
    audit_ok = false;
  }

  // factorization of the dyadic Walsh antiderivative; node prefix sums
  // make each evaluation O(1)
  auto prefix_sums = [](std::uint32_t k) {
    const std::uint32_t cells = 1u << walsh_resolution(k);
    std::vector<double> pre(cells + 1, 0.0);
    for (std::uint32_t i = 0; i < cells; ++i)
      pre[i + 1] =
          pre[i] +
          static_cast<double>(walsh(k, static_cast<double>(i) / cells)) /
              cells;
    return pre;
  };
  auto eval = [](const std::vector<double> &pre, std::uint32_t k, double u) {
    const std::uint32_t cells = 1u << walsh_resolution(k);
    const double a = std::floor(u * cells);
    const std::size_t cell = static_cast<std::size_t>(a);
    return pre[cell] + walsh(k, a / cells) * (u - a / cells);
  };
  bool factor_ok = true;
  for (std::uint32_t k = 1; k <= (1u << 10) && factor_ok; ++k) {
    const std::uint32_t N = 1u << (walsh_resolution(k) - 1);
    const std::uint32_t M = k - N;
    const auto pre_k = prefix_sums(k);
    const auto pre_n = prefix_sums(N);
    for (int i = 1; i < 1000; ++i) {
      const double u = i / 1000.0;
      if (std::fabs(eval(pre_k, k, u) - walsh(M, u) * eval(pre_n, N, u)) >
          1e-12) {
        factor_ok = false;
        break;
      }
    }
  }

  report(7, audit_ok && factor_ok,
         std::string("Walsh audit: zero bound violations for theta in "
                     "{0.05,0.1,0.2,0.4}, k <= 2^12: ") +
             (audit_ok ? "yes" : "no") + " (max ratio " + fmt(max_ratio) +
             "); factorization identity to 1e-12 for k <= 2^10: " +
             (factor_ok ? "yes" : "no"));
}

void criterion8() {
  bool net_ok = true;
  for (unsigned m = 1; m <= 10; ++m) {
    for (std::size_t s : {std::size_t{1}, std::size_t{2}}) {
      const DigitalNet net(table(), s, m);
      if (!check_net(net.points(), 0, m, s))
        net_ok = false;
    }
  }

  bool scramble_ok = true;
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    for (std::size_t s : {std::size_t{1}, std::size_t{2}, std::size_t{3}})
      for (unsigned m : {4u, 6u}) {
        const DigitalNet net(table(), s, m);
        const unsigned t0 = min_t(net.points(), m, s);
        const ScrambleRealization sr(seed, 0, s, m);
        if (!check_net(sr.scramble(net), t0, m, s))
          scramble_ok = false;
      }

  // one million scrambled coordinates, all strictly inside (0,1)
  bool interior_ok = true;
  std::size_t seen = 0;
  const DigitalNet net(table(), 8, 10);
  for (std::uint32_t rep = 0; seen < 1000000; ++rep) {
    const ScrambleRealization sr(5, rep, 8, 10);
    const auto pts = sr.scramble(net);
    for (double x : pts)
      if (!(x > 0.0 && x < 1.0))
        interior_ok = false;
    seen += pts.size();
  }

  report(8, net_ok && scramble_ok && interior_ok,
         std::string("nets: dims 1-2 pass t=0 for m <= 10: ") +
             (net_ok ? "yes" : "no") +
             "; scrambling preserves minimal t over 20 seeds: " +
             (scramble_ok ? "yes" : "no") + "; " + std::to_string(seen) +
             " scrambled coordinates strictly interior: " +
             (interior_ok ? "yes" : "no"));
}

void criterion9() {
  ExperimentConfig cfg;
  cfg.option = 2;
  cfg.s = 3;
  cfg.M = 0.25;
  cfg.m_lo = 6;
  cfg.m_hi = 10;
  cfg.replicates = 10;
  auto run_csv = [&](unsigned threads) {
    cfg.threads = threads;
    std::ostringstream out;
    emit_csv(run_experiment(cfg, table()), out);
    return out.str();
  };
  const std::string first = run_csv(1);
  const std::string second = run_csv(1);
  const std::string parallel = run_csv(4);
  const bool ok = first == second && first == parallel;
  report(9, ok,
         std::string("reproducibility: repeated run CSV byte-identical: ") +
             (first == second ? "yes" : "no") +
             "; independent of thread count: " +
             (first == parallel ? "yes" : "no"));
}

} // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures == 0)
    std::printf("all 9 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures;
}
