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

#include "bdqmc/estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace bdqmc {

double fw_eval(const TransportMap &map, const Integrand &f,
               std::span<const double> u, bool *nonfinite) {
  const std::size_t s = map.dimension();
  if (u.size() != s || f.dimension() != s)
    throw std::invalid_argument("fw_eval: dimension mismatch");
  if (nonfinite)
    *nonfinite = false;

  double log_weight = 0.0;
  for (std::size_t j = 0; j < s; ++j) {
    const double w = map.weight(j, u[j]);
    if (w == 0.0)
      return 0.0;
    log_weight += std::log(w);
  }

  thread_local std::vector<double> x;
  x.resize(s);
  for (std::size_t j = 0; j < s; ++j) {
    // weight nonzero but the cumulative already underflowed: the true
    // contribution is below 1e-280, treated as zero-weight
    if (!map.try_map(j, u[j], x[j]))
      return 0.0;
  }

  const double fx = f.eval(x);
  if (!std::isfinite(fx)) {
    if (nonfinite)
      *nonfinite = true;
    return fx;
  }
  if (fx == 0.0)
    return 0.0;
  const double mag = std::exp(log_weight + std::log(std::fabs(fx)));
  return fx > 0.0 ? mag : -mag;
}

double estimate_once(const TransportMap &map, const Integrand &f,
                     std::span<const double> points, std::size_t *failures) {
  const std::size_t s = map.dimension();
  if (points.size() % s != 0)
    throw std::invalid_argument("estimate_once: point buffer not a multiple "
                                "of the dimension");
  const std::size_t n = points.size() / s;
  double sum = 0.0, comp = 0.0;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool nf = false;
    const double v = fw_eval(map, f, points.subspan(i * s, s), &nf);
    if (nf) {
      ++bad;
      continue;
    }
    // Kahan summation
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  if (failures)
    *failures += bad;
  return sum / static_cast<double>(n);
}

RunResult estimate_rmse(const TransportMap &map, const Integrand &f,
                        double exact_mu, const DigitalNet &net,
                        unsigned replicates, std::uint64_t seed,
                        unsigned threads) {
  if (replicates < 2)
    throw std::invalid_argument("estimate_rmse: need at least 2 replicates");
  const std::size_t s = net.dimension();
  if (map.dimension() != s)
    throw std::invalid_argument("estimate_rmse: map/net dimension mismatch");

  RunResult result;
  result.n = net.size();
  result.replicates = replicates;
  result.seed = seed;
  result.estimates.assign(replicates, 0.0);
  std::vector<std::size_t> fails(replicates, 0);

  auto run_one = [&](unsigned r) {
    ScrambleRealization scr(seed, r, s, net.resolution());
    const std::vector<double> pts = scr.scramble(net);
    result.estimates[r] = estimate_once(map, f, pts, &fails[r]);
  };

  unsigned nthreads = threads ? threads : std::thread::hardware_concurrency();
  if (nthreads <= 1 || replicates == 1) {
    for (unsigned r = 0; r < replicates; ++r)
      run_one(r);
  } else {
    // replicates are independent; each writes only its own slot, so the
    // reduction below is schedule-independent
    if (nthreads > replicates)
      nthreads = replicates;
    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    for (unsigned w = 0; w < nthreads; ++w)
      workers.emplace_back([&, w] {
        for (unsigned r = w; r < replicates; r += nthreads)
          run_one(r);
      });
    for (auto &t : workers)
      t.join();
  }

  double sum = 0.0, sq = 0.0;
  for (unsigned r = 0; r < replicates; ++r) {
    sum += result.estimates[r];
    const double e = result.estimates[r] - exact_mu;
    sq += e * e;
    result.failures += fails[r];
  }
  result.mean = sum / replicates;
  result.rmse = std::sqrt(sq / replicates);
  return result;
}

} // namespace bdqmc
