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

#ifndef BDQMC_ESTIMATOR_HPP
#define BDQMC_ESTIMATOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "bdqmc/digitalnet.hpp"
#include "bdqmc/testfn.hpp"
#include "bdqmc/transport.hpp"

namespace bdqmc {

/// Replicated-estimate summary for one (map, integrand, m) cell.
struct RunResult {
  std::vector<double> estimates; // per-replicate mu-hat
  double mean = 0.0;
  double rmse = 0.0; // against the supplied exact integral
  std::size_t n = 0;
  unsigned replicates = 0;
  std::uint64_t seed = 0;
  std::size_t failures = 0; // non-finite samples encountered
};

/// Transformed integrand f^w(u) = prod_j w_j(u_j) * f(T(u)). The weight
/// product is accumulated in log space; a factor that is exactly zero
/// short-circuits to 0 before f or T are evaluated.
double fw_eval(const TransportMap &map, const Integrand &f,
               std::span<const double> u, bool *nonfinite = nullptr);

/// Mean of fw_eval over a point set (compensated summation).
double estimate_once(const TransportMap &map, const Integrand &f,
                     std::span<const double> points,
                     std::size_t *failures = nullptr);

/// R independently scrambled replicates of the same net; deterministic
/// given (seed, replicate indices 0..R-1). threads = 0 picks the
/// hardware default; results are reduced in replicate order either way.
RunResult estimate_rmse(const TransportMap &map, const Integrand &f,
                        double exact_mu, const DigitalNet &net,
                        unsigned replicates, std::uint64_t seed,
                        unsigned threads = 0);

} // namespace bdqmc

#endif
