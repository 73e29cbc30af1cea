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

#ifndef BDQMC_WALSH_HPP
#define BDQMC_WALSH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace bdqmc {

/// Resolution of the k-th base-2 Walsh function: the bit length of k
/// (0 for k = 0). wal_k is constant on dyadic cells of width 2^(-r).
unsigned walsh_resolution(std::uint32_t k);

/// The k-th base-2 Walsh function at u in [0,1); values are +/-1.
int walsh(std::uint32_t k, double u);

/// Exact Walsh coefficient of w_theta via cumulative differences over
/// the 2^r dyadic cells on which wal_k is constant. Capacity limit
/// r <= 24.
double walsh_coeff_w(double theta, double p, std::uint32_t k);

/// All coefficients for k < 2^rmax at once (fast Walsh-Hadamard
/// transform of the cell masses); identical values to walsh_coeff_w.
std::vector<double> walsh_coeff_w_batch(double theta, double p, unsigned rmax);

/// sup_u |int_0^u wal_k(t) dt|, exact from the piecewise-linear
/// antiderivative evaluated at the dyadic nodes. Requires k >= 1.
double sup_walsh_integral(std::uint32_t k);

/// One audited coefficient: |coeff| against 4*min(theta, sup|I(wal_k)|).
struct WalshAuditRow {
  double theta;
  double p;
  std::uint32_t k;
  double coeff;
  double bound;
  double ratio;
};

/// Checks every (theta, k <= k_max) against the coefficient bound with
/// slack `tol`; throws std::runtime_error naming the violating pair if
/// any coefficient exceeds its bound.
std::vector<WalshAuditRow> audit_lemma_bound(std::span<const double> thetas,
                                             double p, std::uint32_t k_max,
                                             double tol = 1e-12);

/// CSV report: columns theta, p, k, coeff, bound, ratio.
void write_audit_csv(std::span<const WalshAuditRow> rows, std::ostream &out);

} // namespace bdqmc

#endif
