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

#include "bdqmc/walsh.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "bdqmc/transport.hpp"

namespace bdqmc {

namespace {

constexpr unsigned kMaxResolution = 24;

std::uint32_t reverse_bits(std::uint32_t a, unsigned r) {
  std::uint32_t out = 0;
  for (unsigned i = 0; i < r; ++i)
    out |= ((a >> i) & 1u) << (r - 1 - i);
  return out;
}

void check_resolution(std::uint32_t k) {
  if (walsh_resolution(k) > kMaxResolution)
    throw std::length_error("walsh: index k exceeds the 2^24 capacity");
}

} // namespace

unsigned walsh_resolution(std::uint32_t k) {
  return static_cast<unsigned>(std::bit_width(k));
}

int walsh(std::uint32_t k, double u) {
  if (!(u >= 0.0 && u < 1.0))
    throw std::domain_error("walsh: u must lie in [0,1)");
  if (k == 0)
    return 1;
  const unsigned r = walsh_resolution(k);
  const auto a =
      static_cast<std::uint32_t>(std::ldexp(u, static_cast<int>(r)));
  // digit v_i of u is bit (r-i) of a; kappa_i is bit (i-1) of k
  const unsigned parity = std::popcount(k & reverse_bits(a, r)) & 1u;
  return parity ? -1 : 1;
}

double walsh_coeff_w(double theta, double p, std::uint32_t k) {
  check_resolution(k);
  if (k == 0)
    return 1.0; // total mass of w_theta
  const unsigned r = walsh_resolution(k);
  const std::uint32_t cells = std::uint32_t{1} << r;
  const double width = std::ldexp(1.0, -static_cast<int>(r));
  double sum = 0.0, comp = 0.0;
  double w_lo = 0.0;
  for (std::uint32_t a = 0; a < cells; ++a) {
    const double w_hi = weight_theta_cumulative(theta, p, (a + 1) * width);
    const double term = walsh(k, a * width) * (w_hi - w_lo);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    w_lo = w_hi;
  }
  return sum;
}

std::vector<double> walsh_coeff_w_batch(double theta, double p,
                                        unsigned rmax) {
  if (rmax > kMaxResolution)
    throw std::length_error("walsh: resolution exceeds the 2^24 capacity");
  const std::size_t cells = std::size_t{1} << rmax;
  const double width = std::ldexp(1.0, -static_cast<int>(rmax));
  std::vector<double> arr(cells, 0.0);
  double w_lo = 0.0;
  for (std::size_t a = 0; a < cells; ++a) {
    const double w_hi = weight_theta_cumulative(theta, p, (a + 1) * width);
    arr[reverse_bits(static_cast<std::uint32_t>(a), rmax)] = w_hi - w_lo;
    w_lo = w_hi;
  }
  // in-place Walsh-Hadamard transform: H[k] = sum_x (-1)^popcount(k&x) arr[x]
  for (std::size_t len = 1; len < cells; len <<= 1)
    for (std::size_t i = 0; i < cells; i += 2 * len)
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = arr[j];
        const double b = arr[j + len];
        arr[j] = a + b;
        arr[j + len] = a - b;
      }
  return arr;
}

double sup_walsh_integral(std::uint32_t k) {
  if (k == 0)
    throw std::domain_error("sup_walsh_integral: k must be >= 1");
  check_resolution(k);
  const unsigned r = walsh_resolution(k);
  const std::uint32_t cells = std::uint32_t{1} << r;
  const double width = std::ldexp(1.0, -static_cast<int>(r));
  // antiderivative is piecewise linear with slope +/-1, so its extrema
  // over each cell sit at the dyadic nodes
  double integral = 0.0, best = 0.0;
  for (std::uint32_t a = 0; a < cells; ++a) {
    integral += walsh(k, a * width) * width;
    best = std::max(best, std::fabs(integral));
  }
  return best;
}

std::vector<WalshAuditRow> audit_lemma_bound(std::span<const double> thetas,
                                             double p, std::uint32_t k_max,
                                             double tol) {
  std::vector<WalshAuditRow> report;
  if (thetas.empty() || k_max == 0)
    return report;
  check_resolution(k_max);
  const unsigned rmax = walsh_resolution(k_max);

  std::vector<double> sup_integral(k_max + 1, 0.0);
  for (std::uint32_t k = 1; k <= k_max; ++k)
    sup_integral[k] = sup_walsh_integral(k);

  report.reserve(thetas.size() * k_max);
  for (double theta : thetas) {
    const std::vector<double> coeffs = walsh_coeff_w_batch(theta, p, rmax);
    for (std::uint32_t k = 1; k <= k_max; ++k) {
      WalshAuditRow row;
      row.theta = theta;
      row.p = p;
      row.k = k;
      row.coeff = coeffs[k];
      row.bound = 4.0 * std::min(theta, sup_integral[k]);
      row.ratio = std::fabs(row.coeff) / row.bound;
      if (std::fabs(row.coeff) > row.bound + tol)
        throw std::runtime_error(
            "walsh audit: coefficient bound violated at theta=" +
            std::to_string(theta) + ", k=" + std::to_string(k));
      report.push_back(row);
    }
  }
  return report;
}

void write_audit_csv(std::span<const WalshAuditRow> rows, std::ostream &out) {
  out << "theta,p,k,coeff,bound,ratio\n";
  char buf[160];
  for (const auto &r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%u,%.17g,%.17g,%.17g\n",
                  r.theta, r.p, r.k, r.coeff, r.bound, r.ratio);
    out << buf;
  }
}

} // namespace bdqmc
