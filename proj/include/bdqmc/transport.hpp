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

#ifndef BDQMC_TRANSPORT_HPP
#define BDQMC_TRANSPORT_HPP

#include <cstddef>
#include <memory>
#include <vector>

#include "bdqmc/gaussian.hpp"

namespace bdqmc {

/// Boundary-damping weight parameters: one theta per coordinate,
/// each in (0, 1/2], plus the bump exponent p >= 1.
struct DampingParams {
  std::vector<double> theta;
  double p = 1.0;

  DampingParams(std::vector<double> theta, double p);

  /// theta_j = theta0 for every coordinate.
  static DampingParams constant(double theta0, std::size_t s, double p = 1.0);
  /// theta_j = theta0 * j^(-exponent), j = 1..s.
  static DampingParams power(double theta0, double exponent, std::size_t s,
                             double p = 1.0);

  std::size_t dimension() const { return theta.size(); }
};

// The bump eta_p on [0, 1/2]:
//   eta_p(u) = 2^(-p-2) u^(-p-1) exp(2^p - u^(-p)),  eta_p(0) = 0.
// The exponent is formed before exponentiating; results that would
// underflow are returned as exact zero.
double eta(double p, double u);

// Closed form of the antiderivative:
//   int_0^u eta_p(t) dt = 2^(-p-2) (1/p) exp(2^p - u^(-p)).
double eta_integral(double p, double u);

// The one-parameter weight w_theta(u) on [0,1]. w(0) = w(1) = 0 (limit
// values); the upper half is evaluated through the reflected argument so
// w(u) == w(1-u) holds exactly in floating point.
double weight_theta(double theta, double p, double u);

// Cumulative W(u) = int_0^u w_theta(t) dt, piecewise closed form,
// continuous and strictly increasing with W(0) = 0, W(1) = 1.
double weight_theta_cumulative(double theta, double p, double u);

/// Per-coordinate monotone map T_j: (0,1) -> R together with its weight
/// w_j(u) = T_j'(u) * phi(T_j(u)). Immutable; safe to share across threads.
class TransportMap {
public:
  enum class Kind { BoundaryDamping, Inversion, Mobius, Truncation };

  static TransportMap boundary_damping(
      DampingParams params,
      std::shared_ptr<const DensityKernel> kernel = gaussian_kernel());
  static TransportMap inversion(
      std::size_t s,
      std::shared_ptr<const DensityKernel> kernel = gaussian_kernel());
  static TransportMap mobius(std::size_t s);
  static TransportMap truncation(std::size_t s, double a);

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }
  double truncation_a() const { return a_; }
  const DampingParams *damping() const {
    return params_ ? &*params_ : nullptr;
  }

  /// T_j(u) for the zero-based coordinate j. Throws std::domain_error at
  /// u in {0,1} for the unbounded variants.
  double map(std::size_t j, double u) const;

  /// Non-throwing form: returns false where the map is unbounded and the
  /// weight has already underflowed to zero (the estimator treats such
  /// samples as zero-weight).
  bool try_map(std::size_t j, double u, double &out) const;

  /// w_j(u) on [0,1]; zero at the endpoints for the damping and Mobius
  /// variants.
  double weight(std::size_t j, double u) const;

private:
  TransportMap() = default;

  Kind kind_ = Kind::Inversion;
  std::size_t dimension_ = 0;
  double a_ = 0.0;
  std::shared_ptr<const DampingParams> params_;
  std::shared_ptr<const DensityKernel> kernel_;
};

} // namespace bdqmc

#endif
