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

#include "bdqmc/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace bdqmc {

namespace {

constexpr double kPi = 3.14159265358979323846264338;
constexpr double kLog2Pi = 1.8378770664093454835606594;
// exp(x) underflows to zero below this exponent.
constexpr double kExpUnderflow = -745.0;

void check_eta_domain(double p, double u) {
  if (!(p >= 1.0))
    throw std::domain_error("eta: p must satisfy p >= 1");
  if (!(u >= 0.0 && u <= 0.5))
    throw std::domain_error("eta: u must lie in [0, 1/2]");
}

void check_theta(double theta) {
  if (!(theta > 0.0 && theta <= 0.5))
    throw std::invalid_argument("theta must lie in (0, 1/2], got " +
                                std::to_string(theta));
}

} // namespace

double eta(double p, double u) {
  check_eta_domain(p, u);
  if (u == 0.0)
    return 0.0;
  const double upow = std::pow(u, -p);
  const double expo = std::exp2(p) - upow;
  if (expo <= kExpUnderflow)
    return 0.0;
  return std::exp2(-p - 2.0) * (upow / u) * std::exp(expo);
}

double eta_integral(double p, double u) {
  check_eta_domain(p, u);
  if (u == 0.0)
    return 0.0;
  const double expo = std::exp2(p) - std::pow(u, -p);
  if (expo <= kExpUnderflow)
    return 0.0;
  return std::exp(expo) / (p * std::exp2(p + 2.0));
}

double weight_theta(double theta, double p, double u) {
  check_theta(theta);
  if (!(u >= 0.0 && u <= 1.0))
    throw std::domain_error("weight_theta: u must lie in [0,1]");
  if (u > 0.5)
    u = 1.0 - u; // exact reflection through the same branches
  const double scale = 1.0 / (1.0 - theta);
  if (u == 0.0)
    return 0.0;
  if (u <= 0.5 * theta)
    return scale * eta(p, u / theta);
  if (u < theta)
    return scale * (1.0 - eta(p, 1.0 - u / theta));
  return scale;
}

double weight_theta_cumulative(double theta, double p, double u) {
  check_theta(theta);
  if (!(u >= 0.0 && u <= 1.0))
    throw std::domain_error("weight_theta_cumulative: u must lie in [0,1]");
  if (u > 0.5)
    return 1.0 - weight_theta_cumulative(theta, p, 1.0 - u);
  const double scale = 1.0 / (1.0 - theta);
  if (u == 0.0)
    return 0.0;
  if (u <= 0.5 * theta)
    return scale * theta * eta_integral(p, u / theta);
  if (u < theta)
    return scale * ((u - 0.5 * theta) + theta * eta_integral(p, 1.0 - u / theta));
  return scale * (u - 0.5 * theta);
}

DampingParams::DampingParams(std::vector<double> theta_in, double p_in)
    : theta(std::move(theta_in)), p(p_in) {
  if (theta.empty())
    throw std::invalid_argument("DampingParams: theta vector is empty");
  if (!(p >= 1.0))
    throw std::invalid_argument("DampingParams: p must satisfy p >= 1");
  for (double t : theta)
    check_theta(t);
}

DampingParams DampingParams::constant(double theta0, std::size_t s, double p) {
  return DampingParams(std::vector<double>(s, theta0), p);
}

DampingParams DampingParams::power(double theta0, double exponent,
                                   std::size_t s, double p) {
  std::vector<double> theta(s);
  for (std::size_t j = 0; j < s; ++j)
    theta[j] = theta0 * std::pow(static_cast<double>(j + 1), -exponent);
  return DampingParams(std::move(theta), p);
}

TransportMap TransportMap::boundary_damping(
    DampingParams params, std::shared_ptr<const DensityKernel> kernel) {
  TransportMap t;
  t.kind_ = Kind::BoundaryDamping;
  t.dimension_ = params.dimension();
  t.params_ = std::make_shared<const DampingParams>(std::move(params));
  t.kernel_ = std::move(kernel);
  return t;
}

TransportMap
TransportMap::inversion(std::size_t s,
                        std::shared_ptr<const DensityKernel> kernel) {
  TransportMap t;
  t.kind_ = Kind::Inversion;
  t.dimension_ = s;
  t.kernel_ = std::move(kernel);
  return t;
}

TransportMap TransportMap::mobius(std::size_t s) {
  TransportMap t;
  t.kind_ = Kind::Mobius;
  t.dimension_ = s;
  t.kernel_ = gaussian_kernel();
  return t;
}

TransportMap TransportMap::truncation(std::size_t s, double a) {
  if (!(a > 0.0))
    throw std::invalid_argument("truncation: a must be positive");
  TransportMap t;
  t.kind_ = Kind::Truncation;
  t.dimension_ = s;
  t.a_ = a;
  t.kernel_ = gaussian_kernel();
  return t;
}

bool TransportMap::try_map(std::size_t j, double u, double &out) const {
  if (j >= dimension_)
    throw std::out_of_range("TransportMap: coordinate index out of range");
  switch (kind_) {
  case Kind::BoundaryDamping: {
    if (u <= 0.0 || u >= 1.0)
      return false;
    // Evaluate the shorter tail directly: forming W(u) = 1 - W(1 - u)
    // near u = 1 would round to 1 and destroy the quantile's precision,
    // so use the kernel's symmetry instead (1 - u is exact for u >= 1/2).
    const double lower = std::min(u, 1.0 - u);
    const double W =
        weight_theta_cumulative(params_->theta[j], params_->p, lower);
    if (W <= 0.0 || W >= 1.0)
      return false;
    const double q = kernel_->quantile(W);
    out = u <= 0.5 ? q : -q;
    return true;
  }
  case Kind::Inversion:
    if (u <= 0.0 || u >= 1.0)
      return false;
    out = kernel_->quantile(u);
    return true;
  case Kind::Mobius: {
    if (u <= 0.0 || u >= 1.0)
      return false;
    out = -std::cos(kPi * u) / std::sin(kPi * u);
    return true;
  }
  case Kind::Truncation:
    out = a_ * (2.0 * u - 1.0);
    return true;
  }
  return false;
}

double TransportMap::map(std::size_t j, double u) const {
  double out;
  if (!try_map(j, u, out))
    throw std::domain_error("TransportMap: map undefined at the boundary");
  return out;
}

double TransportMap::weight(std::size_t j, double u) const {
  if (j >= dimension_)
    throw std::out_of_range("TransportMap: coordinate index out of range");
  switch (kind_) {
  case Kind::BoundaryDamping:
    return weight_theta(params_->theta[j], params_->p, u);
  case Kind::Inversion:
    return 1.0;
  case Kind::Mobius: {
    const double s = std::sin(kPi * u);
    if (s == 0.0)
      return 0.0;
    const double t = -std::cos(kPi * u) / s;
    // pi * csc^2(pi u) * phi(t), in log space: csc^2 blows up while the
    // Gaussian factor decays superexponentially.
    const double logw = std::log(kPi) - 2.0 * std::log(std::fabs(s)) -
                        0.5 * t * t - 0.5 * kLog2Pi;
    if (logw <= kExpUnderflow)
      return 0.0;
    return std::exp(logw);
  }
  case Kind::Truncation:
    return 2.0 * a_ * kernel_->density(a_ * (2.0 * u - 1.0));
  }
  return 0.0;
}

} // namespace bdqmc
