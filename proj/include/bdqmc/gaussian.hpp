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

#ifndef BDQMC_GAUSSIAN_HPP
#define BDQMC_GAUSSIAN_HPP

#include <memory>

namespace bdqmc {

/// One-dimensional reference density with its CDF and quantile.
/// Implementations must be strictly positive, bounded and symmetric
/// about zero. Only the standard Gaussian ships; the interface exists
/// so that user densities can be plugged into the transport maps.
class DensityKernel {
public:
  virtual ~DensityKernel() = default;
  virtual double density(double x) const = 0;
  virtual double cdf(double x) const = 0;
  // quantile(u) is only defined for u in (0,1); throws std::domain_error
  // otherwise.
  virtual double quantile(double u) const = 0;
};

/// Standard Gaussian phi(x) = exp(-x^2/2)/sqrt(2*pi).
class GaussianKernel final : public DensityKernel {
public:
  double density(double x) const override;
  double cdf(double x) const override;
  double quantile(double u) const override;
};

/// Shared immutable instance used as the default kernel everywhere.
std::shared_ptr<const DensityKernel> gaussian_kernel();

// Free-function forms of the Gaussian kernel.
double gauss_pdf(double x);
double gauss_cdf(double x);
// Rational-approximation initializer refined by one Halley step.
// Absolute error <= ~1e-12 in the central region, <= 1e-9 in the tails.
double gauss_quantile(double u);

} // namespace bdqmc

#endif
