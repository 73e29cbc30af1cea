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

#include "bdqmc/testfn.hpp"

#include <cmath>
#include <stdexcept>

namespace bdqmc {

ProductGaussianTest::ProductGaussianTest(std::size_t s, double M)
    : s_(s), M_(M) {
  if (s == 0)
    throw std::invalid_argument("ProductGaussianTest: dimension must be >= 1");
  if (!(M < 0.5))
    throw std::invalid_argument(
        "ProductGaussianTest: M must be < 0.5 for integrability");
  // g is normalized so that its Gaussian mean is exactly zero:
  // E[exp(M x^2)] = (1-2M)^(-1/2), hence g = exp(M x^2) sqrt(1-2M) - 1.
  log_norm_ = 0.5 * std::log1p(-2.0 * M_);
}

double ProductGaussianTest::g(double x) const {
  return std::expm1(M_ * x * x + log_norm_);
}

double ProductGaussianTest::eval(std::span<const double> x) const {
  if (x.size() != s_)
    throw std::invalid_argument("ProductGaussianTest: dimension mismatch");
  double prod = 1.0;
  for (std::size_t j = 0; j < s_; ++j) {
    const double cj = 1.0 / (static_cast<double>(j + 1) * (j + 1));
    prod *= 1.0 + cj * g(x[j]);
  }
  return prod;
}

} // namespace bdqmc
