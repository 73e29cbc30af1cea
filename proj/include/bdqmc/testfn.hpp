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

#ifndef BDQMC_TESTFN_HPP
#define BDQMC_TESTFN_HPP

#include <cstddef>
#include <span>

namespace bdqmc {

/// Deterministic integrand on R^s.
class Integrand {
public:
  virtual ~Integrand() = default;
  virtual std::size_t dimension() const = 0;
  virtual double eval(std::span<const double> x) const = 0;
};

/// Product test family
///   f(x) = prod_j (1 + j^(-2) g(x_j)),  g(x) = exp(M x^2) sqrt(1-2M) - 1,
/// with M < 1/2. g has zero Gaussian mean, so each factor integrates to
/// one and the exact integral is 1 for every (s, M).
class ProductGaussianTest final : public Integrand {
public:
  ProductGaussianTest(std::size_t s, double M);

  std::size_t dimension() const override { return s_; }
  double eval(std::span<const double> x) const override;

  double M() const { return M_; }
  double exact_mu() const { return 1.0; }

  /// One factor's g(x), evaluated stably (expm1) so that M = 0 gives
  /// exactly zero.
  double g(double x) const;

private:
  std::size_t s_;
  double M_;
  double log_norm_; // 0.5 * log(1 - 2M)
};

} // namespace bdqmc

#endif
