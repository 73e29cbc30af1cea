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

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "bdqmc/gaussian.hpp"
#include "bdqmc/transport.hpp"
#include "oracles.hpp"

using namespace bdqmc;

TEST_CASE("gaussian kernel basics") {
  const GaussianKernel k;
  CHECK(k.density(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI))
                              .epsilon(1e-15));
  for (double x : {0.1, 0.7, 1.5, 3.0, 6.5}) {
    CHECK(k.density(x) == k.density(-x));
    CHECK(k.density(x) == doctest::Approx(oracles::phi_ref(x)).epsilon(1e-14));
    CHECK(k.cdf(x) == doctest::Approx(oracles::Phi_ref(x)).epsilon(1e-14));
    CHECK(k.cdf(x) > k.cdf(x - 1e-3)); // strictly increasing
  }
  CHECK(k.quantile(0.5) == 0.0);
  CHECK_THROWS_AS(k.quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(k.quantile(1.0), std::domain_error);
}

TEST_CASE("gaussian quantile round-trip on a log-spaced grid") {
  // u from 1e-12 up to 1/2 and the mirrored upper tail
  for (int e = -12; e <= -1; ++e) {
    for (double mant : {1.0, 2.5, 5.0, 7.5}) {
      const double u = mant * std::pow(10.0, e);
      if (u >= 0.5)
        continue;
      for (double v : {u, 1.0 - u}) {
        const double x = gauss_quantile(v);
        CHECK(std::fabs(gauss_cdf(x) - v) <= 1e-9);
      }
    }
  }
}

TEST_CASE("eta examples and domain") {
  CHECK(eta(1.0, 0.0) == 0.0);
  CHECK(eta(1.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eta(2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eta(1.0, 0.25) ==
        doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(eta(1.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(eta(1.0, 0.6), std::domain_error);
  CHECK_THROWS_AS(eta(0.5, 0.25), std::domain_error);
}

TEST_CASE("eta is monotone, finite, and underflows to exact zero") {
  for (double p : {1.0, 2.0}) {
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
      const double u = 0.5 * i / 1000.0;
      const double v = eta(p, u);
      CHECK(std::isfinite(v));
      CHECK(v >= prev);
      prev = v;
    }
    // deep underflow region: exponent 2^p - u^-p is far below -745
    CHECK(eta(p, 1e-3) == 0.0);
    CHECK(eta(p, 2.2250738585072014e-308) == 0.0); // smallest positive normal
  }
}

TEST_CASE("eta_integral matches the closed form and quadrature") {
  CHECK(eta_integral(1.0, 0.0) == 0.0);
  CHECK(eta_integral(1.0, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(eta_integral(2.0, 0.5) ==
        doctest::Approx(1.0 / 32.0).epsilon(1e-15));
  for (double p : {1.0, 2.0}) {
    for (double u : {0.05, 0.1, 0.2, 0.35, 0.5}) {
      const double q = oracles::integrate(
          [p](double t) { return eta(p, t); }, 0.0, u, 1e-14);
      CHECK(std::fabs(eta_integral(p, u) - q) <= 1e-12);
    }
  }
}

TEST_CASE("eta integral lower bound") {
  for (double p : {1.0, 2.0, 3.0}) {
    for (int i = 1; i <= 200; ++i) {
      const double u = 0.5 * i / 200.0;
      CHECK(eta_integral(p, u) >=
            std::pow(u, p + 1.0) * eta(p, u) / p - 1e-15);
    }
  }
}

TEST_CASE("weight_theta examples") {
  CHECK(weight_theta(0.2, 1.0, 0.5) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(weight_theta(0.2, 1.0, 0.1) == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(weight_theta(0.2, 1.0, 0.9) == weight_theta(0.2, 1.0, 0.1));
  CHECK(weight_theta(0.2, 1.0, 0.0) == 0.0);
  CHECK(weight_theta(0.2, 1.0, 1.0) == 0.0);
}

TEST_CASE("weight_theta symmetry is exact in floating point") {
  for (double theta : {0.01, 0.1, 0.2, 0.5}) {
    for (double p : {1.0, 2.0}) {
      for (int i = 0; i <= 4096; ++i) {
        const double u = i / 4096.0;
        CHECK(weight_theta(theta, p, u) == weight_theta(theta, p, 1.0 - u));
      }
      // non-dyadic points reflect up to the rounding of 1 - u
      for (double u : {0.1234567, 0.0321, 0.499999, 0.987654321}) {
        CHECK(weight_theta(theta, p, u) ==
              doctest::Approx(weight_theta(theta, p, 1.0 - u))
                  .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("weight_theta plateau bound") {
  for (double theta : {0.01, 0.1, 0.2, 0.5}) {
    const double cap = 1.0 / (1.0 - theta) + 1e-14;
    for (int i = 0; i <= 10000; ++i) {
      const double u = i / 10000.0;
      CHECK(weight_theta(theta, 1.0, u) <= cap);
    }
  }
}

TEST_CASE("weight_theta_cumulative examples") {
  CHECK(weight_theta_cumulative(0.2, 1.0, 0.5) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(weight_theta_cumulative(0.2, 1.0, 0.2) ==
        doctest::Approx(0.125).epsilon(1e-15));
  CHECK(weight_theta_cumulative(0.2, 1.0, 0.0) == 0.0);
  CHECK(weight_theta_cumulative(0.2, 1.0, 1.0) == 1.0);
}

TEST_CASE("cumulative matches quadrature of the weight") {
  for (double theta : {0.01, 0.1, 0.2, 0.5}) {
    for (double p : {1.0, 2.0}) {
      for (double u : {0.001, theta / 2, 0.7 * theta, theta, 0.3, 0.5, 0.77,
                       0.999}) {
        const double q = oracles::integrate(
            [theta, p](double t) { return weight_theta(theta, p, t); }, 0.0,
            u, 1e-13);
        CHECK(weight_theta_cumulative(theta, p, u) ==
              doctest::Approx(q).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("weight normalization over [0,1]") {
  for (double theta : {0.01, 0.1, 0.2, 0.5}) {
    for (double p : {1.0, 2.0}) {
      CHECK(weight_theta_cumulative(theta, p, 1.0) == 1.0);
      const double q = oracles::integrate(
          [theta, p](double t) { return weight_theta(theta, p, t); }, 0.0,
          1.0, 1e-13);
      CHECK(std::fabs(q - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("cumulative symmetry and monotonicity") {
  for (double theta : {0.05, 0.2, 0.5}) {
    double prev = -1.0;
    for (int i = 0; i <= 2048; ++i) {
      const double u = i / 2048.0;
      const double W = weight_theta_cumulative(theta, 1.0, u);
      CHECK(std::fabs(W + weight_theta_cumulative(theta, 1.0, 1.0 - u) -
                      1.0) <= 1e-14);
      if (i > 0)
        CHECK(W >= prev);
      // strictly increasing away from the flat tails, where W underflows
      // to 0 or saturates at 1
      if (i > 0 && u > 1e-3 && prev > 0.0 && W < 1.0)
        CHECK(W > prev);
      prev = W;
    }
  }
}

TEST_CASE("DampingParams validation and schedules") {
  CHECK_THROWS_AS(DampingParams({0.6}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DampingParams({0.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DampingParams({0.1}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(DampingParams({}, 1.0), std::invalid_argument);

  const auto c = DampingParams::constant(0.1, 4);
  REQUIRE(c.dimension() == 4);
  for (double t : c.theta)
    CHECK(t == 0.1);

  const auto pw = DampingParams::power(0.1, 2.0, 3);
  CHECK(pw.theta[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(pw.theta[1] == doctest::Approx(0.025).epsilon(1e-15));
  CHECK(pw.theta[2] == doctest::Approx(0.1 / 9.0).epsilon(1e-15));
}

TEST_CASE("transport map values") {
  const auto damping =
      TransportMap::boundary_damping(DampingParams::constant(0.2, 1));
  CHECK(damping.map(0, 0.5) == 0.0);
  const auto mobius = TransportMap::mobius(1);
  CHECK(mobius.map(0, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
  const auto trunc = TransportMap::truncation(1, 2.0);
  CHECK(trunc.map(0, 0.75) == doctest::Approx(1.0).epsilon(1e-15));
  const auto inv = TransportMap::inversion(1);
  CHECK(inv.map(0, 0.5) == 0.0);
}

TEST_CASE("transport weights") {
  const auto inv = TransportMap::inversion(1);
  CHECK(inv.weight(0, 0.123) == 1.0);
  const auto trunc = TransportMap::truncation(1, 2.0);
  CHECK(trunc.weight(0, 0.5) ==
        doctest::Approx(4.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-15));
  const auto mobius = TransportMap::mobius(1);
  CHECK(mobius.weight(0, 0.0) == 0.0);
  CHECK(mobius.weight(0, 1.0) == 0.0);
  CHECK(mobius.weight(0, 1e-12) <= 1e-300); // superexponential decay
  const auto damping =
      TransportMap::boundary_damping(DampingParams::constant(0.2, 1));
  CHECK(damping.weight(0, 0.0) == 0.0);
  CHECK(damping.weight(0, 0.5) == doctest::Approx(1.25).epsilon(1e-15));
}

TEST_CASE("unbounded maps reject the boundary") {
  const auto damping =
      TransportMap::boundary_damping(DampingParams::constant(0.2, 1));
  const auto inv = TransportMap::inversion(1);
  const auto mobius = TransportMap::mobius(1);
  for (double u : {0.0, 1.0}) {
    CHECK_THROWS_AS(damping.map(0, u), std::domain_error);
    CHECK_THROWS_AS(inv.map(0, u), std::domain_error);
    CHECK_THROWS_AS(mobius.map(0, u), std::domain_error);
  }
  double out = 0.0;
  CHECK_FALSE(damping.try_map(0, 0.0, out));
  CHECK(damping.try_map(0, 0.5, out));
  CHECK(out == 0.0);
}

namespace {

std::vector<TransportMap> all_variants() {
  std::vector<TransportMap> maps;
  maps.push_back(
      TransportMap::boundary_damping(DampingParams::constant(0.2, 1)));
  maps.push_back(TransportMap::inversion(1));
  maps.push_back(TransportMap::mobius(1));
  maps.push_back(TransportMap::truncation(1, 2.0));
  return maps;
}

} // namespace

TEST_CASE("ODE consistency: weight equals T' times the density") {
  const double h = 1e-6;
  for (const auto &map : all_variants()) {
    for (int i = 1; i <= 1000; ++i) {
      const double u = i / 1001.0;
      const double w = map.weight(0, u);
      if (w < 1e-30)
        continue;
      const double d =
          (map.map(0, u + h) - map.map(0, u - h)) / (2.0 * h);
      const double fd = d * gauss_pdf(map.map(0, u));
      CHECK(std::fabs(w - fd) / std::max(w, 1e-12) <= 1e-5);
    }
  }
}

TEST_CASE("transport maps are strictly increasing") {
  for (const auto &map : all_variants()) {
    double prev = -1e308;
    std::size_t defined = 0;
    for (int i = 1; i <= 10000; ++i) {
      const double u = i / 10001.0;
      // skip points where W underflows and the image is numerically at
      // the boundary (extreme damping tails only)
      double v = 0.0;
      if (!map.try_map(0, u, v))
        continue;
      ++defined;
      CHECK(v > prev);
      prev = v;
    }
    CHECK(defined >= 9990);
  }
}

TEST_CASE("per-dimension theta vector drives per-dimension maps") {
  const auto map = TransportMap::boundary_damping(
      DampingParams::power(0.1, 2.0, 3));
  // larger damping window flattens more mass away from the boundary, so
  // the transported value at a fixed small u differs across coordinates
  const double t0 = map.map(0, 0.05);
  const double t1 = map.map(1, 0.05);
  const double t2 = map.map(2, 0.05);
  CHECK(t0 != t1);
  CHECK(t1 != t2);
  CHECK(map.weight(0, 0.5) == doctest::Approx(1.0 / 0.9).epsilon(1e-15));
  CHECK(map.weight(1, 0.5) == doctest::Approx(1.0 / 0.975).epsilon(1e-15));
}
