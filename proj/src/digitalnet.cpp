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

#include "bdqmc/digitalnet.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace bdqmc {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string &what) {
  throw std::runtime_error("direction numbers: line " + std::to_string(line) +
                           ": " + what);
}

} // namespace

DirectionNumbers DirectionNumbers::parse(std::istream &in) {
  DirectionNumbers out;
  std::string line;
  std::size_t lineno = 0;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!header_skipped) {
      header_skipped = true; // the published format carries one header line
      continue;
    }
    if (line.find_first_not_of(" \t\r\n") == std::string::npos)
      continue;
    std::istringstream ls(line);
    unsigned long long d = 0, deg = 0, a = 0;
    if (!(ls >> d >> deg >> a))
      parse_fail(lineno, "expected columns d s a");
    if (d != out.rows.size() + 2)
      parse_fail(lineno, "dimension " + std::to_string(d) +
                             " out of order (expected " +
                             std::to_string(out.rows.size() + 2) + ")");
    if (deg == 0 || deg > 31)
      parse_fail(lineno, "polynomial degree out of range");
    Row row;
    row.degree = static_cast<unsigned>(deg);
    row.a = static_cast<std::uint32_t>(a);
    row.m.reserve(row.degree);
    for (unsigned i = 1; i <= row.degree; ++i) {
      unsigned long long mi = 0;
      if (!(ls >> mi))
        parse_fail(lineno, "expected " + std::to_string(deg) +
                               " initial values, got " + std::to_string(i - 1));
      if (mi % 2 == 0)
        parse_fail(lineno, "initial value m_" + std::to_string(i) +
                               " must be odd");
      if (mi >= (1ull << i))
        parse_fail(lineno, "initial value m_" + std::to_string(i) +
                               " must be < 2^" + std::to_string(i));
      row.m.push_back(static_cast<std::uint32_t>(mi));
    }
    out.rows.push_back(std::move(row));
  }
  if (!header_skipped || out.rows.empty())
    throw std::runtime_error("direction numbers: empty input");
  return out;
}

DirectionNumbers DirectionNumbers::load(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("direction numbers: cannot open " + path);
  return parse(in);
}

DigitalNet::DigitalNet(const DirectionNumbers &dirs, std::size_t s,
                       unsigned m)
    : s_(s), m_(m) {
  if (s < 1)
    throw std::invalid_argument("DigitalNet: dimension must be >= 1");
  if (m > 32)
    throw std::invalid_argument("DigitalNet: resolution must be <= 32");
  if (s > dirs.max_dimension())
    throw std::out_of_range(
        "DigitalNet: direction-number table has only " +
        std::to_string(dirs.max_dimension()) + " dimensions, requested " +
        std::to_string(s));

  columns_.assign(s_ * m_, 0);
  std::vector<std::uint32_t> mk(m_ + 1);
  for (std::size_t j = 0; j < s_; ++j) {
    if (j == 0) {
      // van der Corput: identity generator matrix
      for (unsigned k = 1; k <= m_; ++k)
        columns_[k - 1] = std::uint32_t{1} << (m_ - k);
      continue;
    }
    const auto &row = dirs.rows[j - 1];
    const unsigned d = row.degree;
    for (unsigned k = 1; k <= m_; ++k) {
      if (k <= d) {
        mk[k] = row.m[k - 1];
      } else {
        std::uint32_t v = mk[k - d] ^ (mk[k - d] << d);
        for (unsigned i = 1; i + 1 <= d; ++i)
          v ^= ((row.a >> (d - 1 - i)) & 1u) * (mk[k - i] << i);
        mk[k] = v;
      }
      columns_[j * m_ + (k - 1)] = mk[k] << (m_ - k);
    }
  }
}

std::uint32_t DigitalNet::digits(std::size_t i, std::size_t j) const {
  std::uint32_t x = 0;
  const std::uint32_t *col = columns_.data() + j * m_;
  for (unsigned l = 0; i >> l; ++l)
    if ((i >> l) & 1u)
      x ^= col[l];
  return x;
}

std::vector<double> DigitalNet::points() const {
  const std::size_t n = size();
  const double scale = std::ldexp(1.0, -static_cast<int>(m_));
  std::vector<double> pts(n * s_);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < s_; ++j)
      pts[i * s_ + j] = (m_ == 0) ? 0.0 : digits(i, j) * scale;
  return pts;
}

std::uint64_t keyed_random(std::uint64_t seed, std::uint64_t replicate,
                           std::uint64_t dimension, std::uint64_t word) {
  // splitmix64 finalizer chained over the key components
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  return mix(seed ^ mix(replicate ^ mix(dimension ^ mix(word))));
}

ScrambleRealization::ScrambleRealization(std::uint64_t seed,
                                         std::uint32_t replicate,
                                         std::size_t s,
                                         unsigned input_resolution)
    : seed_(seed), replicate_(replicate), s_(s), m_(input_resolution) {
  if (m_ > 32)
    throw std::invalid_argument("ScrambleRealization: resolution must be <= 32");
  columns_.assign(s_ * m_, 0);
  shifts_.assign(s_, 0);
  const std::uint64_t mask53 = (std::uint64_t{1} << kOutputBits) - 1;
  for (std::size_t j = 0; j < s_; ++j) {
    shifts_[j] = keyed_random(seed_, replicate_, j, 0) & mask53;
    for (unsigned l = 1; l <= m_; ++l) {
      // column l of L_j: unit diagonal, random strictly-lower part
      const unsigned below = kOutputBits - l;
      std::uint64_t lower =
          keyed_random(seed_, replicate_, j, l) & ((std::uint64_t{1} << below) - 1);
      columns_[j * m_ + (l - 1)] = (std::uint64_t{1} << below) | lower;
    }
  }
}

ScrambleRealization ScrambleRealization::identity(std::size_t s,
                                                  unsigned input_resolution) {
  ScrambleRealization out(0, 0, s, input_resolution);
  for (std::size_t j = 0; j < s; ++j) {
    out.shifts_[j] = 0;
    for (unsigned l = 1; l <= input_resolution; ++l)
      out.columns_[j * input_resolution + (l - 1)] = std::uint64_t{1}
                                                     << (kOutputBits - l);
  }
  return out;
}

double ScrambleRealization::apply(std::size_t j,
                                  std::uint32_t input_digits) const {
  std::uint64_t y = shifts_[j];
  const std::uint64_t *col = columns_.data() + j * m_;
  for (unsigned l = 0; l < m_; ++l)
    if ((input_digits >> (m_ - 1 - l)) & 1u)
      y ^= col[l];
  return std::ldexp(static_cast<double>(y), -static_cast<int>(kOutputBits));
}

std::vector<double> ScrambleRealization::scramble(const DigitalNet &net) const {
  if (net.dimension() != s_ || net.resolution() != m_)
    throw std::invalid_argument("ScrambleRealization: net shape mismatch");
  const std::size_t n = net.size();
  std::vector<double> pts(n * s_);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < s_; ++j)
      pts[i * s_ + j] = apply(j, net.digits(i, j));
  return pts;
}

bool check_net(std::span<const double> points, unsigned t, unsigned m,
               std::size_t s) {
  const std::size_t n = std::size_t{1} << m;
  if (points.size() != n * s)
    throw std::invalid_argument("check_net: expected 2^m * s coordinates");
  if (t > m)
    return false;
  const unsigned depth = m - t;
  const std::size_t expected = std::size_t{1} << t;
  std::vector<unsigned> shape(s, 0);
  std::vector<std::size_t> counts;

  // enumerate all shape vectors (k_1,...,k_s) with sum = m - t
  bool ok = true;
  auto recurse = [&](auto &&self, std::size_t j, unsigned remaining) -> void {
    if (!ok)
      return;
    if (j + 1 == s) {
      shape[j] = remaining;
      counts.assign(std::size_t{1} << depth, 0);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t idx = 0;
        for (std::size_t jj = 0; jj < s; ++jj) {
          const unsigned k = shape[jj];
          idx = (idx << k) |
                static_cast<std::size_t>(points[i * s + jj] * std::ldexp(1.0, k));
        }
        ++counts[idx];
      }
      for (std::size_t c : counts)
        if (c != expected) {
          ok = false;
          return;
        }
      return;
    }
    for (unsigned k = 0; k <= remaining; ++k) {
      shape[j] = k;
      self(self, j + 1, remaining - k);
    }
  };
  recurse(recurse, 0, depth);
  return ok;
}

unsigned min_t(std::span<const double> points, unsigned m, std::size_t s) {
  for (unsigned t = 0; t <= m; ++t)
    if (check_net(points, t, m, s))
      return t;
  return m;
}

} // namespace bdqmc
