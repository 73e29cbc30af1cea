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

#ifndef BDQMC_DIGITALNET_HPP
#define BDQMC_DIGITALNET_HPP

#include <cstdint>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bdqmc {

/// Sobol' direction numbers in the published "d s a m_i" column format
/// (one header line, dimensions starting at 2). Dimension 1 is the van
/// der Corput sequence and is synthesized internally.
struct DirectionNumbers {
  struct Row {
    unsigned degree = 0;           // degree of the primitive polynomial
    std::uint32_t a = 0;           // interior polynomial coefficients
    std::vector<std::uint32_t> m;  // initial values m_1..m_degree, odd
  };

  std::vector<Row> rows; // rows[j-2] holds dimension j

  std::size_t max_dimension() const { return rows.size() + 1; }

  static DirectionNumbers parse(std::istream &in);
  static DirectionNumbers load(const std::string &path);
};

/// Base-2 Sobol' net: n = 2^m points in [0,1)^s generated by m x m
/// upper-triangular binary matrices (columns = direction integers).
class DigitalNet {
public:
  DigitalNet(const DirectionNumbers &dirs, std::size_t s, unsigned m);

  std::size_t dimension() const { return s_; }
  unsigned resolution() const { return m_; }
  std::size_t size() const { return std::size_t{1} << m_; }

  /// The m output digits of point i in coordinate j, most significant
  /// digit at bit m-1. Point value is digits * 2^(-m).
  std::uint32_t digits(std::size_t i, std::size_t j) const;

  /// Unscrambled points, row-major n x s.
  std::vector<double> points() const;

private:
  std::size_t s_;
  unsigned m_;
  // columns_[j*m + k] = k-th direction integer of coordinate j (m bits).
  std::vector<std::uint32_t> columns_;
};

/// One replicate of linear matrix scrambling with a digital shift:
/// per coordinate a random unit-lower-triangular 53x53 binary matrix L_j
/// and a 53-bit shift e_j, all derived from (seed, replicate, j) through
/// a counter-based generator. Immutable and shareable.
class ScrambleRealization {
public:
  static constexpr unsigned kOutputBits = 53;

  ScrambleRealization(std::uint64_t seed, std::uint32_t replicate,
                      std::size_t s, unsigned input_resolution);

  /// Identity scramble (L = I, zero shift): apply() returns the input
  /// digits unchanged as a binary fraction.
  static ScrambleRealization identity(std::size_t s,
                                      unsigned input_resolution);

  std::uint64_t seed() const { return seed_; }
  std::uint32_t replicate() const { return replicate_; }

  /// Scrambled coordinate from the m input digits of one point:
  /// y = L_j x xor e_j, read as a 53-bit binary fraction in (0,1).
  double apply(std::size_t j, std::uint32_t input_digits) const;

  /// Scrambles a whole net, row-major n x s output.
  std::vector<double> scramble(const DigitalNet &net) const;

private:
  std::uint64_t seed_;
  std::uint32_t replicate_;
  std::size_t s_;
  unsigned m_;
  std::vector<std::uint64_t> columns_; // s_ * m_ scramble-matrix columns
  std::vector<std::uint64_t> shifts_;  // s_ digital shifts
};

/// Deterministic counter-based generator keyed by
/// (seed, replicate, dimension, word index); no global state.
std::uint64_t keyed_random(std::uint64_t seed, std::uint64_t replicate,
                           std::uint64_t dimension, std::uint64_t word);

/// Exhaustive (t,m,s)-net test: true iff every elementary interval of
/// volume 2^(t-m) contains exactly 2^t of the given points.
bool check_net(std::span<const double> points, unsigned t, unsigned m,
               std::size_t s);

/// Smallest t for which check_net passes (brute force; meant for small
/// m and s).
unsigned min_t(std::span<const double> points, unsigned m, std::size_t s);

} // namespace bdqmc

#endif
