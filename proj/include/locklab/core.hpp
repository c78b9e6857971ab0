// Copyright 2026 The locklab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOCKLAB_CORE_HPP
#define LOCKLAB_CORE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace locklab {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Random engine used throughout. Samplers take it by reference; there is
/// no global generator.
using Rng = std::mt19937_64;

namespace tol {
inline constexpr double kAlgebraic = 1e-10;  // exact identities
inline constexpr double kEigen = 1e-9;       // anything through an eigensolver
inline constexpr double kHermitian = 1e-12;  // Hermiticity flag on operators
inline constexpr double kProbability = 1e-12;
}  // namespace tol

/// Largest qubit count for which dense 2^m x 2^m matrices are built.
inline constexpr int kDefaultDenseCap = 8;

/// Thrown when a request would need a dense matrix beyond the configured cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Mismatched dimensions or shapes between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An input violates a domain invariant (not a density operator, not a POVM,
/// wrong alphabet, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline double max_abs(const Operator& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double hermiticity_deviation(const Operator& a) {
  return max_abs(a - a.adjoint());
}

inline std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Uniform integer in [0, n) drawn by rejection from raw engine output, so
/// streams are identical across standard library implementations.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

inline int random_bit(Rng& rng) { return static_cast<int>(rng() >> 63); }

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal variate (Box-Muller on uniform_unit).
inline double standard_normal(Rng& rng) {
  double u1;
  do {
    u1 = uniform_unit(rng);
  } while (u1 <= 0.0);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

inline Complex complex_normal(Rng& rng) {
  return {standard_normal(rng), standard_normal(rng)};
}

}  // namespace locklab

#endif  // LOCKLAB_CORE_HPP
