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

// Pauli matrices, tensor-product Pauli strings and the generalized Bloch
// representation of operators on m qubits.
//
// Qubit ordering: position 0 of a PauliString is the leftmost Kronecker
// factor, i.e. the most significant bit of a computational-basis index.

#ifndef LOCKLAB_PAULI_HPP
#define LOCKLAB_PAULI_HPP

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "locklab/core.hpp"

namespace locklab {

/// Single-qubit Pauli: 0 = identity, 1..3 = sigma_1..sigma_3.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline Pauli pauli_from_int(int v) {
  if (v < 0 || v > 3) throw DomainError("Pauli index must be in {0,1,2,3}, got " + std::to_string(v));
  return static_cast<Pauli>(v);
}

class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw DomainError("PauliString needs at least one qubit");
  }
  PauliString(std::initializer_list<int> idx) {
    if (idx.size() == 0) throw DomainError("PauliString needs at least one qubit");
    ops_.reserve(idx.size());
    for (int v : idx) ops_.push_back(pauli_from_int(v));
  }
  static PauliString from_ints(std::span<const int> idx) {
    std::vector<Pauli> ops;
    for (int v : idx) ops.push_back(pauli_from_int(v));
    return PauliString(std::move(ops));
  }
  static PauliString identity(int m) { return PauliString(std::vector<Pauli>(m, Pauli::I)); }

  int size() const { return static_cast<int>(ops_.size()); }
  Pauli operator[](int i) const { return ops_[i]; }
  int index(int i) const { return static_cast<int>(ops_[i]); }
  const std::vector<Pauli>& ops() const { return ops_; }

  /// True when every factor is a non-identity Pauli (the alphabet {1,2,3}).
  bool is_locking_alphabet() const {
    return std::none_of(ops_.begin(), ops_.end(), [](Pauli p) { return p == Pauli::I; });
  }
  bool is_identity() const {
    return std::all_of(ops_.begin(), ops_.end(), [](Pauli p) { return p == Pauli::I; });
  }

  /// Bits set where the factor flips the computational basis (X or Y).
  std::uint64_t flip_mask() const {
    std::uint64_t mask = 0;
    for (int i = 0; i < size(); ++i)
      if (ops_[i] == Pauli::X || ops_[i] == Pauli::Y) mask |= bit(i);
    return mask;
  }
  /// Bits set where the factor contributes a (-1)^b sign (Y or Z).
  std::uint64_t sign_mask() const {
    std::uint64_t mask = 0;
    for (int i = 0; i < size(); ++i)
      if (ops_[i] == Pauli::Y || ops_[i] == Pauli::Z) mask |= bit(i);
    return mask;
  }
  int y_count() const {
    return static_cast<int>(std::count(ops_.begin(), ops_.end(), Pauli::Y));
  }

  /// Base-4 index with position 0 most significant.
  std::uint64_t base4_index() const {
    std::uint64_t r = 0;
    for (Pauli p : ops_) r = 4 * r + static_cast<std::uint64_t>(p);
    return r;
  }
  /// Lexicographic rank inside {1,2,3}^m. Requires the locking alphabet.
  std::uint64_t base3_rank() const {
    if (!is_locking_alphabet()) throw DomainError("base3_rank needs a string over {1,2,3}");
    std::uint64_t r = 0;
    for (Pauli p : ops_) r = 3 * r + (static_cast<std::uint64_t>(p) - 1);
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (Pauli p : ops_) s.push_back(static_cast<char>('0' + static_cast<int>(p)));
    return s;
  }

  friend auto operator<=>(const PauliString&, const PauliString&) = default;
  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::uint64_t bit(int i) const { return std::uint64_t{1} << (size() - 1 - i); }
  std::vector<Pauli> ops_;
};

/// All strings of length m over {0,1,2,3}, in base-4 order.
inline std::vector<PauliString> all_pauli_strings(int m) {
  std::vector<PauliString> out;
  const auto n = static_cast<std::uint64_t>(ipow(4, m));
  out.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    std::vector<Pauli> ops(m);
    std::uint64_t r = k;
    for (int i = m - 1; i >= 0; --i, r /= 4) ops[i] = static_cast<Pauli>(r % 4);
    out.emplace_back(std::move(ops));
  }
  return out;
}

/// All strings of length m over {1,2,3}, in lexicographic order.
inline std::vector<PauliString> locking_pauli_strings(int m) {
  std::vector<PauliString> out;
  const auto n = static_cast<std::uint64_t>(ipow(3, m));
  out.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    std::vector<Pauli> ops(m);
    std::uint64_t r = k;
    for (int i = m - 1; i >= 0; --i, r /= 3) ops[i] = static_cast<Pauli>(r % 3 + 1);
    out.emplace_back(std::move(ops));
  }
  return out;
}

inline Operator single_pauli(Pauli p) {
  const Complex i1{0.0, 1.0};
  Operator s(2, 2);
  switch (p) {
    case Pauli::I: s << 1, 0, 0, 1; break;
    case Pauli::X: s << 0, 1, 1, 0; break;
    case Pauli::Y: s << 0, -i1, i1, 0; break;
    case Pauli::Z: s << 1, 0, 0, -1; break;
  }
  return s;
}

namespace detail {

// Every Pauli string is a signed permutation matrix: column j has a single
// entry at row j ^ flip_mask with value i^{#Y} (-1)^{popcount(j & sign_mask)}.
inline Complex pauli_column_phase(std::uint64_t col, std::uint64_t sign_mask, int y_count) {
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex ph = kIPow[y_count % 4];
  return (std::popcount(col & sign_mask) & 1) ? -ph : ph;
}

inline void check_dense_cap(int m, int dense_cap) {
  if (m > dense_cap)
    throw CapacityError("dense operator on " + std::to_string(m) + " qubits exceeds cap of " +
                        std::to_string(dense_cap) +
                        " qubits; use apply_pauli_string for matrix-free application");
}

}  // namespace detail

inline Operator pauli_string_matrix(const PauliString& y, int dense_cap = kDefaultDenseCap) {
  const int m = y.size();
  detail::check_dense_cap(m, dense_cap);
  const std::uint64_t d = std::uint64_t{1} << m;
  const std::uint64_t flip = y.flip_mask();
  const std::uint64_t sign = y.sign_mask();
  const int ny = y.y_count();
  Operator out = Operator::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::uint64_t j = 0; j < d; ++j)
    out(static_cast<Eigen::Index>(j ^ flip), static_cast<Eigen::Index>(j)) =
        detail::pauli_column_phase(j, sign, ny);
  return out;
}

/// sigma_y * v without materializing sigma_y; O(2^m).
inline StateVector apply_pauli_string(const PauliString& y, const StateVector& v) {
  const int m = y.size();
  if (m >= 63 || v.size() != (Eigen::Index{1} << m))
    throw DimensionError("vector length " + std::to_string(v.size()) + " does not match 2^" +
                         std::to_string(m));
  const std::uint64_t flip = y.flip_mask();
  const std::uint64_t sign = y.sign_mask();
  const int ny = y.y_count();
  StateVector out(v.size());
  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(v.size()); ++j)
    out(static_cast<Eigen::Index>(j ^ flip)) =
        detail::pauli_column_phase(j, sign, ny) * v(static_cast<Eigen::Index>(j));
  return out;
}

/// tr(sigma_y * a) in O(d) using the signed-permutation structure.
inline Complex pauli_expectation(const PauliString& y, const Operator& a) {
  const std::uint64_t d = static_cast<std::uint64_t>(a.rows());
  const std::uint64_t flip = y.flip_mask();
  const std::uint64_t sign = y.sign_mask();
  const int ny = y.y_count();
  Complex acc = 0.0;
  // (sigma_y)_{j^flip, j} a_{j, j^flip}
  for (std::uint64_t j = 0; j < d; ++j)
    acc += detail::pauli_column_phase(j, sign, ny) *
           a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j ^ flip));
  return acc;
}

/// Maximum deviation of each of the four algebraic Pauli-string properties.
struct PauliPropertiesReport {
  double hermiticity = 0.0;    // |sigma_y^dag - sigma_y|
  double trace = 0.0;          // |tr sigma_y - 2^m delta_{y,0}|
  double eigenvalues = 0.0;    // distance of each eigenvalue to {-1, +1}
  double orthogonality = 0.0;  // |tr(sigma_y^dag sigma_y') - 2^m delta_{y,y'}|
  std::vector<double> spectrum;

  double max_deviation() const { return std::max({hermiticity, trace, eigenvalues, orthogonality}); }
  bool passed(double tolerance = tol::kAlgebraic) const { return max_deviation() <= tolerance; }
};

inline PauliPropertiesReport pauli_properties_check(const PauliString& y, const PauliString& y2,
                                                    int dense_cap = kDefaultDenseCap) {
  if (y.size() != y2.size()) throw DimensionError("Pauli strings differ in length");
  const Operator a = pauli_string_matrix(y, dense_cap);
  const Operator b = pauli_string_matrix(y2, dense_cap);
  const double dim = static_cast<double>(a.rows());

  PauliPropertiesReport r;
  r.hermiticity = hermiticity_deviation(a);
  r.trace = std::abs(a.trace() - Complex(y.is_identity() ? dim : 0.0));
  Eigen::SelfAdjointEigenSolver<Operator> es(a, Eigen::EigenvaluesOnly);
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = es.eigenvalues()(k);
    r.spectrum.push_back(lam);
    r.eigenvalues = std::max(r.eigenvalues, std::min(std::abs(lam - 1.0), std::abs(lam + 1.0)));
  }
  r.orthogonality = std::abs((a.adjoint() * b).trace() - Complex(y == y2 ? dim : 0.0));
  return r;
}

/// Coefficients tr(sigma_y * op) for every y in {0,1,2,3}^m, stored in
/// base-4 order.
class BlochCoefficients {
 public:
  BlochCoefficients() = default;
  BlochCoefficients(int m, std::vector<double> coeffs) : m_(m), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != static_cast<std::size_t>(ipow(4, m)))
      throw DimensionError("expected 4^m Bloch coefficients");
  }
  static BlochCoefficients zeros(int m) {
    return BlochCoefficients(m, std::vector<double>(static_cast<std::size_t>(ipow(4, m)), 0.0));
  }

  int qubits() const { return m_; }
  double operator[](const PauliString& y) const { return coeffs_.at(y.base4_index()); }
  double& operator[](const PauliString& y) { return coeffs_.at(y.base4_index()); }
  std::span<const double> values() const { return coeffs_; }

  double sum_of_squares() const {
    double s = 0.0;
    for (double c : coeffs_) s += c * c;
    return s;
  }

 private:
  int m_ = 0;
  std::vector<double> coeffs_;
};

inline int qubit_count_of(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0)
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

inline BlochCoefficients bloch_decompose(const Operator& sigma, int dense_cap = kDefaultDenseCap) {
  if (sigma.rows() != sigma.cols()) throw DimensionError("operator is not square");
  const int m = qubit_count_of(sigma.rows());
  if (m < 1) throw DimensionError("need at least one qubit");
  detail::check_dense_cap(m, dense_cap);
  if (hermiticity_deviation(sigma) > tol::kAlgebraic)
    throw DomainError("bloch_decompose requires a Hermitian operator");
  auto out = BlochCoefficients::zeros(m);
  for (const PauliString& y : all_pauli_strings(m)) out[y] = pauli_expectation(y, sigma).real();
  return out;
}

inline Operator bloch_reconstruct(const BlochCoefficients& c) {
  const int m = c.qubits();
  const std::uint64_t d = std::uint64_t{1} << m;
  const double scale = 1.0 / static_cast<double>(d);
  Operator out = Operator::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const PauliString& y : all_pauli_strings(m)) {
    const double cy = c[y];
    if (cy == 0.0) continue;
    const std::uint64_t flip = y.flip_mask();
    const std::uint64_t sign = y.sign_mask();
    const int ny = y.y_count();
    for (std::uint64_t j = 0; j < d; ++j)
      out(static_cast<Eigen::Index>(j ^ flip), static_cast<Eigen::Index>(j)) +=
          scale * cy * detail::pauli_column_phase(j, sign, ny);
  }
  return out;
}

}  // namespace locklab

#endif  // LOCKLAB_PAULI_HPP
