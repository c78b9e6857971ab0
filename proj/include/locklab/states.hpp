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

// Density operators, classical-quantum states and the locking ensemble.

#ifndef LOCKLAB_STATES_HPP
#define LOCKLAB_STATES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "locklab/core.hpp"
#include "locklab/pauli.hpp"

namespace locklab {

struct ValidationReport {
  double hermiticity = 0.0;
  double min_eigenvalue = 0.0;
  double trace_deviation = 0.0;

  bool hermitian() const { return hermiticity <= tol::kAlgebraic; }
  bool positive() const { return min_eigenvalue >= -tol::kEigen; }
  bool unit_trace() const { return trace_deviation <= tol::kAlgebraic; }
  bool passed() const { return hermitian() && positive() && unit_trace(); }
};

inline ValidationReport validate(const Operator& rho) {
  if (rho.rows() != rho.cols()) throw DimensionError("validate: matrix is not square");
  ValidationReport r;
  r.hermiticity = hermiticity_deviation(rho);
  const Operator herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(herm, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = rho.rows() == 0 ? 0.0 : es.eigenvalues().minCoeff();
  r.trace_deviation = std::abs(rho.trace() - Complex(1.0));
  return r;
}

/// A Hermitian, positive semidefinite, unit-trace operator. Construction
/// validates; a DensityOperator value is always valid.
class DensityOperator {
 public:
  explicit DensityOperator(Operator op) : op_(std::move(op)) {
    const auto r = validate(op_);
    if (!r.passed())
      throw DomainError("not a density operator (hermiticity " + std::to_string(r.hermiticity) +
                        ", min eigenvalue " + std::to_string(r.min_eigenvalue) + ", trace deviation " +
                        std::to_string(r.trace_deviation) + ")");
  }

  static DensityOperator maximally_mixed(Eigen::Index d) {
    return DensityOperator(Operator::Identity(d, d) / static_cast<double>(d));
  }
  static DensityOperator pure(const StateVector& psi) {
    const StateVector u = psi / psi.norm();
    return DensityOperator(u * u.adjoint());
  }
  static DensityOperator basis_state(Eigen::Index d, Eigen::Index k) {
    Operator op = Operator::Zero(d, d);
    op(k, k) = 1.0;
    return DensityOperator(std::move(op));
  }

  const Operator& matrix() const { return op_; }
  Eigen::Index dim() const { return op_.rows(); }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return op_(r, c); }

 private:
  Operator op_;
};

/// Unit-norm state vector.
class PureStateVector {
 public:
  explicit PureStateVector(StateVector amps) : amps_(std::move(amps)) {
    if (std::abs(amps_.norm() - 1.0) > tol::kAlgebraic) throw DomainError("state vector is not normalized");
  }
  const StateVector& amplitudes() const { return amps_; }
  Eigen::Index dim() const { return amps_.size(); }
  Operator projector() const { return amps_ * amps_.adjoint(); }

 private:
  StateVector amps_;
};

/// Tracing out the right factor of a dim_a x dim_b bipartite vector.
/// Amplitude index is a * dim_b + b.
inline Operator partial_trace_right(const StateVector& psi, Eigen::Index dim_a, Eigen::Index dim_b) {
  if (psi.size() != dim_a * dim_b) throw DimensionError("partial trace: dimension mismatch");
  // Row-major reshape: M(a, b) = psi(a * dim_b + b); rho_A = M M^dag.
  Operator m(dim_a, dim_b);
  for (Eigen::Index a = 0; a < dim_a; ++a)
    for (Eigen::Index b = 0; b < dim_b; ++b) m(a, b) = psi(a * dim_b + b);
  return m * m.adjoint();
}

inline Operator partial_trace_left(const StateVector& psi, Eigen::Index dim_a, Eigen::Index dim_b) {
  if (psi.size() != dim_a * dim_b) throw DimensionError("partial trace: dimension mismatch");
  Operator m(dim_a, dim_b);
  for (Eigen::Index a = 0; a < dim_a; ++a)
    for (Eigen::Index b = 0; b < dim_b; ++b) m(a, b) = psi(a * dim_b + b);
  return (m.adjoint() * m).transpose();
}

/// Operator partial traces on a dim_a x dim_b product space.
inline Operator partial_trace_right(const Operator& rho, Eigen::Index dim_a, Eigen::Index dim_b) {
  if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
    throw DimensionError("partial trace: dimension mismatch");
  Operator out = Operator::Zero(dim_a, dim_a);
  for (Eigen::Index i = 0; i < dim_a; ++i)
    for (Eigen::Index j = 0; j < dim_a; ++j)
      for (Eigen::Index b = 0; b < dim_b; ++b) out(i, j) += rho(i * dim_b + b, j * dim_b + b);
  return out;
}

inline Operator partial_trace_left(const Operator& rho, Eigen::Index dim_a, Eigen::Index dim_b) {
  if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
    throw DimensionError("partial trace: dimension mismatch");
  Operator out = Operator::Zero(dim_b, dim_b);
  for (Eigen::Index a = 0; a < dim_a; ++a) out += rho.block(a * dim_b, a * dim_b, dim_b, dim_b);
  return out;
}

/// Purification sum_i sqrt(lambda_i) |v_i> (x) |i'> on dimension d^2; the
/// auxiliary system is the right factor.
inline PureStateVector purify(const DensityOperator& rho) {
  const Eigen::Index d = rho.dim();
  Eigen::SelfAdjointEigenSolver<Operator> es(rho.matrix());
  StateVector out = StateVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    // Drop eigensolver noise on null directions.
    const double lam = es.eigenvalues()(i);
    if (lam <= 1e-14) continue;
    const StateVector v = es.eigenvectors().col(i);
    for (Eigen::Index a = 0; a < d; ++a) out(a * d + i) += std::sqrt(lam) * v(a);
  }
  out /= out.norm();  // absorbs the eigenvalue clipping
  return PureStateVector(std::move(out));
}

/// Classical-quantum state sum_v P(v) |v><v| (x) rho_{E|v}, stored as label
/// list plus conditionals.
template <class Label>
class CqState {
 public:
  CqState(std::vector<Label> labels, std::vector<double> probs, std::vector<DensityOperator> conditionals)
      : labels_(std::move(labels)), probs_(std::move(probs)), conditionals_(std::move(conditionals)) {
    if (labels_.empty()) throw DomainError("cq-state needs at least one label");
    if (labels_.size() != probs_.size() || labels_.size() != conditionals_.size())
      throw DimensionError("cq-state: labels, probabilities and conditionals differ in length");
    const Eigen::Index d = conditionals_.front().dim();
    for (const auto& c : conditionals_)
      if (c.dim() != d) throw DimensionError("cq-state: conditionals differ in dimension");
    double total = 0.0;
    for (double p : probs_) {
      if (p < 0.0) throw DomainError("cq-state: negative probability");
      total += p;
    }
    if (std::abs(total - 1.0) > tol::kAlgebraic) throw DomainError("cq-state: probabilities do not sum to 1");
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j]) throw DomainError("cq-state: duplicate label");
  }

  std::size_t size() const { return labels_.size(); }
  Eigen::Index dim() const { return conditionals_.front().dim(); }
  const std::vector<Label>& labels() const { return labels_; }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<DensityOperator>& conditionals() const { return conditionals_; }
  const Label& label(std::size_t i) const { return labels_[i]; }
  double prob(std::size_t i) const { return probs_[i]; }
  const DensityOperator& conditional(std::size_t i) const { return conditionals_[i]; }

 private:
  std::vector<Label> labels_;
  std::vector<double> probs_;
  std::vector<DensityOperator> conditionals_;
};

/// Label (x, y) of the locking ensemble: x a bit, y in {1,2,3}^m.
struct LockingLabel {
  int x = 0;
  PauliString y;

  friend auto operator<=>(const LockingLabel&, const LockingLabel&) = default;
  friend bool operator==(const LockingLabel&, const LockingLabel&) = default;
};

using CcqState = CqState<LockingLabel>;

template <class Label>
DensityOperator marginal_e(const CqState<Label>& s) {
  Operator acc = Operator::Zero(s.dim(), s.dim());
  for (std::size_t i = 0; i < s.size(); ++i) acc += s.prob(i) * s.conditional(i).matrix();
  return DensityOperator(std::move(acc));
}

namespace detail {
inline void check_locking_m(int m, int dense_cap) {
  if (m < 1) throw DomainError("locking ensemble needs m >= 1");
  detail::check_dense_cap(m, dense_cap);
}

/// Projector onto the (-1)^r eigenspace of a single-qubit Pauli.
inline Operator eigenprojector(Pauli p, int r) {
  return 0.5 * (single_pauli(Pauli::I) + (r ? -1.0 : 1.0) * single_pauli(p));
}

inline Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}
}  // namespace detail

/// Locking ensemble: uniform (x, y) with rho_{E|x,y} = 2^-m (id + (-1)^x sigma_y).
/// Labels are ordered x-major, then y lexicographically.
inline CcqState locking_state(int m, int dense_cap = kDefaultDenseCap) {
  detail::check_locking_m(m, dense_cap);
  const auto ys = locking_pauli_strings(m);
  const Eigen::Index d = Eigen::Index{1} << m;
  const double p = 1.0 / (2.0 * static_cast<double>(ys.size()));
  const Operator id = Operator::Identity(d, d);

  std::vector<LockingLabel> labels;
  std::vector<double> probs;
  std::vector<DensityOperator> conds;
  for (int x = 0; x < 2; ++x) {
    for (const auto& y : ys) {
      labels.push_back({x, y});
      probs.push_back(p);
      conds.emplace_back((id + (x ? -1.0 : 1.0) * pauli_string_matrix(y, dense_cap)) / static_cast<double>(d));
    }
  }
  return CcqState(std::move(labels), std::move(probs), std::move(conds));
}

/// Same ensemble built from products of single-qubit eigenprojectors
/// [r_1]_{y_1} (x) ... (x) [r_m]_{y_m} with x = parity(r), r uniform.
inline CcqState locking_state_alt(int m, int dense_cap = kDefaultDenseCap) {
  detail::check_locking_m(m, dense_cap);
  const auto ys = locking_pauli_strings(m);
  const Eigen::Index d = Eigen::Index{1} << m;
  const std::uint64_t nr = std::uint64_t{1} << m;
  const double p = 1.0 / (2.0 * static_cast<double>(ys.size()));

  std::vector<Operator> sums[2];
  sums[0].assign(ys.size(), Operator::Zero(d, d));
  sums[1].assign(ys.size(), Operator::Zero(d, d));
  for (std::size_t k = 0; k < ys.size(); ++k) {
    for (std::uint64_t r = 0; r < nr; ++r) {
      Operator prod = Operator::Identity(1, 1);
      for (int i = 0; i < m; ++i) {
        const int ri = static_cast<int>((r >> (m - 1 - i)) & 1);
        prod = detail::kron(prod, detail::eigenprojector(ys[k][i], ri));
      }
      sums[std::popcount(r) & 1][k] += prod;
    }
  }
  // Given x, r is uniform over the 2^(m-1) strings of that parity.
  const double weight = 1.0 / static_cast<double>(nr / 2);
  std::vector<LockingLabel> labels;
  std::vector<double> probs;
  std::vector<DensityOperator> conds;
  for (int x = 0; x < 2; ++x) {
    for (std::size_t k = 0; k < ys.size(); ++k) {
      labels.push_back({x, ys[k]});
      probs.push_back(p);
      conds.emplace_back(weight * sums[x][k]);
    }
  }
  return CcqState(std::move(labels), std::move(probs), std::move(conds));
}

/// Dimension of the y-register used by extend_with_y.
inline Eigen::Index y_register_dim(int m) { return static_cast<Eigen::Index>(ipow(3, m)); }

/// Merge Y into the quantum side: rho_{E|x,y} -> |e_y><e_y| (x) rho_{E|x,y},
/// with the y-register as the left factor indexed lexicographically.
inline CcqState extend_with_y(const CcqState& s, int dense_cap = kDefaultDenseCap) {
  const int m = s.label(0).y.size();
  const Eigen::Index dy = y_register_dim(m);
  const Eigen::Index de = s.dim();
  const Eigen::Index total = dy * de;
  if (total > (Eigen::Index{1} << dense_cap))
    throw CapacityError("extended dimension " + std::to_string(total) + " exceeds dense cap");
  std::vector<DensityOperator> conds;
  conds.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto ky = static_cast<Eigen::Index>(s.label(i).y.base3_rank());
    Operator big = Operator::Zero(total, total);
    big.block(ky * de, ky * de, de, de) = s.conditional(i).matrix();
    conds.emplace_back(std::move(big));
  }
  return CcqState(s.labels(), s.probs(), std::move(conds));
}

/// Haar-random pure state of dimension d.
inline StateVector random_pure_vector(Eigen::Index d, Rng& rng) {
  StateVector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = complex_normal(rng);
  return v / v.norm();
}

inline DensityOperator random_pure_state(Eigen::Index d, Rng& rng) {
  return DensityOperator::pure(random_pure_vector(d, rng));
}

/// Ginibre-distributed mixed state G G^dag / tr(G G^dag), G of shape d x rank.
inline DensityOperator random_density_operator(Eigen::Index d, Rng& rng, Eigen::Index rank = 0) {
  if (rank <= 0) rank = d;
  Operator g(d, rank);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) g(i, j) = complex_normal(rng);
  Operator rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityOperator(std::move(rho));
}

}  // namespace locklab

#endif  // LOCKLAB_STATES_HPP
