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

// POVMs, outcome statistics and entropies, and the measurements used around
// the locking ensemble.

#ifndef LOCKLAB_MEASUREMENT_HPP
#define LOCKLAB_MEASUREMENT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "locklab/core.hpp"
#include "locklab/pauli.hpp"
#include "locklab/states.hpp"

namespace locklab {

/// Finite POVM. Elements are validated for positivity and completeness
/// (tolerance 1e-9) on construction; they are not re-orthogonalized.
class Povm {
 public:
  explicit Povm(std::vector<Operator> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw DomainError("POVM needs at least one element");
    const Eigen::Index d = elements_.front().rows();
    Operator sum = Operator::Zero(d, d);
    for (const auto& e : elements_) {
      if (e.rows() != d || e.cols() != d) throw DimensionError("POVM elements differ in dimension");
      if (hermiticity_deviation(e) > tol::kEigen) throw DomainError("POVM element is not Hermitian");
      Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (e + e.adjoint()), Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -tol::kEigen) throw DomainError("POVM element is not positive");
      sum += e;
    }
    if (max_abs(sum - Operator::Identity(d, d)) > tol::kEigen)
      throw DomainError("POVM elements do not sum to the identity");
  }

  std::size_t size() const { return elements_.size(); }
  Eigen::Index dim() const { return elements_.front().rows(); }
  const Operator& operator[](std::size_t z) const { return elements_[z]; }
  const std::vector<Operator>& elements() const { return elements_; }

 private:
  std::vector<Operator> elements_;
};

struct OutcomeDistribution {
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t z) const { return probs[z]; }
};

/// P(v, z): rows are labels, columns are outcomes.
struct JointDistribution {
  RealMatrix p;

  double total() const { return p.sum(); }
};

namespace detail {
inline double clip_probability(double p) { return p < 0.0 ? 0.0 : p; }

inline double entropy_of(const double* first, std::size_t n) {
  double h = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = first[i];
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}
}  // namespace detail

inline OutcomeDistribution apply_povm(const Povm& povm, const DensityOperator& sigma) {
  if (povm.dim() != sigma.dim()) throw DimensionError("POVM and state differ in dimension");
  OutcomeDistribution out;
  out.probs.reserve(povm.size());
  for (const auto& e : povm.elements())
    out.probs.push_back(detail::clip_probability((e * sigma.matrix()).trace().real()));
  return out;
}

template <class Label>
JointDistribution measure_cq(const Povm& povm, const CqState<Label>& s) {
  if (povm.dim() != s.dim()) throw DimensionError("POVM and cq-state differ in dimension");
  JointDistribution j{RealMatrix(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(povm.size()))};
  for (std::size_t v = 0; v < s.size(); ++v)
    for (std::size_t z = 0; z < povm.size(); ++z)
      j.p(v, z) = detail::clip_probability(
          s.prob(v) * (povm[z] * s.conditional(v).matrix()).trace().real());
  return j;
}

/// Shannon entropy in bits, 0 log 0 = 0.
inline double shannon_entropy(const OutcomeDistribution& d) {
  return detail::entropy_of(d.probs.data(), d.probs.size());
}
inline double shannon_entropy(const std::vector<double>& probs) {
  return detail::entropy_of(probs.data(), probs.size());
}

inline double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary_entropy: p must lie in [0, 1]");
  const double q[2] = {p, 1.0 - p};
  return detail::entropy_of(q, 2);
}

inline OutcomeDistribution label_marginal(const JointDistribution& j) {
  OutcomeDistribution d;
  const Eigen::VectorXd rows = j.p.rowwise().sum();
  d.probs.assign(rows.data(), rows.data() + rows.size());
  return d;
}

inline OutcomeDistribution outcome_marginal(const JointDistribution& j) {
  OutcomeDistribution d;
  const Eigen::VectorXd cols = j.p.colwise().sum().transpose();
  d.probs.assign(cols.data(), cols.data() + cols.size());
  return d;
}

inline double joint_entropy(const JointDistribution& j) {
  return detail::entropy_of(j.p.data(), static_cast<std::size_t>(j.p.size()));
}

/// I(V;Z) = H(V) + H(Z) - H(V,Z), small negative rounding clipped to 0.
inline double mutual_information(const JointDistribution& j) {
  const double mi = shannon_entropy(label_marginal(j)) + shannon_entropy(outcome_marginal(j)) - joint_entropy(j);
  return std::max(0.0, mi);
}

/// H(V|Z) = H(V,Z) - H(Z).
inline double conditional_entropy(const JointDistribution& j) {
  return std::max(0.0, joint_entropy(j) - shannon_entropy(outcome_marginal(j)));
}

namespace detail {
inline void require_locking_alphabet(const PauliString& y) {
  if (y.size() < 1 || !y.is_locking_alphabet())
    throw DomainError("expected a Pauli string over {1,2,3}, got " + y.to_string());
}
}  // namespace detail

/// Projectors onto the +1 (outcome 0) and -1 (outcome 1) eigenspaces of
/// sigma_y. Equivalent to measuring each qubit in its sigma_{y_i}
/// eigenbasis and reporting the parity.
inline Povm conditional_x_povm(const PauliString& y, int dense_cap = kDefaultDenseCap) {
  detail::require_locking_alphabet(y);
  const Operator s = pauli_string_matrix(y, dense_cap);
  const Operator id = Operator::Identity(s.rows(), s.cols());
  return Povm({0.5 * (id + s), 0.5 * (id - s)});
}

/// The measurement {d P(v) rho_{E|v}}; requires a maximally mixed average
/// state, otherwise the elements do not sum to the identity.
template <class Label>
Povm pretty_good_povm(const CqState<Label>& s) {
  const Eigen::Index d = s.dim();
  const Operator avg = marginal_e(s).matrix();
  if (max_abs(avg - Operator::Identity(d, d) / static_cast<double>(d)) > tol::kEigen)
    throw DomainError("pretty_good_povm: average state is not maximally mixed");
  std::vector<Operator> elems;
  elems.reserve(s.size());
  for (std::size_t v = 0; v < s.size(); ++v)
    elems.push_back(static_cast<double>(d) * s.prob(v) * s.conditional(v).matrix());
  return Povm(std::move(elems));
}

/// Binary measurement {d P(x|y) rho_{E|x,y}}_x for the locking ensemble with
/// y fixed; with P(x|y) = 1/2 the elements are (id +- sigma_y) / 2.
inline Povm binary_povm_ny(int m, const PauliString& y, int dense_cap = kDefaultDenseCap) {
  detail::require_locking_alphabet(y);
  if (y.size() != m) throw DimensionError("binary_povm_ny: y has the wrong length");
  const Eigen::Index d = Eigen::Index{1} << m;
  const Operator s = pauli_string_matrix(y, dense_cap);
  const Operator id = Operator::Identity(d, d);
  std::vector<Operator> elems;
  for (int x = 0; x < 2; ++x) {
    const Operator rho = (id + (x ? -1.0 : 1.0) * s) / static_cast<double>(d);
    elems.push_back(static_cast<double>(d) * 0.5 * rho);
  }
  return Povm(std::move(elems));
}

/// Reads the y-register of an extended ensemble in its basis, then measures
/// E with conditional_x_povm(y). Outcome index coincides with label index.
inline JointDistribution perfect_joint_measurement(const CcqState& extended, int dense_cap = kDefaultDenseCap) {
  const int m = extended.label(0).y.size();
  const Eigen::Index dy = y_register_dim(m);
  const Eigen::Index de = Eigen::Index{1} << m;
  if (extended.dim() != dy * de)
    throw DimensionError("perfect_joint_measurement expects a state produced by extend_with_y");

  std::vector<Operator> elems;
  elems.reserve(extended.size());
  for (const auto& lab : extended.labels()) {
    const auto cx = conditional_x_povm(lab.y, dense_cap);
    const auto ky = static_cast<Eigen::Index>(lab.y.base3_rank());
    Operator e = Operator::Zero(dy * de, dy * de);
    e.block(ky * de, ky * de, de, de) = cx[static_cast<std::size_t>(lab.x)];
    elems.push_back(std::move(e));
  }
  return measure_cq(Povm(std::move(elems)), extended);
}

/// Bit string r from measuring rho_{E|x,y} qubit-wise in the sigma_{y_i}
/// eigenbases: uniform over {r : parity(r) = x}. No matrices are built.
inline std::vector<std::uint8_t> sample_locking_outcome(int m, int x, const PauliString& y, Rng& rng) {
  if (m < 1 || (x != 0 && x != 1)) throw DomainError("sample_locking_outcome: need m >= 1 and x in {0,1}");
  detail::require_locking_alphabet(y);
  if (y.size() != m) throw DimensionError("sample_locking_outcome: y has the wrong length");
  std::vector<std::uint8_t> r(static_cast<std::size_t>(m));
  int parity = 0;
  for (int i = 0; i + 1 < m; ++i) {
    r[i] = static_cast<std::uint8_t>(random_bit(rng));
    parity ^= r[i];
  }
  r[m - 1] = static_cast<std::uint8_t>(parity ^ x);
  return r;
}

inline int parity(const std::vector<std::uint8_t>& bits) {
  int p = 0;
  for (auto b : bits) p ^= b;
  return p;
}

}  // namespace locklab

#endif  // LOCKLAB_MEASUREMENT_HPP
