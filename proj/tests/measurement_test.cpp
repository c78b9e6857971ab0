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

#include "locklab/measurement.hpp"

#include <map>

#include <gtest/gtest.h>

#include "locklab/accinfo.hpp"
#include "oracles.hpp"

using namespace locklab;

namespace {

Povm computational_basis(Eigen::Index d) {
  std::vector<Operator> e;
  for (Eigen::Index k = 0; k < d; ++k) {
    Operator p = Operator::Zero(d, d);
    p(k, k) = 1.0;
    e.push_back(p);
  }
  return Povm(std::move(e));
}

CqState<int> orthogonal_pair() {
  return CqState<int>({0, 1}, {0.5, 0.5}, {DensityOperator::basis_state(2, 0), DensityOperator::basis_state(2, 1)});
}

CqState<int> identical_pair() {
  const auto a = DensityOperator::maximally_mixed(2);
  return CqState<int>({0, 1}, {0.5, 0.5}, {a, a});
}

}  // namespace

TEST(Povm, validation) {
  EXPECT_NO_THROW(computational_basis(3));
  Operator half = Operator::Identity(2, 2) / 2.0;
  EXPECT_THROW(Povm({half}), DomainError);
  Operator neg = Operator::Zero(2, 2);
  neg.diagonal() << 1.5, -0.5;
  Operator rest = Operator::Zero(2, 2);
  rest.diagonal() << -0.5, 1.5;
  EXPECT_THROW(Povm({neg, rest}), DomainError);
  EXPECT_THROW(Povm({Operator::Identity(2, 2), Operator::Zero(3, 3)}), DimensionError);
}

TEST(ApplyPovm, examples) {
  const auto d = apply_povm(computational_basis(2), DensityOperator::basis_state(2, 0));
  EXPECT_NEAR(d[0], 1.0, 1e-15);
  EXPECT_NEAR(d[1], 0.0, 1e-15);

  // Any POVM on id/d gives tr(M_z)/d.
  Rng rng(2);
  const auto est = optimize_accessible_info(identical_pair(), OptimizerConfig{.restarts = 1, .max_iters = 0});
  const Povm& p = *est.best_povm;
  const auto on_mixed = apply_povm(p, DensityOperator::maximally_mixed(2));
  for (std::size_t z = 0; z < p.size(); ++z) EXPECT_NEAR(on_mixed[z], p[z].trace().real() / 2.0, 1e-12);

  // Pretty-good measurement of the m = 1 ensemble: each element has trace 1/3.
  const auto pgm = pretty_good_povm(locking_state(1));
  const auto u = apply_povm(pgm, DensityOperator::maximally_mixed(2));
  ASSERT_EQ(u.size(), 6u);
  for (double v : u.probs) EXPECT_NEAR(v, 1.0 / 6.0, 1e-12);

  EXPECT_THROW(apply_povm(pgm, DensityOperator::maximally_mixed(4)), DimensionError);
}

TEST(MeasureCq, examples) {
  const auto diag = measure_cq(computational_basis(2), orthogonal_pair());
  EXPECT_NEAR(diag.p(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(diag.p(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(diag.p(1, 1), 0.5, 1e-15);
  EXPECT_NEAR(mutual_information(diag), 1.0, 1e-12);

  const auto prod = measure_cq(computational_basis(2), identical_pair());
  EXPECT_NEAR(mutual_information(prod), 0.0, 1e-12);

  // Labels with y = (3) are identified perfectly by conditional_x_povm((3)).
  const auto s = locking_state(1);
  const auto j = measure_cq(conditional_x_povm({3}), s);
  for (std::size_t v = 0; v < s.size(); ++v) {
    if (s.label(v).y != PauliString({3})) continue;
    const double correct = j.p(static_cast<Eigen::Index>(v), s.label(v).x) / s.prob(v);
    EXPECT_NEAR(correct, 1.0, 1e-12);
  }
}

TEST(Entropy, examples) {
  EXPECT_NEAR(shannon_entropy(std::vector<double>{0.5, 0.5}), 1.0, 1e-15);
  EXPECT_NEAR(shannon_entropy(std::vector<double>{1.0, 0.0}), 0.0, 0.0);
  for (int m = 1; m <= 4; ++m) {
    const std::size_t n = 2 * static_cast<std::size_t>(ipow(3, m));
    EXPECT_NEAR(shannon_entropy(std::vector<double>(n, 1.0 / static_cast<double>(n))), 1.0 + m * std::log2(3.0),
                1e-12);
  }
  EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_THROW(binary_entropy(1.5), DomainError);
  EXPECT_THROW(binary_entropy(-0.1), DomainError);
}

TEST(Entropy, binary_entropy_dominates_linear_lower_bound) {
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    EXPECT_GE(binary_entropy(p), 1.0 - std::abs(2.0 * p - 1.0) - 1e-12) << p;
  }
}

TEST(MutualInformation, examples) {
  JointDistribution indep{RealMatrix::Constant(2, 2, 0.25)};
  EXPECT_NEAR(mutual_information(indep), 0.0, 1e-15);
  JointDistribution corr{RealMatrix::Zero(2, 2)};
  corr.p(0, 0) = corr.p(1, 1) = 0.5;
  EXPECT_NEAR(mutual_information(corr), 1.0, 1e-15);

  const auto s = locking_state(1);
  const double i_pgm = mutual_information(measure_cq(pretty_good_povm(s), s));
  EXPECT_GE(i_pgm, 0.0);
  EXPECT_LE(i_pgm, std::sqrt(2.0 / 3.0));
}

TEST(ConditionalXPovm, examples) {
  const auto p1 = conditional_x_povm({3});
  EXPECT_LE(max_abs(p1[0] - DensityOperator::basis_state(2, 0).matrix()), 1e-15);
  EXPECT_LE(max_abs(p1[1] - DensityOperator::basis_state(2, 1).matrix()), 1e-15);

  // Parity-0 eigenspace of Z (x) Z: |00>, |11>.
  Operator even = Operator::Zero(4, 4);
  even(0, 0) = even(3, 3) = 1.0;
  EXPECT_LE(max_abs(conditional_x_povm({3, 3})[0] - even), 1e-15);

  const auto s = locking_state(2);
  const auto& rho = s.conditional(9 + PauliString({1, 2}).base3_rank());  // x = 1
  ASSERT_EQ(s.label(9 + PauliString({1, 2}).base3_rank()).x, 1);
  const auto out = apply_povm(conditional_x_povm({1, 2}), rho);
  EXPECT_NEAR(out[1], 1.0, 1e-10);

  EXPECT_THROW(conditional_x_povm({0, 1}), DomainError);
}

TEST(ConditionalXPovm, recovers_x_without_error_for_every_y) {
  for (int m = 1; m <= 3; ++m) {
    const auto s = locking_state(m);
    for (const auto& y : locking_pauli_strings(m)) {
      const auto povm = conditional_x_povm(y);
      double err = 0.0;
      for (std::size_t v = 0; v < s.size(); ++v)
        if (s.label(v).y == y) err += apply_povm(povm, s.conditional(v))[1 - s.label(v).x];
      EXPECT_LE(err, 1e-10);
    }
  }
}

TEST(PrettyGoodPovm, examples) {
  const auto pgm = pretty_good_povm(locking_state(1));
  ASSERT_EQ(pgm.size(), 6u);
  for (const auto& e : pgm.elements()) EXPECT_NEAR(e.trace().real(), 1.0 / 3.0, 1e-15);

  const auto two = pretty_good_povm(orthogonal_pair());
  EXPECT_LE(max_abs(two[0] - DensityOperator::basis_state(2, 0).matrix()), 1e-15);
  EXPECT_LE(max_abs(two[1] - DensityOperator::basis_state(2, 1).matrix()), 1e-15);

  for (int m = 1; m <= 3; ++m) {
    const auto p = pretty_good_povm(locking_state(m));
    Operator sum = Operator::Zero(p.dim(), p.dim());
    for (const auto& e : p.elements()) sum += e;
    EXPECT_LE(max_abs(sum - Operator::Identity(p.dim(), p.dim())), 1e-10);
  }
}

TEST(PrettyGoodPovm, requires_maximally_mixed_average) {
  const CqState<int> s({0, 1}, {0.5, 0.5}, {DensityOperator::basis_state(2, 0), DensityOperator::basis_state(2, 0)});
  EXPECT_THROW(pretty_good_povm(s), DomainError);
}

TEST(BinaryPovmNy, examples_and_equivalence) {
  const auto p = binary_povm_ny(1, {3});
  EXPECT_LE(max_abs(p[0] - DensityOperator::basis_state(2, 0).matrix()), 1e-15);
  for (int m = 1; m <= 3; ++m) {
    const auto mixed = apply_povm(binary_povm_ny(m, PauliString(std::vector<Pauli>(m, Pauli::X))),
                                  DensityOperator::maximally_mixed(Eigen::Index{1} << m));
    EXPECT_NEAR(mixed[0], 0.5, 1e-15);
    for (const auto& y : locking_pauli_strings(m)) {
      const auto a = binary_povm_ny(m, y);
      const auto b = conditional_x_povm(y);
      EXPECT_LE(max_abs(a[0] - b[0]), 1e-10);
      EXPECT_LE(max_abs(a[1] - b[1]), 1e-10);
    }
  }
  EXPECT_THROW(binary_povm_ny(2, {3}), DimensionError);
}

TEST(BinaryPovmNy, outcome_gap_is_bloch_coefficient) {
  Rng rng(31);
  for (int m = 1; m <= 3; ++m)
    for (int trial = 0; trial < 50; ++trial) {
      const auto sigma = random_density_operator(Eigen::Index{1} << m, rng);
      for (const auto& y : locking_pauli_strings(m)) {
        const auto out = apply_povm(binary_povm_ny(m, y), sigma);
        const double c = (oracle::pauli_kron([&] {
                            std::vector<int> v;
                            for (int q = 0; q < m; ++q) v.push_back(y.index(q));
                            return v;
                          }()) * sigma.matrix())
                             .trace()
                             .real();
        ASSERT_NEAR(std::abs(out[0] - out[1]), std::abs(c), 1e-9);
      }
    }
}

TEST(PerfectJointMeasurement, reaches_label_entropy) {
  // Frozen from the uniform-distribution entropy 1 + m log2 3.
  const double expected[] = {2.584962500721156, 4.169925001442312};
  for (int m = 1; m <= 2; ++m) {
    const auto ext = extend_with_y(locking_state(m));
    const auto j = perfect_joint_measurement(ext);
    EXPECT_NEAR(mutual_information(j), expected[m - 1], 1e-9);
    for (Eigen::Index v = 0; v < j.p.rows(); ++v) EXPECT_NEAR(j.p(v, v), ext.prob(static_cast<std::size_t>(v)), 1e-12);
  }
  EXPECT_THROW(perfect_joint_measurement(locking_state(1)), DimensionError);
}

TEST(SampleLockingOutcome, examples) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_locking_outcome(1, 0, {3}, rng), (std::vector<std::uint8_t>{0}));

  std::map<std::vector<std::uint8_t>, int> counts;
  const int n = 100000;
  for (int i = 0; i < n; ++i) counts[sample_locking_outcome(2, 1, {1, 2}, rng)]++;
  ASSERT_EQ(counts.size(), 2u);
  const double tol = oracle::three_sigma(0.5, n);
  const std::vector<std::uint8_t> a{0, 1}, b{1, 0};
  EXPECT_NEAR(counts[a] / double(n), 0.5, tol);
  EXPECT_NEAR(counts[b] / double(n), 0.5, tol);
}

TEST(SampleLockingOutcome, parity_always_matches_x) {
  Rng rng(9);
  for (int i = 0; i < 100000; ++i) {
    const int m = 1 + static_cast<int>(uniform_below(rng, 30));
    const int x = random_bit(rng);
    const auto y = PauliString(std::vector<Pauli>(m, Pauli::Y));
    ASSERT_EQ(parity(sample_locking_outcome(m, x, y, rng)), x);
  }
}

TEST(SampleLockingOutcome, matches_dense_eigenbasis_statistics) {
  // Exact distribution of the product-eigenbasis measurement on rho_{E|x,y}.
  const auto s = locking_state(2);
  Rng rng(4);
  const int n = 60000;
  for (std::size_t v : {0u, 5u, 13u}) {
    const auto& lab = s.label(v);
    const auto basis = eigenbasis_povm(lab.y);
    const auto exact = apply_povm(basis, s.conditional(v));
    std::vector<double> freq(4, 0.0);
    for (int i = 0; i < n; ++i) {
      const auto r = sample_locking_outcome(2, lab.x, lab.y, rng);
      freq[2 * r[0] + r[1]] += 1.0 / n;
    }
    for (int z = 0; z < 4; ++z) EXPECT_NEAR(freq[z], exact[z], oracle::three_sigma(0.5, n) + 1e-12);
  }
}
