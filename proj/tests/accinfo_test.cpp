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

#include "locklab/accinfo.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace locklab;

namespace {

CqState<int> orthogonal_pair() {
  return CqState<int>({0, 1}, {0.5, 0.5}, {DensityOperator::basis_state(2, 0), DensityOperator::basis_state(2, 1)});
}

CqState<int> identical_pair() {
  const auto a = DensityOperator::maximally_mixed(2);
  return CqState<int>({0, 1}, {0.5, 0.5}, {a, a});
}

Povm random_povm(Eigen::Index d, int k, Rng& rng) {
  return detail::rank_one_povm(detail::RankOneInfoObjective::normalize(detail::random_frame(d, k, rng)));
}

OptimizerConfig quick(int restarts, std::uint64_t seed = 42) {
  OptimizerConfig c;
  c.restarts = restarts;
  c.seed = seed;
  return c;
}

const double kSqrtTwoThirds = std::sqrt(2.0 / 3.0);

}  // namespace

TEST(MeasuredInfo, examples) {
  const auto s = locking_state(1);
  EXPECT_LE(measured_info(s, conditional_x_povm({3})), kSqrtTwoThirds);
  // Exact value for the sigma_3 measurement on the six-state ensemble: 1/3 bit.
  EXPECT_NEAR(measured_info(s, conditional_x_povm({3})), 1.0 / 3.0, 1e-12);

  std::vector<Operator> basis{DensityOperator::basis_state(2, 0).matrix(), DensityOperator::basis_state(2, 1).matrix()};
  EXPECT_NEAR(measured_info(orthogonal_pair(), Povm(basis)), 1.0, 1e-12);
  Rng rng(1);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(measured_info(identical_pair(), random_povm(2, 3, rng)), 0.0, 1e-12);
}

TEST(Optimizer, distinguishes_orthogonal_states) {
  const auto est = optimize_accessible_info(orthogonal_pair(), quick(20));
  EXPECT_NEAR(est.best_value, 1.0, 1e-4);
  EXPECT_EQ(est.restarts_used, 20);
  ASSERT_TRUE(est.best_povm.has_value());
  EXPECT_NEAR(measured_info(orthogonal_pair(), *est.best_povm), est.best_value, 1e-9);
}

TEST(Optimizer, identical_states_carry_no_information) {
  EXPECT_NEAR(optimize_accessible_info(identical_pair(), quick(10)).best_value, 0.0, 1e-12);
}

TEST(Optimizer, respects_locking_bound_single_qubit) {
  const auto est = optimize_locking_accessible_info(1, quick(200));
  ASSERT_TRUE(est.upper_bound.has_value());
  EXPECT_NEAR(*est.upper_bound, 0.816497, 1e-6);
  EXPECT_LE(est.best_value, *est.upper_bound + 1e-6);
  const auto s = locking_state(1);
  EXPECT_GE(est.best_value, measured_info(s, pretty_good_povm(s)) - 1e-9);
}

TEST(Optimizer, respects_locking_bound_two_qubits_short_run) {
  const auto est = optimize_locking_accessible_info(2, quick(20));
  EXPECT_LE(est.best_value, locking_upper_bound(2) + 1e-6);
  EXPECT_GE(est.best_value, measured_info(locking_state(2), conditional_x_povm({3, 3})) - 1e-9);
}

TEST(Optimizer, dominates_every_seed) {
  Rng rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<DensityOperator> conds;
    for (int v = 0; v < 3; ++v) conds.push_back(random_density_operator(3, rng));
    const CqState<int> s({0, 1, 2}, {0.2, 0.3, 0.5}, conds);
    std::vector<Povm> seeds{random_povm(3, 4, rng), random_povm(3, 7, rng)};
    const auto est = optimize_accessible_info(s, quick(5, 100 + trial), seeds);
    for (const auto& p : seeds) EXPECT_LE(measured_info(s, p), est.best_value + 1e-9);
    EXPECT_EQ(est.restarts_used, 7);
  }
}

TEST(Optimizer, deterministic_across_worker_counts) {
  auto cfg = quick(12, 5);
  cfg.workers = 1;
  const auto a = optimize_locking_accessible_info(1, cfg);
  cfg.workers = 3;
  const auto b = optimize_locking_accessible_info(1, cfg);
  const auto c = optimize_locking_accessible_info(1, cfg);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(b.best_value, c.best_value);
}

TEST(Optimizer, rejects_bad_configs) {
  auto cfg = quick(0);
  EXPECT_THROW(optimize_accessible_info(orthogonal_pair(), cfg), DomainError);
  cfg = quick(1);
  cfg.outcomes_max = 5;
  EXPECT_THROW(optimize_accessible_info(orthogonal_pair(), cfg), DomainError);
  cfg = quick(1);
  cfg.outcomes_min = 1;
  EXPECT_THROW(optimize_accessible_info(orthogonal_pair(), cfg), DomainError);
  const auto big = DensityOperator::maximally_mixed(128);
  EXPECT_THROW(optimize_accessible_info(CqState<int>({0}, {1.0}, {big}), quick(1)), CapacityError);
}

TEST(Optimizer, revealing_y_never_decreases_information) {
  const auto s = locking_state(1);
  const auto ext = extend_with_y(s);
  const auto without = optimize_accessible_info(s, quick(20));
  const auto with = optimize_accessible_info(ext, quick(20));
  EXPECT_GE(with.best_value, without.best_value - 1e-4);
}

TEST(LockingUpperBound, values) {
  EXPECT_NEAR(locking_upper_bound(1), 0.816497, 1e-6);
  EXPECT_NEAR(locking_upper_bound(2), 0.666667, 1e-6);
  EXPECT_NEAR(locking_upper_bound(3), 0.544331, 1e-6);
  EXPECT_THROW(locking_upper_bound(0), DomainError);
}

TEST(MinOutputEntropy, examples) {
  const auto cfg = quick(50);
  EXPECT_GE(min_output_entropy(locking_state(1), cfg), 2.584963 - 0.816497 - 1e-6);
  EXPECT_GE(min_output_entropy(locking_state(2), cfg), 4.169925 - 0.666667 - 1e-6);

  std::vector<DensityOperator> conds;
  for (int k = 0; k < 4; ++k) conds.push_back(DensityOperator::basis_state(4, k));
  const CqState<int> basis({0, 1, 2, 3}, {0.25, 0.25, 0.25, 0.25}, conds);
  EXPECT_NEAR(min_output_entropy(basis, cfg), 0.0, 1e-9);

  const CqState<int> skewed({0, 1}, {0.5, 0.5},
                            {DensityOperator::basis_state(2, 0), DensityOperator::basis_state(2, 0)});
  EXPECT_THROW(min_output_entropy(skewed, cfg), DomainError);
}

TEST(MinOutputEntropy, lower_bounds_conditional_entropy_of_random_measurements) {
  Rng rng(404);
  for (int m = 1; m <= 2; ++m) {
    const auto s = locking_state(m);
    const double floor = min_output_entropy(s, quick(50));
    const Eigen::Index d = s.dim();
    for (int trial = 0; trial < 20; ++trial) {
      const int k = static_cast<int>(d + uniform_below(rng, static_cast<std::uint64_t>(d * d - d + 1)));
      const auto p = random_povm(d, k, rng);
      EXPECT_GE(conditional_entropy(measure_cq(p, s)), floor - 1e-6);
    }
  }
}

TEST(ProofChain, maximally_mixed_state) {
  for (int m = 1; m <= 3; ++m) {
    const auto r = proof_chain_check(m, DensityOperator::maximally_mixed(Eigen::Index{1} << m));
    EXPECT_TRUE(r.passed());
    EXPECT_NEAR(r.mean_abs_coefficient, 0.0, 1e-15);
    EXPECT_NEAR(r.mean_binary_entropy, 1.0, 1e-12);
    EXPECT_NEAR(r.slack_b(), 0.0, 1e-12);
  }
}

TEST(ProofChain, computational_basis_state) {
  // Bloch vector (0, 0, 1): sum over y in {1,2,3} of |tr(sigma_y sigma)| = 1.
  const auto r = proof_chain_check(1, DensityOperator::basis_state(2, 0));
  EXPECT_NEAR(r.mean_abs_coefficient, 1.0 / 3.0, 1e-15);
  EXPECT_LE(r.mean_abs_coefficient, 0.8165);
  EXPECT_TRUE(r.passed());
}

TEST(ProofChain, holds_on_random_pure_states) {
  Rng rng(2024);
  for (int m = 1; m <= 3; ++m)
    for (int trial = 0; trial < 100; ++trial) {
      const auto r = proof_chain_check(m, random_pure_state(Eigen::Index{1} << m, rng));
      ASSERT_TRUE(r.passed()) << "m=" << m << " trial=" << trial;
      // The entropy decomposition is exact.
      EXPECT_NEAR(r.entropy_full, r.entropy_decomposed, 1e-9);
    }
}

TEST(ProofChain, rejects_bad_inputs) {
  EXPECT_THROW(proof_chain_check(4, DensityOperator::maximally_mixed(16)), DomainError);
  EXPECT_THROW(proof_chain_check(2, DensityOperator::maximally_mixed(2)), DimensionError);
}

TEST(LockingGap, examples) {
  const auto g1 = locking_gap(1);
  EXPECT_NEAR(g1.delta_lower, 1.768466, 1e-6);
  EXPECT_GT(g1.delta_lower, std::log2(3.0));
  const auto g2 = locking_gap(2);
  EXPECT_NEAR(g2.delta_lower, 3.503258, 1e-6);
  EXPECT_GT(g2.delta_lower, 2 * std::log2(3.0));
  const auto g4 = locking_gap(4);
  EXPECT_NEAR(g4.delta_lower, 1 + 4 * std::log2(3.0) - 4.0 / 9.0, 1e-12);
  EXPECT_GT(g4.delta_lower, 6.340);

  const auto with_est = locking_gap(1, 1.0 / 3.0);
  EXPECT_EQ(with_est.delta_lower, g1.delta_lower);
  EXPECT_NEAR(*with_est.delta_best_found, 1 + std::log2(3.0) - 1.0 / 3.0, 1e-12);

  for (int m = 1; m <= 64; ++m) EXPECT_TRUE(locking_gap(m).exceeds_y_size()) << m;
}

TEST(EpsilonOfN, examples) {
  EXPECT_EQ(epsilon_of_n(2), 1.0);
  EXPECT_NEAR(epsilon_of_n(10), 0.367879, 1e-6);
  EXPECT_THROW(epsilon_of_n(1), DomainError);
  EXPECT_EQ(key_length_for(10), 16);
  EXPECT_NEAR(locking_upper_bound(10), 0.131687, 1e-6);
  EXPECT_NEAR(epsilon_of_n(16), 0.173774, 1e-6);
  for (const auto& row : epsilon_consistency(1, 64)) EXPECT_TRUE(row.holds()) << row.m;
}
