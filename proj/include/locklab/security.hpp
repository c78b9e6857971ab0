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

// Trace distance, fidelity and the trace-distance notion of key security.

#ifndef LOCKLAB_SECURITY_HPP
#define LOCKLAB_SECURITY_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "locklab/accinfo.hpp"
#include "locklab/core.hpp"
#include "locklab/states.hpp"

namespace locklab {

/// Sum of absolute eigenvalues of a Hermitian operator.
inline double trace_norm(const Operator& herm) {
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (herm + herm.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

inline double trace_distance(const DensityOperator& rho, const DensityOperator& tau) {
  if (rho.dim() != tau.dim()) throw DimensionError("trace_distance: dimension mismatch");
  return std::clamp(0.5 * trace_norm(rho.matrix() - tau.matrix()), 0.0, 1.0);
}

namespace detail {
inline Operator psd_sqrt(const Operator& a) {
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (a + a.adjoint()));
  const Eigen::VectorXd s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}
}  // namespace detail

/// Square-root fidelity tr|sqrt(rho) sqrt(tau)| = tr sqrt(sqrt(rho) tau sqrt(rho)).
inline double fidelity(const DensityOperator& rho, const DensityOperator& tau) {
  if (rho.dim() != tau.dim()) throw DimensionError("fidelity: dimension mismatch");
  const Operator sr = detail::psd_sqrt(rho.matrix());
  const Operator inner = sr * tau.matrix() * sr;
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  return std::clamp(es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum(), 0.0, 1.0);
}

/// Fidelity against a pure state: sqrt(<psi|rho|psi>).
inline double fidelity(const DensityOperator& rho, const PureStateVector& psi) {
  if (rho.dim() != psi.dim()) throw DimensionError("fidelity: dimension mismatch");
  const double overlap = (psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes())(0, 0).real();
  return std::clamp(std::sqrt(std::max(0.0, overlap)), 0.0, 1.0);
}

struct FuchsVanDeGraafReport {
  double distance = 0.0;
  double bound = 0.0;  // sqrt(1 - F^2)
  bool holds() const { return distance <= bound + tol::kEigen; }
};

inline FuchsVanDeGraafReport fuchs_van_de_graaf_check(const DensityOperator& rho, const DensityOperator& tau) {
  const double f = fidelity(rho, tau);
  return {trace_distance(rho, tau), std::sqrt(std::max(0.0, 1.0 - f * f))};
}

/// || rho_SE - rho_U (x) rho_E ||, computed one classical block at a time:
/// sum_v 1/2 tr| P(v) rho_{E|v} - rho_E / |S| |.
template <class Label>
double epsilon_secure_distance(const CqState<Label>& s) {
  const Operator rho_e = marginal_e(s).matrix();
  const double inv_size = 1.0 / static_cast<double>(s.size());
  double total = 0.0;
  for (std::size_t v = 0; v < s.size(); ++v)
    total += 0.5 * trace_norm(s.prob(v) * s.conditional(v).matrix() - inv_size * rho_e);
  return std::clamp(total, 0.0, 1.0);
}

/// |Phi+>^{(x)n} on A = (A_1..A_n), B = (B_1..B_n), amplitude index a 2^n + b.
inline PureStateVector bell_pairs(int n) {
  const Eigen::Index half = Eigen::Index{1} << n;
  StateVector v = StateVector::Zero(half * half);
  for (Eigen::Index s = 0; s < half; ++s) v(s * half + s) = 1.0;
  v /= std::sqrt(static_cast<double>(half));
  return PureStateVector(std::move(v));
}

/// (1 - p) |Phi+><Phi+|^{(x)n} + p tau with tau a random mixed state.
inline DensityOperator perturbed_bell_state(int n, double p, Rng& rng) {
  const Operator bell = bell_pairs(n).projector();
  const auto tau = random_density_operator(bell.rows(), rng);
  return DensityOperator((1.0 - p) * bell + p * tau.matrix());
}

struct BellExperimentResult {
  int n = 0;
  double fidelity = 0.0;
  double epsilon_bound = 0.0;          // sqrt(1 - F^2)
  double measured_key_distance = 0.0;  // sigma_E = E-marginal after measurement
  double kappa_key_distance = 0.0;     // sigma_E = optimal product partner |kappa>
  bool passed() const { return measured_key_distance <= epsilon_bound + tol::kEigen; }
};

namespace detail {
/// Distance between the post-measurement ccq-state with blocks
/// |e_{a,b}><e_{a,b}| and rho_UU (x) sigma_e.
inline double measured_key_distance(const std::vector<StateVector>& blocks, Eigen::Index half,
                                    const Operator& sigma_e) {
  double total = 0.0;
  const double w = 1.0 / static_cast<double>(half);
  for (Eigen::Index a = 0; a < half; ++a)
    for (Eigen::Index b = 0; b < half; ++b) {
      const StateVector& e = blocks[static_cast<std::size_t>(a * half + b)];
      Operator diff = e * e.adjoint();
      if (a == b) diff -= w * sigma_e;
      total += 0.5 * trace_norm(diff);
    }
  return total;
}
}  // namespace detail

/// Measures both halves of a purification of rho_AB in the computational
/// basis and compares the resulting key/environment state with perfectly
/// correlated uniform keys independent of the environment.
inline BellExperimentResult bell_key_experiment(int n, const DensityOperator& rho_ab) {
  if (n < 1 || n > 2) throw DomainError("bell_key_experiment supports n in {1,2}");
  const Eigen::Index half = Eigen::Index{1} << n;
  const Eigen::Index dab = half * half;
  if (rho_ab.dim() != dab) throw DimensionError("bell_key_experiment: rho_AB must have dimension 4^n");

  BellExperimentResult res;
  res.n = n;
  const auto target = bell_pairs(n);
  res.fidelity = fidelity(rho_ab, target);
  res.epsilon_bound = std::sqrt(std::max(0.0, 1.0 - res.fidelity * res.fidelity));

  // Theta on AB (x) E with E the right factor, dim(E) = dim(AB).
  const StateVector theta = purify(rho_ab).amplitudes();
  const Eigen::Index de = dab;
  std::vector<StateVector> blocks(static_cast<std::size_t>(dab));
  Operator sigma_e = Operator::Zero(de, de);
  for (Eigen::Index ab = 0; ab < dab; ++ab) {
    StateVector e(de);
    for (Eigen::Index k = 0; k < de; ++k) e(k) = theta(ab * de + k);
    sigma_e += e * e.adjoint();
    blocks[static_cast<std::size_t>(ab)] = std::move(e);
  }
  res.measured_key_distance = detail::measured_key_distance(blocks, half, sigma_e);

  StateVector phi = StateVector::Zero(de);
  for (Eigen::Index ab = 0; ab < dab; ++ab) phi += std::conj(target.amplitudes()(ab)) * blocks[static_cast<std::size_t>(ab)];
  if (phi.norm() > 1e-300) {
    const StateVector kappa = phi / phi.norm();
    res.kappa_key_distance = detail::measured_key_distance(blocks, half, kappa * kappa.adjoint());
  } else {
    res.kappa_key_distance = 1.0;
  }
  return res;
}

struct SecurityReport {
  int m = 0;
  double key_entropy_bits = 0.0;
  double iacc_upper = 0.0;
  std::optional<double> iacc_best_found;
  double epsilon_distance = 0.0;
  std::string verdict_text;
};

inline constexpr int kMaxOptimizerM = 2;
inline constexpr int kMaxBoundOnlyM = 3;

inline SecurityReport security_report(int m, const OptimizerConfig& cfg, bool bound_only = false) {
  if (m < 1) throw DomainError("security_report: m must be >= 1");
  if (!bound_only && m > kMaxOptimizerM)
    throw CapacityError("security_report: optimizer leg supports m <= 2; use bound-only mode");
  if (m > kMaxBoundOnlyM) throw CapacityError("security_report: m <= 3 required");

  SecurityReport r;
  r.m = m;
  r.key_entropy_bits = locking_key_entropy(m);
  r.iacc_upper = locking_upper_bound(m);
  if (!bound_only) r.iacc_best_found = optimize_locking_accessible_info(m, cfg).best_value;
  r.epsilon_distance = epsilon_secure_distance(locking_state(m));

  char buf[320];
  std::snprintf(buf, sizeof buf,
                "accessible-information criterion holds: I_acc <= %.6f bits with H(S) = %.6f bits; "
                "trace-distance security fails: distance %.6f, so the key is not eps-secure for any eps < %.6f",
                r.iacc_upper, r.key_entropy_bits, r.epsilon_distance, r.epsilon_distance);
  r.verdict_text = buf;
  return r;
}

}  // namespace locklab

#endif  // LOCKLAB_SECURITY_HPP
