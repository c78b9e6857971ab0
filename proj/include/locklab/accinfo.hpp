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

// Accessible information of classical-quantum states.
//
// The search in optimize_accessible_info is a lower-bound oracle: it runs
// random-restart coordinate ascent over rank-one POVMs and reports the best
// mutual information it found. Analytic results (locking_upper_bound) are the
// only quantities that are bounds in the strict sense.

#ifndef LOCKLAB_ACCINFO_HPP
#define LOCKLAB_ACCINFO_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "locklab/core.hpp"
#include "locklab/measurement.hpp"
#include "locklab/pauli.hpp"
#include "locklab/states.hpp"

namespace locklab {

inline const double kLog2Of3 = std::log2(3.0);

struct OptimizerConfig {
  int restarts = 200;
  int outcomes_min = 0;  // 0 selects d
  int outcomes_max = 0;  // 0 selects d^2
  int max_iters = 60;    // coordinate sweeps per restart
  double step_tolerance = 1e-3;
  std::uint64_t seed = 42;
  int workers = 0;  // 0 selects std::thread::hardware_concurrency()

  int k_min(Eigen::Index d) const { return outcomes_min > 0 ? outcomes_min : static_cast<int>(d); }
  int k_max(Eigen::Index d) const { return outcomes_max > 0 ? outcomes_max : static_cast<int>(d * d); }

  void validate(Eigen::Index d) const {
    if (restarts < 1) throw DomainError("optimizer: restarts must be >= 1");
    if (k_min(d) < 2) throw DomainError("optimizer: outcomes_min must be >= 2");
    if (k_max(d) > d * d) throw DomainError("optimizer: outcomes_max must be <= d^2");
    if (k_min(d) > k_max(d)) throw DomainError("optimizer: empty outcome range");
    if (max_iters < 0 || !(step_tolerance > 0.0)) throw DomainError("optimizer: bad iteration settings");
  }
};

inline constexpr Eigen::Index kMaxOptimizerDim = 64;

struct AccInfoEstimate {
  double best_value = 0.0;  // best-found lower bound, bits
  std::optional<Povm> best_povm;
  std::optional<double> upper_bound;
  int restarts_used = 0;
};

template <class Label>
double measured_info(const CqState<Label>& s, const Povm& p) {
  return mutual_information(measure_cq(p, s));
}

namespace detail {

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index is
/// processed exactly once; callers merge per-index results in index order.
inline void run_indexed(int n, int workers, const std::function<void(int)>& fn) {
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

/// Greedy coordinate ascent over the real and imaginary parts of `params`.
/// The step halves after every sweep without improvement.
template <class Objective>
double coordinate_ascent(Operator& params, const Objective& objective, double step, double step_tolerance,
                         int max_sweeps) {
  double best = objective(params);
  for (int sweep = 0; sweep < max_sweeps && step >= step_tolerance; ++sweep) {
    bool improved = false;
    for (Eigen::Index c = 0; c < params.cols(); ++c) {
      for (Eigen::Index r = 0; r < params.rows(); ++r) {
        for (const Complex dir : {Complex(1, 0), Complex(0, 1)}) {
          for (const double sign : {1.0, -1.0}) {
            const Complex old = params(r, c);
            params(r, c) = old + sign * step * dir;
            const double v = objective(params);
            if (v > best + 1e-14) {
              best = v;
              improved = true;
              break;
            }
            params(r, c) = old;
          }
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

/// I(V;Z) for the rank-one POVM {S^-1/2 w_z w_z^dag S^-1/2}, S = sum w w^dag,
/// where w_z are the columns of W.
class RankOneInfoObjective {
 public:
  template <class Label>
  explicit RankOneInfoObjective(const CqState<Label>& s) {
    weighted_.reserve(s.size());
    for (std::size_t v = 0; v < s.size(); ++v) weighted_.push_back(s.prob(v) * s.conditional(v).matrix());
    label_entropy_ = shannon_entropy(s.probs());
  }

  /// Columns u_z = S^{-1/2} w_z; empty when S is numerically singular.
  static Operator normalize(const Operator& w) {
    const Operator s = w * w.adjoint();
    Eigen::SelfAdjointEigenSolver<Operator> es(s);
    const auto& lam = es.eigenvalues();
    if (lam.minCoeff() <= 1e-10 * std::max(1.0, lam.maxCoeff())) return {};
    const Eigen::VectorXd inv_sqrt = lam.cwiseSqrt().cwiseInverse();
    const Operator t = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
    return t * w;
  }

  double operator()(const Operator& w) const {
    const Operator u = normalize(w);
    if (u.size() == 0) return -std::numeric_limits<double>::infinity();
    return info_of_normalized(u);
  }

  double info_of_normalized(const Operator& u) const {
    RealMatrix joint(static_cast<Eigen::Index>(weighted_.size()), u.cols());
    for (std::size_t v = 0; v < weighted_.size(); ++v) {
      const Operator b = weighted_[v] * u;
      joint.row(static_cast<Eigen::Index>(v)) = u.conjugate().cwiseProduct(b).colwise().sum().real();
    }
    joint = joint.cwiseMax(0.0);
    const Eigen::RowVectorXd pz = joint.colwise().sum();
    const double hz = entropy_of(pz.data(), static_cast<std::size_t>(pz.size()));
    const double hvz = entropy_of(joint.data(), static_cast<std::size_t>(joint.size()));
    return std::max(0.0, label_entropy_ + hz - hvz);
  }

 private:
  std::vector<Operator> weighted_;
  double label_entropy_ = 0.0;
};

inline Povm rank_one_povm(const Operator& u) {
  std::vector<Operator> elems;
  elems.reserve(static_cast<std::size_t>(u.cols()));
  for (Eigen::Index z = 0; z < u.cols(); ++z) elems.push_back(u.col(z) * u.col(z).adjoint());
  return Povm(std::move(elems));
}

/// Columns sqrt(lambda) v over the eigen-decomposition of every element: a
/// rank-one refinement of `p` (never less informative than p itself).
inline Operator rank_one_refinement(const Povm& p) {
  std::vector<StateVector> cols;
  for (const auto& e : p.elements()) {
    Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (e + e.adjoint()));
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double lam = es.eigenvalues()(i);
      if (lam > 1e-12) cols.push_back(std::sqrt(lam) * es.eigenvectors().col(i));
    }
  }
  Operator w(p.dim(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t z = 0; z < cols.size(); ++z) w.col(static_cast<Eigen::Index>(z)) = cols[z];
  return w;
}

inline Operator random_frame(Eigen::Index d, int k, Rng& rng) {
  Operator w(d, k);
  for (Eigen::Index c = 0; c < k; ++c)
    for (Eigen::Index r = 0; r < d; ++r) w(r, c) = complex_normal(rng);
  return w;
}

inline double rms_entry(const Operator& w) {
  return w.size() == 0 ? 1.0 : w.norm() / std::sqrt(static_cast<double>(w.size()));
}

}  // namespace detail

/// Random-restart search for the accessible information of `s`. Each seed
/// POVM contributes its own value and a refined restart started from its
/// rank-one decomposition; random restart i uses seed cfg.seed + i.
/// Deterministic for fixed cfg regardless of worker count.
template <class Label>
AccInfoEstimate optimize_accessible_info(const CqState<Label>& s, const OptimizerConfig& cfg,
                                         std::span<const Povm> seeds = {}) {
  const Eigen::Index d = s.dim();
  if (d > kMaxOptimizerDim)
    throw CapacityError("optimize_accessible_info: dimension " + std::to_string(d) + " too large for dense search");
  cfg.validate(d);
  for (const auto& p : seeds)
    if (p.dim() != d) throw DimensionError("seed POVM dimension mismatch");

  const detail::RankOneInfoObjective objective(s);
  const int n_seeds = static_cast<int>(seeds.size());
  const int total = n_seeds + cfg.restarts;

  struct Result {
    double value = -1.0;
    Operator frame;  // normalized rank-one columns
    bool from_seed_itself = false;
  };
  std::vector<Result> results(static_cast<std::size_t>(total));

  detail::run_indexed(total, cfg.workers, [&](int i) {
    Result& res = results[static_cast<std::size_t>(i)];
    Operator w;
    if (i < n_seeds) {
      const Povm& seed = seeds[static_cast<std::size_t>(i)];
      res.value = measured_info(s, seed);
      res.from_seed_itself = true;
      w = detail::rank_one_refinement(seed);
    } else {
      Rng rng(cfg.seed + static_cast<std::uint64_t>(i - n_seeds));
      const int k = cfg.k_min(d) + static_cast<int>(uniform_below(
                                       rng, static_cast<std::uint64_t>(cfg.k_max(d) - cfg.k_min(d) + 1)));
      w = detail::random_frame(d, k, rng);
    }
    const double step0 = 0.25 * detail::rms_entry(w);
    const double v = detail::coordinate_ascent(w, objective, step0, cfg.step_tolerance * detail::rms_entry(w),
                                               cfg.max_iters);
    if (v > res.value) {
      const Operator u = detail::RankOneInfoObjective::normalize(w);
      if (u.size() != 0) {
        res.value = objective.info_of_normalized(u);
        res.frame = u;
        res.from_seed_itself = false;
      }
    }
  });

  int best = 0;
  for (int i = 1; i < total; ++i)
    if (results[static_cast<std::size_t>(i)].value > results[static_cast<std::size_t>(best)].value) best = i;

  AccInfoEstimate est;
  const Result& r = results[static_cast<std::size_t>(best)];
  est.best_value = std::max(0.0, r.value);
  est.best_povm = r.from_seed_itself ? seeds[static_cast<std::size_t>(best)] : detail::rank_one_povm(r.frame);
  est.restarts_used = total;
  return est;
}

/// Analytic bound (2/3)^{m/2} on the accessible information of the
/// locking ensemble.
inline double locking_upper_bound(int m) {
  if (m < 1) throw DomainError("locking_upper_bound: m must be >= 1");
  return std::pow(2.0 / 3.0, 0.5 * m);
}

/// Product-basis measurement {[r_1]_{y_1} (x) ... (x) [r_m]_{y_m}}_r.
inline Povm eigenbasis_povm(const PauliString& y) {
  const int m = y.size();
  std::vector<Operator> elems;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << m); ++r) {
    Operator prod = Operator::Identity(1, 1);
    for (int i = 0; i < m; ++i)
      prod = detail::kron(prod, detail::eigenprojector(y[i], static_cast<int>((r >> (m - 1 - i)) & 1)));
    elems.push_back(std::move(prod));
  }
  return Povm(std::move(elems));
}

/// Warm starts for the locking ensemble: the pretty-good measurement, every
/// conditional_x_povm(y) and every product eigenbasis measurement.
inline std::vector<Povm> locking_seed_povms(int m) {
  std::vector<Povm> seeds;
  seeds.push_back(pretty_good_povm(locking_state(m)));
  for (const auto& y : locking_pauli_strings(m)) {
    seeds.push_back(conditional_x_povm(y));
    seeds.push_back(eigenbasis_povm(y));
  }
  return seeds;
}

inline AccInfoEstimate optimize_locking_accessible_info(int m, const OptimizerConfig& cfg) {
  const auto seeds = locking_seed_povms(m);
  auto est = optimize_accessible_info(locking_state(m), cfg, std::span<const Povm>(seeds));
  est.upper_bound = locking_upper_bound(m);
  return est;
}

/// min over pure sigma of H(N[sigma]) with N the pretty-good measurement of s.
/// Pure states suffice: the outcome entropy is concave in sigma.
template <class Label>
double min_output_entropy(const CqState<Label>& s, const OptimizerConfig& cfg) {
  const Povm n = pretty_good_povm(s);  // throws unless the average state is maximally mixed
  const Eigen::Index d = s.dim();
  if (d > kMaxOptimizerDim) throw CapacityError("min_output_entropy: dimension too large for dense search");
  if (cfg.restarts < 1) throw DomainError("optimizer: restarts must be >= 1");

  const auto neg_entropy = [&n](const Operator& psi) {
    const double norm2 = psi.squaredNorm();
    if (norm2 <= 1e-300) return -std::numeric_limits<double>::infinity();
    std::vector<double> probs;
    probs.reserve(n.size());
    for (const auto& e : n.elements())
      probs.push_back(std::max(0.0, (psi.adjoint() * e * psi)(0, 0).real() / norm2));
    return -shannon_entropy(probs);
  };

  // Seeds: eigenvectors of every POVM element.
  std::vector<StateVector> starts;
  for (const auto& e : n.elements()) {
    Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (e + e.adjoint()));
    for (Eigen::Index i = 0; i < d; ++i)
      if (es.eigenvalues()(i) > 1e-12) starts.push_back(es.eigenvectors().col(i));
  }
  const int n_seeds = static_cast<int>(starts.size());
  const int total = n_seeds + cfg.restarts;
  std::vector<double> values(static_cast<std::size_t>(total), std::numeric_limits<double>::infinity());

  detail::run_indexed(total, cfg.workers, [&](int i) {
    Operator psi;
    if (i < n_seeds) {
      psi = starts[static_cast<std::size_t>(i)];
    } else {
      Rng rng(cfg.seed + static_cast<std::uint64_t>(i - n_seeds));
      psi = random_pure_vector(d, rng);
    }
    const double step0 = 0.25 / std::sqrt(static_cast<double>(d));
    const double best = detail::coordinate_ascent(psi, neg_entropy, step0, cfg.step_tolerance * step0 * 4.0,
                                                  cfg.max_iters);
    values[static_cast<std::size_t>(i)] = -best;
  });
  return *std::min_element(values.begin(), values.end());
}

struct ProofChainReport {
  int m = 0;
  double entropy_full = 0.0;        // H(N[sigma])
  double entropy_decomposed = 0.0;  // H(Y) + E_y H(N_y[sigma])
  double mean_binary_entropy = 0.0; // E_y H(N_y[sigma])
  double mean_abs_coefficient = 0.0;  // (1/|Y|) sum_y |tr(sigma_y sigma)|
  double cauchy_schwarz_middle = 0.0; // |Y|^{-1/2} sqrt(sum_y tr(sigma_y sigma)^2)
  double sum_sq_all = 0.0;            // sum over {0..3}^m of tr(sigma_y sigma)^2

  double deviation_a() const { return std::abs(entropy_full - entropy_decomposed); }
  double slack_b() const { return mean_binary_entropy - (1.0 - mean_abs_coefficient); }
  double slack_c() const { return locking_upper_bound(m) - mean_abs_coefficient; }
  double slack_d() const { return std::ldexp(1.0, m) - sum_sq_all; }

  bool passed() const {
    return deviation_a() <= tol::kEigen && slack_b() >= -tol::kEigen &&
           slack_c() >= -tol::kEigen && slack_d() >= -tol::kEigen &&
           cauchy_schwarz_middle <= locking_upper_bound(m) + tol::kEigen &&
           mean_abs_coefficient <= cauchy_schwarz_middle + tol::kEigen;
  }
};

/// Evaluates each step of the entropy chain behind the locking bound for a
/// concrete state sigma on m qubits.
inline ProofChainReport proof_chain_check(int m, const DensityOperator& sigma) {
  if (m < 1 || m > 3) throw DomainError("proof_chain_check supports m in {1,2,3}");
  if (sigma.dim() != (Eigen::Index{1} << m)) throw DimensionError("proof_chain_check: sigma has the wrong dimension");
  ProofChainReport r;
  r.m = m;

  const auto s = locking_state(m);
  r.entropy_full = shannon_entropy(apply_povm(pretty_good_povm(s), sigma));

  const auto ys = locking_pauli_strings(m);
  const auto bloch = bloch_decompose(sigma.matrix());
  const double ny = static_cast<double>(ys.size());
  double sum_h = 0.0, sum_abs = 0.0, sum_sq = 0.0;
  for (const auto& y : ys) {
    sum_h += shannon_entropy(apply_povm(binary_povm_ny(m, y), sigma));
    const double c = bloch[y];
    sum_abs += std::abs(c);
    sum_sq += c * c;
  }
  r.mean_binary_entropy = sum_h / ny;
  r.entropy_decomposed = std::log2(ny) + r.mean_binary_entropy;
  r.mean_abs_coefficient = sum_abs / ny;
  r.cauchy_schwarz_middle = std::sqrt(sum_sq) / std::sqrt(ny);
  r.sum_sq_all = bloch.sum_of_squares();
  return r;
}

/// Entropy of the uniform (x, y) label: 1 + m log2 3.
inline double locking_key_entropy(int m) { return 1.0 + m * kLog2Of3; }

struct LockingGapReport {
  int m = 0;
  double i_with_y = 0.0;           // H(XY), reached by the conditional measurement
  double i_without_y_upper = 0.0;  // analytic upper bound
  double delta_lower = 0.0;        // i_with_y - i_without_y_upper
  std::optional<double> i_without_y_best_found;
  std::optional<double> delta_best_found;  // i_with_y - best found, an upper estimate of the gap

  double y_size_bits() const { return m * kLog2Of3; }
  bool exceeds_y_size() const { return delta_lower > y_size_bits(); }
};

inline LockingGapReport locking_gap(int m, std::optional<double> best_found = std::nullopt) {
  LockingGapReport r;
  r.m = m;
  r.i_with_y = locking_key_entropy(m);
  r.i_without_y_upper = locking_upper_bound(m);
  r.delta_lower = r.i_with_y - r.i_without_y_upper;
  if (best_found) {
    r.i_without_y_best_found = best_found;
    r.delta_best_found = r.i_with_y - *best_found;
  }
  return r;
}

/// e^{-(n-2)/8}.
inline double epsilon_of_n(int n) {
  if (n < 2) throw DomainError("epsilon_of_n: n must be >= 2");
  return std::exp(-(n - 2) / 8.0);
}

/// Key length n = floor(m log2 3) + 1 matching m qubits.
inline int key_length_for(int m) { return static_cast<int>(std::floor(m * kLog2Of3)) + 1; }

struct EpsilonCheckRow {
  int m = 0;
  int n = 0;
  double bound = 0.0;
  double epsilon = 0.0;
  bool holds() const { return bound <= epsilon; }
};

inline std::vector<EpsilonCheckRow> epsilon_consistency(int m_first, int m_last) {
  std::vector<EpsilonCheckRow> rows;
  for (int m = m_first; m <= m_last; ++m) {
    const int n = key_length_for(m);
    rows.push_back({m, n, locking_upper_bound(m), epsilon_of_n(n)});
  }
  return rows;
}

}  // namespace locklab

#endif  // LOCKLAB_ACCINFO_HPP
