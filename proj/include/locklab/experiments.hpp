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

// Experiment drivers behind the locklab command-line tool. Each command
// produces a Table (or a JSON document) plus a flag saying whether every
// numerical assertion made along the way held. Column order and number
// formatting are documented in docs/output-formats.md.

#ifndef LOCKLAB_EXPERIMENTS_HPP
#define LOCKLAB_EXPERIMENTS_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "locklab/accinfo.hpp"
#include "locklab/attack.hpp"
#include "locklab/security.hpp"
#include "locklab/states.hpp"

namespace locklab::experiments {

inline constexpr std::uint64_t kDefaultSeed = 42;

enum class Format { Csv, Json };

enum class Command { Bounds, Attack, Iacc, Security, Bell, ProofChain };

struct RunConfig {
  Command command = Command::Bounds;
  int m_first = 1;
  int m_last = 1;
  std::int64_t trials = 1000;
  int restarts = 200;
  std::uint64_t seed = kDefaultSeed;
  Format format = Format::Csv;
  bool blind = false;
  bool bound_only = false;
  int n = 1;
  double perturbation = 0.1;
  int workers = 0;
};

/// Usage errors (exit code 2).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Cell = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Output {
  std::string text;
  bool numerically_ok = true;
};

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

/// Rounds to the six decimals printed in CSV so both formats carry the same
/// values.
inline double round6(double v) {
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

inline std::string cell_to_csv(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

inline nlohmann::ordered_json cell_to_json(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const { return round6(v); }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

inline std::string render_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_to_csv(row[i]);
    os << '\n';
  }
  return os.str();
}

inline std::string render_json(const Table& t) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_to_json(row[i]);
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

inline std::string render(const Table& t, Format f) { return f == Format::Csv ? render_csv(t) : render_json(t); }

inline OptimizerConfig optimizer_config(const RunConfig& cfg) {
  OptimizerConfig oc;
  oc.restarts = cfg.restarts;
  oc.seed = cfg.seed;
  oc.workers = cfg.workers;
  return oc;
}

inline void require_range(const RunConfig& cfg) {
  if (cfg.m_first < 1 || cfg.m_last < cfg.m_first) throw UsageError("m range is empty or starts below 1");
}

inline std::int64_t as_int(int v) { return static_cast<std::int64_t>(v); }

/// Analytic bound table for every m in the range.
inline Output cmd_bounds(const RunConfig& cfg) {
  require_range(cfg);
  Table t{{"m", "n", "lemma2_bound", "epsilon_of_n", "delta_lower", "key_entropy_bits"}, {}};
  bool ok = true;
  for (int m = cfg.m_first; m <= cfg.m_last; ++m) {
    const int n = key_length_for(m);
    const auto gap = locking_gap(m);
    const double bound = locking_upper_bound(m);
    const double eps = epsilon_of_n(n);
    ok = ok && gap.exceeds_y_size() && bound <= eps;
    t.rows.push_back({as_int(m), as_int(n), bound, eps, gap.delta_lower, gap.i_with_y});
  }
  return {render(t, cfg.format), ok};
}

/// Header attack (or the fixed-basis blind baseline with cfg.blind).
inline Output cmd_attack(const RunConfig& cfg) {
  require_range(cfg);
  if (cfg.trials < 1) throw UsageError("--trials must be >= 1");
  Table t{{"mode", "m", "trials", "successes", "success_rate"}, {}};
  bool ok = true;
  for (int m = cfg.m_first; m <= cfg.m_last; ++m) {
    const AttackStats st = cfg.blind ? run_blind_attack(m, cfg.trials, FixedBasisPreset{}, cfg.seed)
                                     : run_header_attack(m, cfg.trials, cfg.seed);
    if (!cfg.blind) ok = ok && st.successes == st.trials;
    t.rows.push_back({std::string(cfg.blind ? "blind_fixed_basis" : "header"), as_int(m), st.trials, st.successes,
                      st.success_rate});
  }
  return {render(t, cfg.format), ok};
}

/// Best-found accessible information of the locking ensemble.
inline Output cmd_iacc(const RunConfig& cfg) {
  require_range(cfg);
  if (cfg.m_last > kMaxOptimizerM) throw UsageError("iacc supports m <= 2");
  if (cfg.restarts < 1) throw UsageError("--restarts must be >= 1");
  Table t{{"m", "dim", "restarts_used", "best_found", "upper_bound", "pretty_good_info"}, {}};
  bool ok = true;
  for (int m = cfg.m_first; m <= cfg.m_last; ++m) {
    const auto est = optimize_locking_accessible_info(m, optimizer_config(cfg));
    const auto s = locking_state(m);
    const double pgm = measured_info(s, pretty_good_povm(s));
    ok = ok && est.best_value <= *est.upper_bound + 1e-6 && est.best_value >= pgm - tol::kEigen;
    t.rows.push_back({as_int(m), static_cast<std::int64_t>(s.dim()), as_int(est.restarts_used), est.best_value,
                      *est.upper_bound, pgm});
  }
  return {render(t, cfg.format), ok};
}

inline nlohmann::ordered_json to_json(const SecurityReport& r) {
  nlohmann::ordered_json j;
  j["m"] = r.m;
  j["key_entropy_bits"] = round6(r.key_entropy_bits);
  j["iacc_upper"] = round6(r.iacc_upper);
  j["iacc_best_found"] = r.iacc_best_found ? nlohmann::ordered_json(round6(*r.iacc_best_found)) : nullptr;
  j["epsilon_distance"] = round6(r.epsilon_distance);
  j["verdict_text"] = r.verdict_text;
  return j;
}

inline Output cmd_security(const RunConfig& cfg) {
  require_range(cfg);
  if (cfg.m_first != cfg.m_last) throw UsageError("security takes a single --m");
  const int m = cfg.m_first;
  if (m > kMaxBoundOnlyM || (!cfg.bound_only && m > kMaxOptimizerM))
    throw UsageError("security supports m <= 2 (m <= 3 with --bound-only)");
  const auto r = security_report(m, optimizer_config(cfg), cfg.bound_only);
  const bool ok = std::abs(r.epsilon_distance - 0.5) <= tol::kEigen &&
                  (!r.iacc_best_found || *r.iacc_best_found <= r.iacc_upper + 1e-6);
  if (cfg.format == Format::Json) return {to_json(r).dump(2) + "\n", ok};
  Table t{{"m", "key_entropy_bits", "iacc_upper", "iacc_best_found", "epsilon_distance", "verdict_text"}, {}};
  t.rows.push_back({as_int(r.m), r.key_entropy_bits, r.iacc_upper,
                    r.iacc_best_found ? Cell(*r.iacc_best_found) : Cell(std::monostate{}), r.epsilon_distance,
                    "\"" + r.verdict_text + "\""});
  return {render_csv(t), ok};
}

/// Bell-pair key experiment on (1 - p) Phi+ + p tau, tau random per trial.
inline Output cmd_bell(const RunConfig& cfg) {
  if (cfg.n < 1 || cfg.n > 2) throw UsageError("--n must be 1 or 2");
  if (cfg.trials < 1) throw UsageError("--trials must be >= 1");
  if (!(cfg.perturbation >= 0.0 && cfg.perturbation <= 1.0)) throw UsageError("--perturbation must be in [0, 1]");
  Table t{{"trial", "fidelity", "epsilon_bound", "measured_distance", "pass"}, {}};
  bool ok = true;
  for (std::int64_t i = 0; i < cfg.trials; ++i) {
    Rng rng(cfg.seed + static_cast<std::uint64_t>(i));
    const auto rho = perturbed_bell_state(cfg.n, cfg.perturbation, rng);
    const auto r = bell_key_experiment(cfg.n, rho);
    ok = ok && r.passed();
    t.rows.push_back({i, r.fidelity, r.epsilon_bound, r.measured_key_distance, r.passed()});
  }
  return {render(t, cfg.format), ok};
}

/// Proof-chain slacks on random pure states.
inline Output cmd_proofchain(const RunConfig& cfg) {
  require_range(cfg);
  if (cfg.m_last > 3) throw UsageError("proofchain supports m <= 3");
  if (cfg.trials < 1) throw UsageError("--trials must be >= 1");
  Table t{{"sample", "m", "a_deviation", "b_slack", "c_slack", "d_slack", "pass"}, {}};
  bool ok = true;
  for (int m = cfg.m_first; m <= cfg.m_last; ++m) {
    for (std::int64_t i = 0; i < cfg.trials; ++i) {
      Rng rng(cfg.seed + static_cast<std::uint64_t>(i));
      const auto sigma = random_pure_state(Eigen::Index{1} << m, rng);
      const auto r = proof_chain_check(m, sigma);
      ok = ok && r.passed();
      t.rows.push_back({i, as_int(m), r.deviation_a(), r.slack_b(), r.slack_c(), r.slack_d(), r.passed()});
    }
  }
  return {render(t, cfg.format), ok};
}

inline Output run(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Bounds: return cmd_bounds(cfg);
    case Command::Attack: return cmd_attack(cfg);
    case Command::Iacc: return cmd_iacc(cfg);
    case Command::Security: return cmd_security(cfg);
    case Command::Bell: return cmd_bell(cfg);
    case Command::ProofChain: return cmd_proofchain(cfg);
  }
  throw UsageError("unknown command");
}

/// "A:B" -> {A, B}.
inline std::pair<int, int> parse_m_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--m-range expects A:B");
  const auto parse = [&](const std::string& part) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::logic_error&) {
      used = std::string::npos;
    }
    if (used != part.size()) throw UsageError("--m-range expects integers A:B, got " + text);
    return v;
  };
  const int lo = parse(text.substr(0, colon));
  const int hi = parse(text.substr(colon + 1));
  if (hi < lo) throw UsageError("--m-range " + text + " is empty");
  return {lo, hi};
}

}  // namespace locklab::experiments

#endif  // LOCKLAB_EXPERIMENTS_HPP
