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

// locklab: command-line front end for the locking experiments.
//
// Exit codes: 0 success, 2 usage error, 3 numerical assertion failure,
// 1 I/O or other runtime failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <tuple>

#include <CLI11.hpp>

#include "locklab/experiments.hpp"

namespace {

using locklab::experiments::Command;
using locklab::experiments::Format;
using locklab::experiments::RunConfig;
using locklab::experiments::UsageError;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LOCKLAB_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("LOCKLAB_SEED is not an unsigned integer: ") + env);
  }
  return locklab::experiments::kDefaultSeed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locklab: accessible-information locking experiments"};
  app.require_subcommand(1);

  RunConfig cfg;
  int m = 0;
  std::string m_range;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Root seed (default 42, or $LOCKLAB_SEED)");
    sub->add_option("--out", out_path, "Write output to PATH instead of stdout");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", cfg.workers, "Worker threads for restarts (0 = all cores)");
  };
  const auto add_m = [&](CLI::App* sub, bool with_range) {
    auto* opt_m = sub->add_option("--m", m, "Number of qubits m");
    if (with_range) sub->add_option("--m-range", m_range, "Inclusive range A:B of m")->excludes(opt_m);
  };

  auto* bounds = app.add_subcommand("bounds", "Analytic bounds per m");
  add_m(bounds, true);
  add_common(bounds);

  auto* attack = app.add_subcommand("attack", "One-time-pad header attack");
  add_m(attack, true);
  attack->add_option("--trials", cfg.trials, "Number of trials");
  attack->add_flag("--blind", cfg.blind, "Blind fixed-basis adversary instead of the header attack");
  add_common(attack);

  auto* iacc = app.add_subcommand("iacc", "Accessible-information search on the locking ensemble");
  add_m(iacc, true);
  iacc->add_option("--restarts", cfg.restarts, "Random restarts");
  add_common(iacc);

  auto* security = app.add_subcommand("security", "Security report for one m");
  add_m(security, false);
  security->add_option("--restarts", cfg.restarts, "Random restarts");
  security->add_flag("--bound-only", cfg.bound_only, "Skip the optimizer leg");
  add_common(security);

  auto* bell = app.add_subcommand("bell", "Bell-pair key experiment");
  bell->add_option("--n", cfg.n, "Number of Bell pairs (1 or 2)");
  bell->add_option("--perturbation", cfg.perturbation, "Mixing weight p of the random perturbation");
  bell->add_option("--trials", cfg.trials, "Number of trials");
  add_common(bell);

  auto* proof = app.add_subcommand("proofchain", "Proof-chain slacks on random pure states");
  add_m(proof, true);
  proof->add_option("--trials", cfg.trials, "Samples per m");
  add_common(proof);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (bounds->parsed()) cfg.command = Command::Bounds;
    if (attack->parsed()) cfg.command = Command::Attack;
    if (iacc->parsed()) cfg.command = Command::Iacc;
    if (security->parsed()) cfg.command = Command::Security;
    if (bell->parsed()) cfg.command = Command::Bell;
    if (proof->parsed()) cfg.command = Command::ProofChain;

    if (cfg.command == Command::Bell && (m != 0 || !m_range.empty())) throw UsageError("bell takes --n, not --m");
    if (cfg.command == Command::Bell) {
      cfg.m_first = cfg.m_last = 1;
    } else if (!m_range.empty()) {
      std::tie(cfg.m_first, cfg.m_last) = locklab::experiments::parse_m_range(m_range);
    } else if (m != 0) {
      cfg.m_first = cfg.m_last = m;
    } else {
      throw UsageError("--m or --m-range is required");
    }
    cfg.seed = seed ? *seed : default_seed();
    cfg.format = format == "json" ? Format::Json : Format::Csv;

    const auto result = locklab::experiments::run(cfg);
    if (out_path.empty()) {
      std::cout << result.text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      f << result.text;
      if (!f) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitRuntime;
      }
    }
    if (!result.numerically_ok) {
      std::cerr << "error: numerical assertion failed\n";
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const locklab::CapacityError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
