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

// One-time pad over the alphabet {0,1} x {1,2,3}^m and attacks on a key
// drawn from the locking ensemble.
//
// Key symbol (x, y): x pads the final message bit modulo 2, y pads an m-trit
// header modulo 3 (Pauli index 1,2,3 acts as shift 0,1,2).

#ifndef LOCKLAB_ATTACK_HPP
#define LOCKLAB_ATTACK_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "locklab/core.hpp"
#include "locklab/measurement.hpp"
#include "locklab/pauli.hpp"

namespace locklab {

struct KeySymbol {
  int x = 0;
  PauliString y;
};

struct Message {
  std::vector<std::uint8_t> head;  // trits
  int last = 0;
  friend bool operator==(const Message&, const Message&) = default;
};

struct Ciphertext {
  std::vector<std::uint8_t> head;  // trits
  int last = 0;
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

namespace detail {
inline void check_shapes(const KeySymbol& k, const std::vector<std::uint8_t>& head, int last) {
  require_locking_alphabet(k.y);
  if (k.x != 0 && k.x != 1) throw DomainError("key bit must be 0 or 1");
  if (static_cast<int>(head.size()) != k.y.size())
    throw DimensionError("header length " + std::to_string(head.size()) + " does not match key length " +
                         std::to_string(k.y.size()));
  for (auto t : head)
    if (t > 2) throw DomainError("header entries must be trits");
  if (last != 0 && last != 1) throw DomainError("last message bit must be 0 or 1");
}
}  // namespace detail

inline Ciphertext otp_encrypt(const KeySymbol& k, const Message& msg) {
  detail::check_shapes(k, msg.head, msg.last);
  Ciphertext c;
  c.head.resize(msg.head.size());
  for (std::size_t i = 0; i < msg.head.size(); ++i)
    c.head[i] = static_cast<std::uint8_t>((msg.head[i] + (k.y.index(static_cast<int>(i)) - 1)) % 3);
  c.last = msg.last ^ k.x;
  return c;
}

inline Message otp_decrypt(const KeySymbol& k, const Ciphertext& c) {
  detail::check_shapes(k, c.head, c.last);
  Message msg;
  msg.head.resize(c.head.size());
  for (std::size_t i = 0; i < c.head.size(); ++i)
    msg.head[i] = static_cast<std::uint8_t>((c.head[i] + 3 - (k.y.index(static_cast<int>(i)) - 1)) % 3);
  msg.last = c.last ^ k.x;
  return msg;
}

/// The y-part of the key from a ciphertext header and the known plaintext
/// header.
inline PauliString recover_key_header(const std::vector<std::uint8_t>& cipher_head,
                                      const std::vector<std::uint8_t>& known_head) {
  if (cipher_head.size() != known_head.size() || cipher_head.empty())
    throw DimensionError("header lengths differ");
  std::vector<Pauli> ops;
  ops.reserve(cipher_head.size());
  for (std::size_t i = 0; i < cipher_head.size(); ++i) {
    if (cipher_head[i] > 2 || known_head[i] > 2) throw DomainError("header entries must be trits");
    ops.push_back(static_cast<Pauli>((cipher_head[i] + 3 - known_head[i]) % 3 + 1));
  }
  return PauliString(std::move(ops));
}

inline KeySymbol random_key(int m, Rng& rng) {
  std::vector<Pauli> ops(static_cast<std::size_t>(m));
  for (auto& p : ops) p = static_cast<Pauli>(uniform_below(rng, 3) + 1);
  const int x = random_bit(rng);
  return {x, PauliString(std::move(ops))};
}

/// Outcome bits of measuring rho_{E|x,state_y} qubit-wise in the eigenbases
/// of basis_y. Qubits measured in their own basis return r_i (parity x
/// overall); any other basis gives an independent uniform bit.
inline std::vector<std::uint8_t> sample_product_basis_outcome(int x, const PauliString& state_y,
                                                              const PauliString& basis_y, Rng& rng) {
  if (state_y.size() != basis_y.size()) throw DimensionError("basis length mismatch");
  detail::require_locking_alphabet(basis_y);
  auto bits = sample_locking_outcome(state_y.size(), x, state_y, rng);
  for (int i = 0; i < state_y.size(); ++i)
    if (state_y[i] != basis_y[i]) bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(random_bit(rng));
  return bits;
}

struct AttackStats {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double success_rate = 0.0;
  int m = 0;
  std::uint64_t seed = 0;
};

inline AttackStats finish_stats(int m, std::int64_t trials, std::int64_t successes, std::uint64_t seed) {
  return {trials, successes, static_cast<double>(successes) / static_cast<double>(trials), m, seed};
}

/// Known-header attack: the adversary reads y off the ciphertext header,
/// measures E in the sigma_y eigenbasis and decrypts the final bit.
/// Trial i draws from Rng(seed + i).
inline AttackStats run_header_attack(int m, std::int64_t trials, std::uint64_t seed,
                                     std::optional<std::vector<std::uint8_t>> known_header = std::nullopt) {
  if (m < 1) throw DomainError("run_header_attack: m must be >= 1");
  if (trials < 1) throw DomainError("run_header_attack: trials must be >= 1");
  const std::vector<std::uint8_t> header = known_header.value_or(std::vector<std::uint8_t>(static_cast<std::size_t>(m), 0));
  if (static_cast<int>(header.size()) != m) throw DimensionError("known header must have m trits");

  std::int64_t successes = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(seed + static_cast<std::uint64_t>(t));
    const KeySymbol key = random_key(m, rng);
    const int secret = random_bit(rng);
    const Ciphertext c = otp_encrypt(key, {header, secret});

    const PauliString basis = recover_key_header(c.head, header);
    const auto r = sample_product_basis_outcome(key.x, key.y, basis, rng);
    const int guessed_key_bit = parity(r);
    if ((c.last ^ guessed_key_bit) == secret) ++successes;
  }
  return finish_stats(m, trials, successes, seed);
}

/// Blind adversary preset: measure every qubit in the sigma_3 eigenbasis and
/// output the parity (the maximum-likelihood guess for that measurement).
struct FixedBasisPreset {};

using BlindStrategy = std::variant<Povm, FixedBasisPreset>;

/// Adversary without the ciphertext header guesses x from E alone.
inline AttackStats run_blind_attack(int m, std::int64_t trials, const BlindStrategy& strategy, std::uint64_t seed) {
  if (m < 1) throw DomainError("run_blind_attack: m must be >= 1");
  if (trials < 1) throw DomainError("run_blind_attack: trials must be >= 1");

  std::int64_t successes = 0;
  if (std::holds_alternative<FixedBasisPreset>(strategy)) {
    const PauliString basis(std::vector<Pauli>(static_cast<std::size_t>(m), Pauli::Z));
    for (std::int64_t t = 0; t < trials; ++t) {
      Rng rng(seed + static_cast<std::uint64_t>(t));
      const KeySymbol key = random_key(m, rng);
      const int secret = random_bit(rng);
      const int c_last = secret ^ key.x;
      const int guess = parity(sample_product_basis_outcome(key.x, key.y, basis, rng));
      if ((c_last ^ guess) == secret) ++successes;
    }
    return finish_stats(m, trials, successes, seed);
  }

  const Povm& povm = std::get<Povm>(strategy);
  if (m > 2) throw CapacityError("run_blind_attack: dense strategies support m <= 2");
  const auto s = locking_state(m);
  if (povm.dim() != s.dim()) throw DimensionError("strategy POVM has the wrong dimension");

  // Outcome distributions per label and the maximum-likelihood guess per outcome.
  const JointDistribution joint = measure_cq(povm, s);
  const auto nz = static_cast<std::size_t>(joint.p.cols());
  std::vector<double> score0(nz, 0.0), score1(nz, 0.0);
  for (std::size_t v = 0; v < s.size(); ++v)
    for (std::size_t z = 0; z < nz; ++z)
      (s.label(v).x ? score1 : score0)[z] += joint.p(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(z));
  std::vector<int> guess(nz);
  for (std::size_t z = 0; z < nz; ++z) guess[z] = score1[z] > score0[z] ? 1 : 0;

  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(seed + static_cast<std::uint64_t>(t));
    const KeySymbol key = random_key(m, rng);
    const int secret = random_bit(rng);
    const int c_last = secret ^ key.x;
    const auto v = static_cast<Eigen::Index>(key.x * static_cast<int>(s.size() / 2) +
                                             static_cast<int>(key.y.base3_rank()));
    // Sample z from P(z | x, y) = joint(v, z) / P(v).
    const double u = uniform_unit(rng) * joint.p.row(v).sum();
    std::size_t z = 0;
    double acc = joint.p(v, 0);
    while (z + 1 < nz && acc <= u) acc += joint.p(v, static_cast<Eigen::Index>(++z));
    if ((c_last ^ guess[z]) == secret) ++successes;
  }
  return finish_stats(m, trials, successes, seed);
}

}  // namespace locklab

#endif  // LOCKLAB_ATTACK_HPP
