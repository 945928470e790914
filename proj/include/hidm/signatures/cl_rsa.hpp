// Copyright 2026 The HIDM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Strong-RSA CL signatures over blocks of messages (Idemix flavour).
//
//   public:    n, S, Z, R_1..R_L  (S generates QR_n, Z and R_i are powers of S)
//   signature: (A, e, v) with Z = A^e * S^v * prod R_i^{m_i}  (mod n)
//
// e is a prime in [2^(le-1), 2^(le-1) + 2^(le'-1)].

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hidm/common/bigint.hpp"
#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"

namespace hidm::cl_rsa {

struct Params {
  std::size_t modulus_bits = 3072;
  std::size_t message_bits = 256;  // l_m
  std::size_t e_bits = 597;        // l_e
  std::size_t e_range_bits = 120;  // l_e'
  std::size_t challenge_bits = 256;
  std::size_t stat_bits = 80;
  std::size_t v_bits() const { return modulus_bits + message_bits + 300; }
  bool operator==(const Params&) const = default;
};

struct PublicKey {
  Params params;
  BigInt n;
  BigInt s;
  BigInt z;
  std::vector<BigInt> r;

  std::size_t slots() const { return r.size(); }
  Bytes to_bytes() const;
  static PublicKey from_bytes(ByteView b);
  bool operator==(const PublicKey&) const = default;
};

struct SecretKey {
  BigInt p;  // safe primes p = 2p' + 1, q = 2q' + 1
  BigInt q;
  BigInt z_log;  // Z = S^z_log
  std::vector<BigInt> r_log;  // R_i = S^r_log[i]

  BigInt group_order() const;  // p'q'
};

struct Keypair {
  SecretKey sk;
  PublicKey pk;

  // Uses the frozen 3072-bit modulus unless `fresh_modulus_bits` is given.
  static Keypair generate(std::size_t slots, Rng& rng, std::optional<std::size_t> fresh_modulus_bits = {});
};

struct Signature {
  BigInt a;
  BigInt e;
  BigInt v;

  Bytes to_bytes() const;
  static Signature from_bytes(ByteView b);
  bool operator==(const Signature&) const = default;
};

// Messages must be non-negative and below 2^message_bits.
Signature sign(std::span<const BigInt> messages, const Keypair& key, Rng& rng);
bool verify(std::span<const BigInt> messages, const Signature& sig, const PublicKey& pk);

// Generates a safe prime of exactly `bits` bits. Slow for large sizes.
BigInt generate_safe_prime(std::size_t bits, Rng& rng);

}  // namespace hidm::cl_rsa
