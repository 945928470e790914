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

// CL04 block-message signatures in a type-3 pairing (scheme D).
//
//   secret:    x, y, z_1..z_L
//   public:    X = x g2, Y = y g2, Z_i = z_i g2
//   signature on (m_0, m_1..m_L):
//     a random, A_i = z_i a, b = y a, B_i = y A_i,
//     c = (x + x y m_0) a + sum x y m_i A_i
//
// Verification folds all the pairing equations into one multi-pairing with
// 64-bit weights derived from the signature and messages.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hidm/algebra/curve.hpp"
#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"

namespace hidm::cl_pairing {

struct PublicKey {
  G2 x;
  G2 y;
  std::vector<G2> z;  // one per message after the first

  std::size_t slots() const { return z.size() + 1; }
  Bytes to_bytes() const;
  static PublicKey from_bytes(ByteView b);
  bool operator==(const PublicKey&) const = default;
};

struct SecretKey {
  Scalar x;
  Scalar y;
  std::vector<Scalar> z;
};

struct Keypair {
  SecretKey sk;
  PublicKey pk;

  static Keypair generate(std::size_t slots, Rng& rng);
};

struct Signature {
  G1 a;
  std::vector<G1> big_a;  // A_i
  G1 b;
  std::vector<G1> big_b;  // B_i
  G1 c;

  Bytes to_bytes() const;
  static Signature from_bytes(ByteView b);
  bool operator==(const Signature&) const = default;
};

Signature sign(std::span<const Scalar> messages, const Keypair& key, Rng& rng);
bool verify(std::span<const Scalar> messages, const Signature& sig, const PublicKey& pk);

// The structural equations only: e(a, Z_i) = e(A_i, g2), e(a, Y) = e(b, g2),
// e(A_i, Y) = e(B_i, g2). Used by the proof verifier on randomized copies.
bool verify_structure(const Signature& sig, const PublicKey& pk);

// Nonzero 64-bit weights expanded from `seed`.
std::vector<std::uint64_t> batch_weights(ByteView seed, std::size_t count);

}  // namespace hidm::cl_pairing
