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

// Schnorr signatures over a prime-order subgroup of Z_p^*.
//
//   sign:   R = g^r, c = H(R || m) mod q, s = r + c*x mod q
//   verify: c == H(g^s * Y^-c || m) mod q

#pragma once

#include "hidm/algebra/schnorr_group.hpp"
#include "hidm/common/bigint.hpp"
#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"

namespace hidm {

struct SchnorrKeypair {
  BigInt x;  // secret, in [1, q)
  BigInt y;  // g^x mod p

  static SchnorrKeypair generate(const SchnorrGroup& group, Rng& rng);
  static SchnorrKeypair from_secret(const SchnorrGroup& group, const BigInt& x);
};

struct SchnorrSig {
  BigInt c;
  BigInt s;

  // c || s, each fixed-width scalar_size() bytes.
  Bytes to_bytes(const SchnorrGroup& group) const;
  static SchnorrSig from_bytes(const SchnorrGroup& group, ByteView b);
  bool operator==(const SchnorrSig&) const = default;
};

SchnorrSig schnorr_sign(const SchnorrGroup& group, ByteView msg, const SchnorrKeypair& key, Rng& rng);
// Never throws; malformed values simply fail.
bool schnorr_verify(const SchnorrGroup& group, ByteView msg, const SchnorrSig& sig, const BigInt& y);

// Building blocks, exposed for the hand-checked small-group vectors.
BigInt schnorr_challenge(const SchnorrGroup& group, const BigInt& commitment, ByteView msg);
BigInt schnorr_respond(const SchnorrGroup& group, const BigInt& nonce, const BigInt& challenge, const BigInt& x);
// g^s * y^-c mod p.
BigInt schnorr_recommit(const SchnorrGroup& group, const BigInt& c, const BigInt& s, const BigInt& y);

}  // namespace hidm
