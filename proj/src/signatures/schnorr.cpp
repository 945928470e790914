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

#include "hidm/signatures/schnorr.hpp"

#include "hidm/algebra/hash.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

SchnorrKeypair SchnorrKeypair::generate(const SchnorrGroup& group, Rng& rng) {
  return from_secret(group, random_nonzero_below(rng, group.q));
}

SchnorrKeypair SchnorrKeypair::from_secret(const SchnorrGroup& group, const BigInt& x) {
  if (x <= 0 || x >= group.q) throw std::invalid_argument("Schnorr secret out of range");
  return SchnorrKeypair{x, powm(group.g, x, group.p)};
}

Bytes SchnorrSig::to_bytes(const SchnorrGroup& group) const {
  Bytes out = bigint_to_bytes(c, group.scalar_size());
  append(out, bigint_to_bytes(s, group.scalar_size()));
  return out;
}

SchnorrSig SchnorrSig::from_bytes(const SchnorrGroup& group, ByteView b) {
  std::size_t w = group.scalar_size();
  if (b.size() != 2 * w) throw DecodeError("Schnorr signature has wrong length");
  SchnorrSig sig{bigint_from_bytes(b.first(w)), bigint_from_bytes(b.subspan(w))};
  if (sig.c >= group.q || sig.s >= group.q) throw DecodeError("Schnorr signature scalar out of range");
  return sig;
}

BigInt schnorr_challenge(const SchnorrGroup& group, const BigInt& commitment, ByteView msg) {
  Bytes input = FieldWriter().field(bigint_to_bytes(commitment, group.element_size())).field(msg).bytes();
  return hash_to_field(tags::kSchnorr, input, group.q);
}

BigInt schnorr_respond(const SchnorrGroup& group, const BigInt& nonce, const BigInt& challenge, const BigInt& x) {
  return mod(nonce + challenge * x, group.q);
}

BigInt schnorr_recommit(const SchnorrGroup& group, const BigInt& c, const BigInt& s, const BigInt& y) {
  BigInt gs = powm(group.g, s, group.p);
  BigInt y_neg_c = powm(y, group.q - mod(c, group.q), group.p);
  return mod(gs * y_neg_c, group.p);
}

SchnorrSig schnorr_sign(const SchnorrGroup& group, ByteView msg, const SchnorrKeypair& key, Rng& rng) {
  BigInt r = random_nonzero_below(rng, group.q);
  BigInt commitment = powm(group.g, r, group.p);
  BigInt c = schnorr_challenge(group, commitment, msg);
  return SchnorrSig{c, schnorr_respond(group, r, c, key.x)};
}

bool schnorr_verify(const SchnorrGroup& group, ByteView msg, const SchnorrSig& sig, const BigInt& y) {
  if (sig.c < 0 || sig.c >= group.q || sig.s < 0 || sig.s >= group.q) return false;
  if (!group.is_element(y)) return false;
  BigInt commitment = schnorr_recommit(group, sig.c, sig.s, y);
  return schnorr_challenge(group, commitment, msg) == sig.c;
}

}  // namespace hidm
