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

// Identity-based signatures with blind key extraction (Cha-Cheon style).
//
//   master:   s, mpk = s g2
//   identity: Q = H_G1(identity bytes), key d = s Q
//   blind extraction: user sends Q' = b Q, issuer returns s Q', user takes
//                     d = b^-1 (s Q')
//   sign:     U = a Q, h = H(msg || U), V = (a + h) d
//   verify:   e(V, g2) == e(U + h Q, mpk)

#pragma once

#include "hidm/algebra/curve.hpp"
#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"

namespace hidm {

struct IbsMasterKey {
  Scalar s;
  G2 mpk;

  static IbsMasterKey generate(Rng& rng);
  static IbsMasterKey from_secret(const Scalar& s);
};

struct IbsUserKey {
  Bytes identity;
  G1 d;

  // pairing(d, g2) == pairing(Q, mpk)
  bool check(const G2& mpk) const;
};

struct IbsSignature {
  G1 u;
  G1 v;

  Bytes to_bytes() const;
  static IbsSignature from_bytes(ByteView b);
  bool operator==(const IbsSignature&) const = default;
};

G1 ibs_identity_point(ByteView identity);

// User side of blind extraction.
class IbsBlindRequest {
 public:
  IbsBlindRequest(ByteView identity, Rng& rng);
  IbsBlindRequest(ByteView identity, const Scalar& blinder);

  const G1& blinded_identity() const { return blinded_; }  // Q'
  // Unblinds and checks the issuer response; throws ProtocolError if the
  // resulting key fails the pairing check.
  IbsUserKey finish(const G1& issuer_response, const G2& mpk) const;

 private:
  Bytes identity_;
  Scalar blinder_;
  G1 blinded_;
};

// Issuer side: s Q'. Throws ProtocolError for the identity element.
G1 ibs_blind_issue(const G1& blinded_identity, const IbsMasterKey& master);

struct IbsExtractResult {
  IbsUserKey key;
  G1 issuer_view;  // the only value the issuer saw
};

IbsExtractResult ibs_blind_extract(ByteView identity, const IbsMasterKey& master, Rng& user_rng);
// Non-blind extraction s Q, used as an oracle.
IbsUserKey ibs_extract(ByteView identity, const IbsMasterKey& master);

Scalar ibs_challenge(ByteView msg, const G1& u);
IbsSignature ibs_sign(ByteView msg, const IbsUserKey& key, Rng& rng);
bool ibs_verify(ByteView msg, const IbsSignature& sig, ByteView identity, const G2& mpk);

}  // namespace hidm
