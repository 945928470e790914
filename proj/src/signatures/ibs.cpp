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

#include "hidm/signatures/ibs.hpp"

#include "hidm/algebra/hash.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

IbsMasterKey IbsMasterKey::generate(Rng& rng) { return from_secret(Scalar::random_nonzero(rng)); }

IbsMasterKey IbsMasterKey::from_secret(const Scalar& s) {
  if (s.is_zero()) throw std::invalid_argument("IBS master secret must be nonzero");
  return IbsMasterKey{s, G2::generator() * s};
}

G1 ibs_identity_point(ByteView identity) { return hash_to_g1(tags::kIbsIdentity, identity); }

bool IbsUserKey::check(const G2& mpk) const {
  G1 q = ibs_identity_point(identity);
  G1 ps[2] = {d, -q};
  G2 qs[2] = {G2::generator(), mpk};
  return !d.is_identity() && multi_pairing(ps, qs).is_one();
}

Bytes IbsSignature::to_bytes() const {
  Bytes out = u.to_bytes();
  append(out, v.to_bytes());
  return out;
}

IbsSignature IbsSignature::from_bytes(ByteView b) {
  constexpr std::size_t w = G1::kEncodedSize;
  if (b.size() != 2 * w) throw DecodeError("IBS signature has wrong length");
  return IbsSignature{G1::from_bytes(b.first(w)), G1::from_bytes(b.subspan(w))};
}

IbsBlindRequest::IbsBlindRequest(ByteView identity, Rng& rng)
    : IbsBlindRequest(identity, Scalar::random_nonzero(rng)) {}

IbsBlindRequest::IbsBlindRequest(ByteView identity, const Scalar& blinder)
    : identity_(identity.begin(), identity.end()), blinder_(blinder) {
  if (blinder_.is_zero()) throw std::invalid_argument("IBS blinder must be nonzero");
  blinded_ = ibs_identity_point(identity_) * blinder_;
}

IbsUserKey IbsBlindRequest::finish(const G1& issuer_response, const G2& mpk) const {
  IbsUserKey key{identity_, issuer_response * blinder_.inverse()};
  if (!key.check(mpk)) throw ProtocolError(Reason::kInvalidArgument, "extracted key fails the pairing check");
  return key;
}

G1 ibs_blind_issue(const G1& blinded_identity, const IbsMasterKey& master) {
  if (blinded_identity.is_identity()) {
    throw ProtocolError(Reason::kInvalidArgument, "blinded identity is the identity element");
  }
  return blinded_identity * master.s;
}

IbsExtractResult ibs_blind_extract(ByteView identity, const IbsMasterKey& master, Rng& user_rng) {
  IbsBlindRequest request(identity, user_rng);
  G1 response = ibs_blind_issue(request.blinded_identity(), master);
  return IbsExtractResult{request.finish(response, master.mpk), request.blinded_identity()};
}

IbsUserKey ibs_extract(ByteView identity, const IbsMasterKey& master) {
  return IbsUserKey{Bytes(identity.begin(), identity.end()), ibs_identity_point(identity) * master.s};
}

Scalar ibs_challenge(ByteView msg, const G1& u) {
  return hash_to_scalar(tags::kIbs, FieldWriter().field(msg).field(u.to_bytes()).bytes());
}

IbsSignature ibs_sign(ByteView msg, const IbsUserKey& key, Rng& rng) {
  Scalar a = Scalar::random_nonzero(rng);
  G1 u = ibs_identity_point(key.identity) * a;
  Scalar h = ibs_challenge(msg, u);
  return IbsSignature{u, key.d * (a + h)};
}

bool ibs_verify(ByteView msg, const IbsSignature& sig, ByteView identity, const G2& mpk) {
  if (sig.u.is_identity() || sig.v.is_identity() || mpk.is_identity()) return false;
  G1 q = ibs_identity_point(identity);
  Scalar h = ibs_challenge(msg, sig.u);
  G1 ps[2] = {sig.v, -(sig.u + q * h)};
  G2 qs[2] = {G2::generator(), mpk};
  return multi_pairing(ps, qs).is_one();
}

}  // namespace hidm
