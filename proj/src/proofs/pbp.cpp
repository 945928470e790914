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

#include "hidm/proofs/pbp.hpp"

#include "hidm/algebra/hash.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

Bytes PbProof::to_bytes() const {
  Bytes out = t1.to_bytes();
  append(out, t2.to_bytes());
  append(out, c.to_bytes());
  append(out, s1.to_bytes());
  append(out, s2.to_bytes());
  return out;
}

PbProof PbProof::from_bytes(ByteView b) {
  if (b.size() != kEncodedSize) throw DecodeError("binding proof has wrong length");
  std::size_t off = 0;
  auto take = [&](std::size_t n) {
    ByteView v = b.subspan(off, n);
    off += n;
    return v;
  };
  PbProof p;
  p.t1 = GT::from_bytes(take(GT::kEncodedSize));
  p.t2 = G2::from_bytes(take(G2::kEncodedSize));
  p.c = Scalar::from_bytes(take(Scalar::kEncodedSize));
  p.s1 = Scalar::from_bytes(take(Scalar::kEncodedSize));
  p.s2 = Scalar::from_bytes(take(Scalar::kEncodedSize));
  return p;
}

Scalar pbp_challenge(const Pseudonym& pseudonym, const GT& t1, const G2& t2, const Scalar& h) {
  Bytes input = FieldWriter()
                    .field(pseudonym.p1.to_bytes())
                    .field(pseudonym.p2.to_bytes())
                    .field(t1.to_bytes())
                    .field(t2.to_bytes())
                    .field(pseudonym.pk.to_bytes())
                    .field(h.to_bytes())
                    .bytes();
  return hash_to_scalar(tags::kPbp, input);
}

PbProof pbp_prove(const Pseudonym& pseudonym, const Scalar& r, const Scalar& h, Rng& rng, PbpMode mode) {
  Scalar t1 = Scalar::random(rng);
  Scalar t2 = mode == PbpMode::kStrict ? t1 : Scalar::random(rng);
  return pbp_prove_with(pseudonym, r, h, t1, t2);
}

PbProof pbp_prove_with(const Pseudonym& pseudonym, const Scalar& r, const Scalar& h, const Scalar& t1,
                       const Scalar& t2) {
  PbProof p;
  p.t1 = PairingContext::get().z_pow(t1);
  p.t2 = pseudonym.pk * t2;
  p.c = pbp_challenge(pseudonym, p.t1, p.t2, h);
  p.s1 = t1 + p.c * r;
  p.s2 = t2 + p.c * r;
  return p;
}

bool pbp_verify(const Pseudonym& pseudonym, const PbProof& proof, const Scalar& h, PbpMode mode) {
  if (mode == PbpMode::kStrict && !(proof.s1 == proof.s2)) return false;
  if (pseudonym.pk.is_identity()) return false;
  if (!(pbp_challenge(pseudonym, proof.t1, proof.t2, h) == proof.c)) return false;
  // z^s1 == T1 (P1 / z^h)^c, rearranged as z^(s1 + c h) == T1 P1^c.
  const PairingContext& ctx = PairingContext::get();
  if (!(ctx.z_pow(proof.s1 + proof.c * h) == proof.t1 * pseudonym.p1.pow(proof.c))) return false;
  return pseudonym.pk * proof.s2 == proof.t2 + pseudonym.p2 * proof.c;
}

}  // namespace hidm
