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

#include "hidm/pre/pre.hpp"

#include "hidm/algebra/hash.hpp"
#include "hidm/common/aead.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

Bytes derive_key(const GT& id_gt, ByteView salt, std::string_view info) {
  return hkdf_sha256(salt, id_gt.to_bytes(), to_bytes(info), kAeadKeySize);
}

PrePatientKeys PrePatientKeys::generate(Rng& rng) { return from_secret(Scalar::random_nonzero(rng)); }

PrePatientKeys PrePatientKeys::from_secret(const Scalar& x) {
  if (x.is_zero()) throw std::invalid_argument("pseudonym secret must be nonzero");
  return PrePatientKeys{x, G2::generator() * x};
}

PreHrrKeys PreHrrKeys::generate(Rng& rng) { return from_secret(Scalar::random_nonzero(rng)); }

PreHrrKeys PreHrrKeys::from_secret(const Scalar& y) {
  if (y.is_zero()) throw std::invalid_argument("HRR secret must be nonzero");
  return PreHrrKeys{y, G1::generator() * y};
}

Bytes Pseudonym::to_bytes() const {
  Bytes out = p1.to_bytes();
  append(out, p2.to_bytes());
  append(out, pk.to_bytes());
  return out;
}

Pseudonym Pseudonym::from_bytes(ByteView b) {
  if (b.size() != kEncodedSize) throw DecodeError("pseudonym has wrong length");
  constexpr std::size_t gt = GT::kEncodedSize;
  constexpr std::size_t g2 = G2::kEncodedSize;
  return Pseudonym{GT::from_bytes(b.first(gt)), G2::from_bytes(b.subspan(gt, g2)), G2::from_bytes(b.subspan(gt + g2))};
}

Bytes PseudonymAccessInfo::to_bytes() const {
  return FieldWriter().field(pseudonym.to_bytes()).field(rk.to_bytes()).field(ct).bytes();
}

PseudonymAccessInfo PseudonymAccessInfo::from_bytes(ByteView b) {
  FieldReader rd(b);
  PseudonymAccessInfo pai;
  pai.pseudonym = Pseudonym::from_bytes(rd.field());
  pai.rk = G1::from_bytes(rd.field());
  pai.ct = rd.field();
  if (!rd.done()) throw DecodeError("trailing bytes after PAI");
  return pai;
}

Bytes HrrPseudonym::to_bytes() const {
  Bytes out = q1.to_bytes();
  append(out, q2.to_bytes());
  return out;
}

HrrPseudonym HrrPseudonym::from_bytes(ByteView b) {
  if (b.size() != 2 * GT::kEncodedSize) throw DecodeError("HRR pseudonym has wrong length");
  return HrrPseudonym{GT::from_bytes(b.first(GT::kEncodedSize)), GT::from_bytes(b.subspan(GT::kEncodedSize))};
}

Scalar patient_id_hash(ByteView patient_id) { return hash_to_scalar(tags::kPatientId, patient_id); }

GeneratedPseudonym pseudonym_generate(ByteView patient_id, const PrePatientKeys& keys, const G1& pk_hrr, Rng& rng,
                                      ByteView salt) {
  Scalar r = Scalar::random_nonzero(rng);
  Bytes nonce = rng.bytes(kAeadNonceSize);
  return pseudonym_generate_with(patient_id, keys, pk_hrr, r, nonce, salt);
}

GeneratedPseudonym pseudonym_generate_with(ByteView patient_id, const PrePatientKeys& keys, const G1& pk_hrr,
                                           const Scalar& r, ByteView nonce, ByteView salt) {
  const PairingContext& ctx = PairingContext::get();
  Scalar h = patient_id_hash(patient_id);
  Bytes key = derive_key(ctx.z_pow(h), salt);
  GeneratedPseudonym out;
  out.r = r;
  out.h = h;
  out.pai.pseudonym = Pseudonym{ctx.z_pow(r + h), keys.pk * r, keys.pk};
  out.pai.rk = pk_hrr * keys.x.inverse();
  out.pai.ct = aead_seal_with_nonce(key, nonce, patient_id, {});
  return out;
}

bool rk_check(const G1& rk, const G2& pk_patient, const G1& pk_hrr) {
  if (rk.is_identity() || pk_patient.is_identity() || pk_hrr.is_identity()) return false;
  G1 ps[2] = {rk, -pk_hrr};
  G2 qs[2] = {pk_patient, G2::generator()};
  return multi_pairing(ps, qs).is_one();
}

HrrPseudonym transform_to_hrr(const PseudonymAccessInfo& pai, const G1& pk_hrr) {
  if (!rk_check(pai.rk, pai.pseudonym.pk, pk_hrr)) throw ProtocolError(Reason::kInvalidReEncryptionKey);
  return HrrPseudonym{pai.pseudonym.p1, pairing(pai.rk, pai.pseudonym.p2)};
}

Bytes hrr_recover(const HrrPseudonym& hp, ByteView ct, const PreHrrKeys& keys, ByteView salt) {
  GT id_gt = hp.q1 / hp.q2.pow(keys.y.inverse());
  auto plain = aead_open(derive_key(id_gt, salt), ct, {});
  if (!plain) throw ProtocolError(Reason::kCiphertextPseudonymMismatch);
  return *plain;
}

}  // namespace hidm
