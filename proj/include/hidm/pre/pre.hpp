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

// Pseudonyms through single-hop, unidirectional proxy re-encryption.
//
//   patient:  x, pk = x g2          HRR: y, pk_hrr = y g1
//   pseudonym for identifier id, h = H(id), fresh r:
//     P1 = z^(r + h), P2 = r pk, rk = x^-1 pk_hrr = (y/x) g1
//     ct = AEAD(id) under HKDF(salt, enc(z^h), info)
//   HO:   checks e(rk, pk) == e(pk_hrr, g2), sends (P1, e(rk, P2)) = (z^(r+h), z^(ry))
//   HRR:  z^h = Q1 / Q2^(1/y), re-derives the key, decrypts ct
//
// The pseudonym carries the generating public key pk; patients rotate that
// key together with the pseudonym.

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "hidm/algebra/curve.hpp"
#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"

namespace hidm {

inline constexpr std::string_view kPatientIdInfo = "HIDM-PRE-PatientID-Derivation-v1";

// Deployment-specific salt; every party in one deployment uses the same one.
inline constexpr std::array<std::uint8_t, 32> kSystemSalt = {
    0xd7, 0x50, 0xce, 0x75, 0x32, 0x21, 0xd5, 0x74, 0x57, 0xf0, 0x4d, 0x25, 0x8e, 0x71, 0x82, 0x83,
    0x42, 0x49, 0x3f, 0xb4, 0x51, 0xd7, 0x47, 0x70, 0xa3, 0xa2, 0x76, 0xe8, 0x17, 0x27, 0xd1, 0x1f};

Bytes derive_key(const GT& id_gt, ByteView salt, std::string_view info = kPatientIdInfo);

struct PrePatientKeys {
  Scalar x;
  G2 pk;

  static PrePatientKeys generate(Rng& rng);
  static PrePatientKeys from_secret(const Scalar& x);
};

struct PreHrrKeys {
  Scalar y;
  G1 pk;

  static PreHrrKeys generate(Rng& rng);
  static PreHrrKeys from_secret(const Scalar& y);
};

struct Pseudonym {
  GT p1;
  G2 p2;
  G2 pk;  // generating public key

  static constexpr std::size_t kEncodedSize = GT::kEncodedSize + 2 * G2::kEncodedSize;
  // p1 || p2 || pk; used as the identity string for signatures.
  Bytes to_bytes() const;
  static Pseudonym from_bytes(ByteView b);
  bool operator==(const Pseudonym&) const = default;
};

struct PseudonymAccessInfo {
  Pseudonym pseudonym;
  G1 rk;
  Bytes ct;  // nonce || body || tag

  Bytes to_bytes() const;
  static PseudonymAccessInfo from_bytes(ByteView b);
  bool operator==(const PseudonymAccessInfo&) const = default;
};

// Distinct from Pseudonym so it cannot be fed back into a transformation.
struct HrrPseudonym {
  GT q1;
  GT q2;

  Bytes to_bytes() const;
  static HrrPseudonym from_bytes(ByteView b);
  bool operator==(const HrrPseudonym&) const = default;
};

struct GeneratedPseudonym {
  PseudonymAccessInfo pai;
  Scalar r;  // kept by the patient for the binding proof
  Scalar h;
};

Scalar patient_id_hash(ByteView patient_id);

GeneratedPseudonym pseudonym_generate(ByteView patient_id, const PrePatientKeys& keys, const G1& pk_hrr, Rng& rng,
                                      ByteView salt = kSystemSalt);
// Injected r and AEAD nonce, for reproducible vectors.
GeneratedPseudonym pseudonym_generate_with(ByteView patient_id, const PrePatientKeys& keys, const G1& pk_hrr,
                                           const Scalar& r, ByteView nonce, ByteView salt = kSystemSalt);

bool rk_check(const G1& rk, const G2& pk_patient, const G1& pk_hrr);

// Throws ProtocolError("invalid re-encryption key") when rk_check fails.
HrrPseudonym transform_to_hrr(const PseudonymAccessInfo& pai, const G1& pk_hrr);

// Throws ProtocolError("ciphertext/pseudonym mismatch") on AEAD failure.
Bytes hrr_recover(const HrrPseudonym& hp, ByteView ct, const PreHrrKeys& keys, ByteView salt = kSystemSalt);

}  // namespace hidm
