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

#include <gtest/gtest.h>

#include "hidm/common/aead.hpp"
#include "hidm/common/error.hpp"
#include "hidm/pre/pre.hpp"
#include "test_util.hpp"

namespace hidm {
namespace {

using testing::flip_bit;
using testing::rng_for;

struct Parties {
  PrePatientKeys patient;
  PreHrrKeys hrr;
};

Parties make_parties(Rng& rng) { return Parties{PrePatientKeys::generate(rng), PreHrrKeys::generate(rng)}; }

// Reference values from an independent HKDF-SHA256 implementation over the
// canonical encodings of z^1, z^2, z^3.
TEST(DeriveKey, MatchesReferenceVectors) {
  const PairingContext& ctx = PairingContext::get();
  const char* expected[] = {
      "33487a12149892e404a9e95c8f558eb0814838589d186559360e758ac0c4df36",
      "a6779e12365bb80c3a9ab74d9908f1b1dd5d15ad03325b302ff84baafcca44b6",
      "e27491d4dd28248587c9d6ffc17c40ee1e0e09c35ba91cc946bde1453e388a11",
  };
  for (std::uint64_t k = 1; k <= 3; ++k) {
    EXPECT_EQ(to_hex(derive_key(ctx.z_pow(Scalar::from_u64(k)), kSystemSalt)), expected[k - 1]) << k;
  }
}

TEST(DeriveKey, DeterministicAndSaltSeparated) {
  const PairingContext& ctx = PairingContext::get();
  GT e = ctx.z_pow(Scalar::from_u64(42));
  EXPECT_EQ(derive_key(e, kSystemSalt), derive_key(e, kSystemSalt));
  EXPECT_EQ(derive_key(e, kSystemSalt).size(), kAeadKeySize);
  Bytes other(kSystemSalt.begin(), kSystemSalt.end());
  other[0] ^= 1;
  EXPECT_NE(derive_key(e, kSystemSalt), derive_key(e, other));
  EXPECT_NE(derive_key(e, kSystemSalt), derive_key(e, kSystemSalt, "another-context"));
}

TEST(Pseudonym, HonestRoundTrip) {
  auto rng = rng_for("pre-honest");
  Parties s = make_parties(*rng);
  Bytes id = rng->bytes(32);
  GeneratedPseudonym g = pseudonym_generate(id, s.patient, s.hrr.pk, *rng);
  EXPECT_EQ(g.pai.pseudonym.to_bytes().size(), Pseudonym::kEncodedSize);
  EXPECT_EQ(g.pai.pseudonym.pk, s.patient.pk);
  EXPECT_TRUE(rk_check(g.pai.rk, g.pai.pseudonym.pk, s.hrr.pk));
  HrrPseudonym hp = transform_to_hrr(g.pai, s.hrr.pk);
  const PairingContext& ctx = PairingContext::get();
  EXPECT_EQ(hp.q1, ctx.z_pow(g.r + g.h));
  EXPECT_EQ(hp.q2, ctx.z_pow(g.r * s.hrr.y));
  EXPECT_EQ(hrr_recover(hp, g.pai.ct, s.hrr), id);
  EXPECT_EQ(PseudonymAccessInfo::from_bytes(g.pai.to_bytes()), g.pai);
  EXPECT_EQ(HrrPseudonym::from_bytes(hp.to_bytes()), hp);
}

TEST(Pseudonym, ZeroBlindingDegenerates) {
  auto rng = rng_for("pre-zero");
  Parties s = make_parties(*rng);
  Bytes id = to_bytes("patient-zero");
  GeneratedPseudonym g = pseudonym_generate_with(id, s.patient, s.hrr.pk, Scalar(), Bytes(kAeadNonceSize, 0));
  EXPECT_EQ(g.pai.pseudonym.p1, PairingContext::get().z_pow(patient_id_hash(id)));
  EXPECT_TRUE(g.pai.pseudonym.p2.is_identity());
  HrrPseudonym hp = transform_to_hrr(g.pai, s.hrr.pk);
  EXPECT_TRUE(hp.q2.is_one());
  EXPECT_EQ(hrr_recover(hp, g.pai.ct, s.hrr), id);
}

TEST(Pseudonym, FreshPerCallSameIdentity) {
  auto rng = rng_for("pre-fresh");
  Parties s = make_parties(*rng);
  for (int i = 0; i < 100; ++i) {
    Bytes id = rng->bytes(16 + i % 17);
    GeneratedPseudonym a = pseudonym_generate(id, s.patient, s.hrr.pk, *rng);
    GeneratedPseudonym b = pseudonym_generate(id, s.patient, s.hrr.pk, *rng);
    ASSERT_NE(a.pai.pseudonym.p1, b.pai.pseudonym.p1);
    ASSERT_NE(a.pai.pseudonym.p2, b.pai.pseudonym.p2);
    ASSERT_NE(a.pai.ct, b.pai.ct);
    ASSERT_EQ(hrr_recover(transform_to_hrr(a.pai, s.hrr.pk), a.pai.ct, s.hrr), id);
    ASSERT_EQ(hrr_recover(transform_to_hrr(b.pai, s.hrr.pk), b.pai.ct, s.hrr), id);
  }
}

TEST(Pseudonym, RoundTripOverRandomIdentities) {
  auto rng = rng_for("pre-roundtrip");
  Parties s = make_parties(*rng);
  for (int i = 0; i < 100; ++i) {
    Bytes id = rng->bytes(1 + i);
    GeneratedPseudonym g = pseudonym_generate(id, s.patient, s.hrr.pk, *rng);
    ASSERT_EQ(hrr_recover(transform_to_hrr(g.pai, s.hrr.pk), g.pai.ct, s.hrr), id);
  }
}

TEST(RkCheck, HonestDoubledAndRandom) {
  auto rng = rng_for("pre-rk");
  Parties s = make_parties(*rng);
  G1 rk = s.hrr.pk * s.patient.x.inverse();
  EXPECT_TRUE(rk_check(rk, s.patient.pk, s.hrr.pk));
  EXPECT_FALSE(rk_check(rk + rk, s.patient.pk, s.hrr.pk));
  EXPECT_FALSE(rk_check(G1(), s.patient.pk, s.hrr.pk));
  EXPECT_FALSE(rk_check(rk, G2(), s.hrr.pk));
  for (int i = 0; i < 1000; ++i) {
    ASSERT_FALSE(rk_check(G1::generator() * Scalar::random_nonzero(*rng), s.patient.pk, s.hrr.pk));
  }
}

TEST(RkCheck, TransformRejectsBadKey) {
  auto rng = rng_for("pre-rk-transform");
  Parties s = make_parties(*rng);
  GeneratedPseudonym g = pseudonym_generate(to_bytes("id"), s.patient, s.hrr.pk, *rng);
  g.pai.rk = g.pai.rk + G1::generator();
  try {
    transform_to_hrr(g.pai, s.hrr.pk);
    FAIL() << "expected rejection";
  } catch (const ProtocolError& e) {
    EXPECT_EQ(e.reason(), Reason::kInvalidReEncryptionKey);
  }
  // A different HRR key does not satisfy the check either.
  EXPECT_FALSE(rk_check(pseudonym_generate(to_bytes("id"), s.patient, s.hrr.pk, *rng).pai.rk, s.patient.pk,
                        PreHrrKeys::generate(*rng).pk));
}

TEST(Recover, CrossPairingAndTamperingFail) {
  auto rng = rng_for("pre-cross");
  Parties s = make_parties(*rng);
  PrePatientKeys other = PrePatientKeys::generate(*rng);
  for (int i = 0; i < 50; ++i) {
    GeneratedPseudonym a = pseudonym_generate(rng->bytes(16), s.patient, s.hrr.pk, *rng);
    GeneratedPseudonym b = pseudonym_generate(rng->bytes(16), other, s.hrr.pk, *rng);
    HrrPseudonym hb = transform_to_hrr(b.pai, s.hrr.pk);
    try {
      hrr_recover(hb, a.pai.ct, s.hrr);
      FAIL() << "cross pairing accepted";
    } catch (const ProtocolError& e) {
      EXPECT_EQ(e.reason(), Reason::kCiphertextPseudonymMismatch);
    }
    HrrPseudonym ha = transform_to_hrr(a.pai, s.hrr.pk);
    EXPECT_THROW(hrr_recover(ha, flip_bit(a.pai.ct, 8 * 12 + i), s.hrr), ProtocolError);
    EXPECT_THROW(hrr_recover(ha, a.pai.ct, PreHrrKeys::generate(*rng)), ProtocolError);
  }
}

TEST(Pseudonym, DecodingRejectsMalformed) {
  auto rng = rng_for("pre-decode");
  Parties s = make_parties(*rng);
  Bytes enc = pseudonym_generate(to_bytes("id"), s.patient, s.hrr.pk, *rng).pai.pseudonym.to_bytes();
  EXPECT_THROW(Pseudonym::from_bytes(ByteView(enc).first(enc.size() - 1)), DecodeError);
  EXPECT_THROW(PseudonymAccessInfo::from_bytes(Bytes{1, 2, 3}), DecodeError);
}

TEST(Keys, ZeroSecretRejected) {
  EXPECT_THROW(PrePatientKeys::from_secret(Scalar()), std::invalid_argument);
  EXPECT_THROW(PreHrrKeys::from_secret(Scalar()), std::invalid_argument);
}

}  // namespace
}  // namespace hidm
