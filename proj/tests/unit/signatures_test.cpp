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

#include <set>

#include "hidm/algebra/hash.hpp"
#include "hidm/algebra/schnorr_group.hpp"
#include "hidm/common/error.hpp"
#include "hidm/signatures/cl.hpp"
#include "hidm/signatures/ibs.hpp"
#include "hidm/signatures/pbs.hpp"
#include "hidm/signatures/rsa.hpp"
#include "hidm/signatures/schnorr.hpp"
#include "test_util.hpp"

namespace hidm {
namespace {

using testing::flip_bit;
using testing::rng_for;

const SchnorrGroup& group() { return SchnorrGroup::standard(); }
const SchnorrGroup kSmall{23, 11, 2};

// ---- Schnorr ---------------------------------------------------------------

// p=23, q=11, g=2, x=3 (Y=8), nonce 5 (R=9), challenge 7: s = 5 + 7*3 mod 11 = 4
// and g^4 * Y^-7 mod 23 = 9.
TEST(Schnorr, SmallGroupHandVector) {
  SchnorrKeypair k = SchnorrKeypair::from_secret(kSmall, 3);
  EXPECT_EQ(k.y, 8);
  EXPECT_EQ(powm(kSmall.g, 5, kSmall.p), 9);
  BigInt s = schnorr_respond(kSmall, 5, 7, k.x);
  EXPECT_EQ(s, 4);
  EXPECT_EQ(schnorr_recommit(kSmall, 7, s, k.y), 9);
}

TEST(Schnorr, CompletenessAndBinding) {
  auto rng = rng_for("schnorr");
  SchnorrKeypair k = SchnorrKeypair::generate(group(), *rng);
  for (int i = 0; i < 20; ++i) {
    Bytes msg = rng->bytes(1 + i);
    SchnorrSig sig = schnorr_sign(group(), msg, k, *rng);
    EXPECT_TRUE(schnorr_verify(group(), msg, sig, k.y));
    EXPECT_FALSE(schnorr_verify(group(), flip_bit(msg, i), sig, k.y));
    SchnorrSig tampered = sig;
    tampered.c += 1;
    EXPECT_FALSE(schnorr_verify(group(), msg, tampered, k.y));
    EXPECT_EQ(SchnorrSig::from_bytes(group(), sig.to_bytes(group())), sig);
  }
  // Fresh nonce per call.
  Bytes msg = to_bytes("same");
  EXPECT_NE(schnorr_sign(group(), msg, k, *rng), schnorr_sign(group(), msg, k, *rng));
}

TEST(Schnorr, RandomPairsRejected) {
  auto rng = rng_for("schnorr-random");
  SchnorrKeypair k = SchnorrKeypair::generate(group(), *rng);
  for (int i = 0; i < 1000; ++i) {
    SchnorrSig sig{random_below(*rng, group().q), random_below(*rng, group().q)};
    ASSERT_FALSE(schnorr_verify(group(), rng->bytes(16), sig, k.y));
  }
  // Out-of-range values are rejected, not reduced.
  SchnorrSig big{group().q, 1};
  EXPECT_FALSE(schnorr_verify(group(), to_bytes("m"), big, k.y));
}

// ---- partially blind Schnorr -----------------------------------------------

// Small-group unblinding identity: with r=5, alpha=2, beta=3 the blinded
// commitment is R' = 9 * 2^2 * 8^3 mod 23 = 9, and the final (c, s) must
// satisfy g^s Y^-c = R'.
TEST(Pbs, SmallGroupUnblindingIdentity) {
  SchnorrKeypair k = SchnorrKeypair::from_secret(kSmall, 3);
  PbsSignerSession signer(kSmall, k, BigInt(5));
  EXPECT_EQ(signer.commitment(), 9);
  Bytes ati(16, 0x11);
  PbsUserSession user(kSmall, k.y, ati, BigInt(2), BigInt(3), Bytes(32, 0x22));
  BigInt cu = user.blind(signer.commitment());
  EXPECT_EQ(user.blinded_commitment(), 9);
  PartiallyBlindSig sig = user.finish(signer.respond(cu, 1000), 1000);
  BigInt lhs = mod(powm(kSmall.g, sig.s, kSmall.p) * powm(invert(k.y, kSmall.p), sig.c, kSmall.p), kSmall.p);
  EXPECT_EQ(lhs, 9);
  EXPECT_TRUE(pbs_verify(kSmall, ati, 1000, sig, k.y));
}

TEST(Pbs, CompletenessAndCommonInfoBinding) {
  auto rng = rng_for("pbs");
  SchnorrKeypair k = SchnorrKeypair::generate(group(), *rng);
  Id16 ati = rng->uuid_v4();
  auto r = pbs_issue(group(), 1767312000, ati, k, *rng, *rng);
  EXPECT_TRUE(pbs_verify(group(), ati, 1767312000, r.sig, k.y));
  EXPECT_FALSE(pbs_verify(group(), ati, 1767312001, r.sig, k.y));
  EXPECT_FALSE(pbs_verify(group(), ati, 1767311999, r.sig, k.y));
  EXPECT_EQ(PartiallyBlindSig::from_bytes(group(), r.sig.to_bytes(group())), r.sig);
}

TEST(Pbs, SignerTranscriptHoldsNoMessage) {
  auto rng = rng_for("pbs-blind");
  SchnorrKeypair k = SchnorrKeypair::generate(group(), *rng);
  Id16 ati = rng->uuid_v4();
  auto r = pbs_issue(group(), 1767312000, ati, k, *rng, *rng);
  Bytes view;
  for (const BigInt* v : {&r.transcript.commitment, &r.transcript.blinded_challenge, &r.transcript.blinded_response}) {
    append(view, bigint_to_bytes(*v, group().element_size()));
  }
  Bytes commit = pbs_message_commitment(ati, r.sig.t);
  EXPECT_FALSE(contains_subsequence(view, ati));
  EXPECT_FALSE(contains_subsequence(view, commit));
  EXPECT_FALSE(contains_subsequence(view, r.sig.t));
  // The signer's values differ from the final signature's.
  EXPECT_NE(r.transcript.blinded_response, r.sig.s);
  EXPECT_NE(r.transcript.blinded_challenge, r.sig.c);
}

TEST(Pbs, MessageMutationSweep) {
  auto rng = rng_for("pbs-mutation");
  SchnorrKeypair k = SchnorrKeypair::generate(group(), *rng);
  Id16 ati = rng->uuid_v4();
  auto r = pbs_issue(group(), 1767312000, ati, k, *rng, *rng);
  for (int i = 0; i < 1000; ++i) {
    Bytes other = i % 2 ? flip_bit(Bytes(ati.begin(), ati.end()), i) : rng->bytes(16);
    ASSERT_FALSE(pbs_verify(group(), other, 1767312000, r.sig, k.y));
  }
}

TEST(Pbs, SessionsAreSingleUse) {
  auto rng = rng_for("pbs-single");
  SchnorrKeypair k = SchnorrKeypair::generate(group(), *rng);
  PbsSignerSession signer(group(), k, *rng);
  signer.respond(BigInt(1), 10);
  EXPECT_THROW(signer.respond(BigInt(2), 10), std::logic_error);
  PbsUserSession user(group(), k.y, to_bytes("m"), *rng);
  EXPECT_THROW(user.blind(BigInt(5)), ProtocolError);  // not a subgroup element
}

// ---- CL signatures ---------------------------------------------------------

std::vector<Bytes> sample_attrs(Rng& rng) {
  std::vector<Bytes> a;
  for (int i = 0; i < 6; ++i) a.push_back(rng.bytes(8 + i));
  return a;
}

class ClTest : public ::testing::TestWithParam<ClVariant> {};

TEST_P(ClTest, CompletenessAndBinding) {
  auto rng = rng_for(std::string("cl-") + std::string(cl_variant_name(GetParam())));
  ClKeypair key = ClKeypair::generate(GetParam(), 6, *rng);
  EXPECT_TRUE(key.self_test(*rng));
  auto attrs = sample_attrs(*rng);
  ClSignature sig = cl_sign(attrs, key, *rng);
  EXPECT_TRUE(cl_verify(attrs, sig, key.pub));
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    auto changed = attrs;
    changed[i] = flip_bit(changed[i], 3);
    EXPECT_FALSE(cl_verify(changed, sig, key.pub)) << i;
  }
  auto reordered = attrs;
  std::swap(reordered[0], reordered[1]);
  EXPECT_FALSE(cl_verify(reordered, sig, key.pub));
  EXPECT_EQ(ClSignature::from_bytes(sig.to_bytes()), sig);
  EXPECT_EQ(ClPublicKey::from_bytes(key.pub.to_bytes()), key.pub);
  attrs.pop_back();
  EXPECT_THROW(cl_sign(attrs, key, *rng), std::invalid_argument);
  EXPECT_FALSE(cl_verify(attrs, sig, key.pub));
}

TEST_P(ClTest, ForeignKeyRejects) {
  auto rng = rng_for(std::string("cl-foreign-") + std::string(cl_variant_name(GetParam())));
  ClKeypair a = ClKeypair::generate(GetParam(), 6, *rng);
  ClKeypair b = ClKeypair::generate(GetParam(), 6, *rng);
  auto attrs = sample_attrs(*rng);
  EXPECT_FALSE(cl_verify(attrs, cl_sign(attrs, a, *rng), b.pub));
}

INSTANTIATE_TEST_SUITE_P(Variants, ClTest, ::testing::Values(ClVariant::kRsa, ClVariant::kPairing),
                         [](const auto& info) { return info.param == ClVariant::kRsa ? "Rsa" : "Pairing"; });

TEST(Cl, CrossVariantVerifyFails) {
  auto rng = rng_for("cl-cross");
  ClKeypair rsa = ClKeypair::generate(ClVariant::kRsa, 6, *rng);
  ClKeypair pairing = ClKeypair::generate(ClVariant::kPairing, 6, *rng);
  for (int i = 0; i < 10; ++i) {
    auto attrs = sample_attrs(*rng);
    EXPECT_FALSE(cl_verify(attrs, cl_sign(attrs, pairing, *rng), rsa.pub));
    EXPECT_FALSE(cl_verify(attrs, cl_sign(attrs, rsa, *rng), pairing.pub));
  }
}

TEST(Cl, PairingSignatureSmallerThanRsa) {
  auto rng = rng_for("cl-size");
  auto attrs = sample_attrs(*rng);
  ClKeypair rsa = ClKeypair::generate(ClVariant::kRsa, 6, *rng);
  ClKeypair pairing = ClKeypair::generate(ClVariant::kPairing, 6, *rng);
  EXPECT_LT(cl_sign(attrs, pairing, *rng).payload_size(), cl_sign(attrs, rsa, *rng).payload_size());
}

TEST(Cl, VariantNames) {
  EXPECT_EQ(parse_cl_variant("cl-rsa"), ClVariant::kRsa);
  EXPECT_EQ(parse_cl_variant("cl-pairing"), ClVariant::kPairing);
  EXPECT_FALSE(parse_cl_variant("cl-other"));
}

// ---- blind identity-based signatures -----------------------------------------

TEST(Ibs, BlindExtractionMatchesDirectExtraction) {
  auto rng = rng_for("ibs-extract");
  IbsMasterKey master = IbsMasterKey::generate(*rng);
  Bytes identity = rng->bytes(768);
  IbsExtractResult a = ibs_blind_extract(identity, master, *rng);
  IbsExtractResult b = ibs_blind_extract(identity, master, *rng);
  EXPECT_TRUE(a.key.check(master.mpk));
  EXPECT_EQ(a.key.d, ibs_extract(identity, master).d);
  EXPECT_EQ(a.key.d, b.key.d);
  EXPECT_NE(a.issuer_view, b.issuer_view);
  EXPECT_NE(a.issuer_view, ibs_identity_point(identity));
  EXPECT_THROW(ibs_blind_issue(G1(), master), ProtocolError);
}

TEST(Ibs, SignVerifyAndIdentityBinding) {
  auto rng = rng_for("ibs-sign");
  IbsMasterKey master = IbsMasterKey::generate(*rng);
  Bytes id_a = rng->bytes(64), id_b = rng->bytes(64);
  IbsUserKey key = ibs_extract(id_a, master);
  Bytes msg = to_bytes("appointment request");
  IbsSignature sig = ibs_sign(msg, key, *rng);
  EXPECT_TRUE(ibs_verify(msg, sig, id_a, master.mpk));
  EXPECT_FALSE(ibs_verify(msg, sig, id_b, master.mpk));
  EXPECT_FALSE(ibs_verify(to_bytes("appointment requesT"), sig, id_a, master.mpk));
  EXPECT_FALSE(ibs_verify(msg, sig, id_a, IbsMasterKey::generate(*rng).mpk));
  EXPECT_EQ(IbsSignature::from_bytes(sig.to_bytes()), sig);
}

TEST(Ibs, MutatedSignaturesRejected) {
  auto rng = rng_for("ibs-mutation");
  IbsMasterKey master = IbsMasterKey::generate(*rng);
  Bytes id = rng->bytes(32);
  Bytes msg = to_bytes("m");
  IbsSignature sig = ibs_sign(msg, ibs_extract(id, master), *rng);
  for (int i = 0; i < 1000; ++i) {
    IbsSignature forged = sig;
    Scalar delta = Scalar::random_nonzero(*rng);
    if (i % 2) {
      forged.u = forged.u + G1::generator() * delta;
    } else {
      forged.v = forged.v + G1::generator() * delta;
    }
    ASSERT_FALSE(ibs_verify(msg, forged, id, master.mpk));
  }
}

// ---- RSA -------------------------------------------------------------------

TEST(Rsa, SignVerify) {
  auto rng = rng_for("rsa");
  RsaKeypair k = RsaKeypair::generate(2048, *rng);
  EXPECT_EQ(k.pub.modulus_size(), 256u);
  Bytes msg = to_bytes("legitimacy credential");
  Bytes sig = rsa_sign(msg, k);
  EXPECT_TRUE(rsa_verify(msg, sig, k.pub));
  EXPECT_FALSE(rsa_verify(to_bytes("legitimacy credentiaL"), sig, k.pub));
  EXPECT_FALSE(rsa_verify(msg, flip_bit(sig, 77), k.pub));
  EXPECT_FALSE(rsa_verify(msg, Bytes(3, 1), k.pub));
  EXPECT_EQ(RsaPublicKey::from_bytes(k.pub.to_bytes()), k.pub);
}

}  // namespace
}  // namespace hidm
