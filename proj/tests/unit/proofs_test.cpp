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
#include "hidm/proofs/pbp.hpp"
#include "hidm/proofs/pok.hpp"
#include "test_util.hpp"

namespace hidm {
namespace {

using testing::flip_bit;
using testing::rng_for;

// ---- credential proofs -----------------------------------------------------

struct Signed {
  ClKeypair key;
  std::vector<Bytes> attrs;
  ClSignature sig;
};

Signed make_signed(ClVariant v, Rng& rng) {
  ClKeypair key = ClKeypair::generate(v, 6, rng);
  std::vector<Bytes> attrs;
  for (int i = 0; i < 6; ++i) attrs.push_back(rng.bytes(16 + i));
  ClSignature sig = cl_sign(attrs, key, rng);
  return Signed{std::move(key), std::move(attrs), std::move(sig)};
}

class PokTest : public ::testing::TestWithParam<ClVariant> {
 protected:
  std::unique_ptr<Rng> rng = rng_for(std::string("pok-") + std::string(cl_variant_name(GetParam())));
  Signed s = make_signed(GetParam(), *rng);
  Bytes context = to_bytes("E3|did:hidm:pta|nonce-1");
};

TEST_P(PokTest, DisclosesOnlyRequestedSlots) {
  for (std::size_t slot : {std::size_t{2}, std::size_t{4}}) {
    ClProof p = cl_prove(s.key.pub, s.attrs, s.sig, {slot}, context, *rng);
    EXPECT_EQ(p.variant(), GetParam());
    ASSERT_EQ(p.disclosed.size(), 1u);
    EXPECT_EQ(p.disclosed.at(slot), s.attrs[slot]);
    EXPECT_TRUE(cl_proof_verify(p, s.key.pub, context));
    EXPECT_EQ(ClProof::from_bytes(p.to_bytes()), p);
    Bytes wire = p.to_bytes();
    for (std::size_t i = 0; i < s.attrs.size(); ++i) {
      if (i != slot) EXPECT_FALSE(contains_subsequence(wire, s.attrs[i])) << i;
    }
  }
  ClProof none = cl_prove(s.key.pub, s.attrs, s.sig, {}, context, *rng);
  EXPECT_TRUE(none.disclosed.empty());
  EXPECT_TRUE(cl_proof_verify(none, s.key.pub, context));
}

TEST_P(PokTest, ContextBinding) {
  ClProof p = cl_prove(s.key.pub, s.attrs, s.sig, {2}, context, *rng);
  EXPECT_FALSE(cl_proof_verify(p, s.key.pub, to_bytes("E4|did:hidm:pta|nonce-1")));
  EXPECT_FALSE(cl_proof_verify(p, s.key.pub, to_bytes("E3|did:hidm:pta|nonce-2")));
  EXPECT_FALSE(cl_proof_verify(p, s.key.pub, {}));
}

TEST_P(PokTest, AlteredDisclosureRejected) {
  ClProof p = cl_prove(s.key.pub, s.attrs, s.sig, {2}, context, *rng);
  ClProof altered = p;
  altered.disclosed[2] = flip_bit(altered.disclosed[2], 0);
  EXPECT_FALSE(cl_proof_verify(altered, s.key.pub, context));
  ClProof moved = p;
  moved.disclosed.clear();
  moved.disclosed[3] = s.attrs[2];
  EXPECT_FALSE(cl_proof_verify(moved, s.key.pub, context));
  ClProof out_of_range = p;
  out_of_range.disclosed[9] = s.attrs[0];
  EXPECT_FALSE(cl_proof_verify(out_of_range, s.key.pub, context));
}

TEST_P(PokTest, WrongIssuerRejected) {
  ClKeypair other = ClKeypair::generate(GetParam(), 6, *rng);
  ClProof p = cl_prove(s.key.pub, s.attrs, s.sig, {2}, context, *rng);
  EXPECT_FALSE(cl_proof_verify(p, other.pub, context));
  // A signature from another issuer cannot be proven under this key.
  ClSignature foreign = cl_sign(s.attrs, other, *rng);
  EXPECT_THROW(
      {
        ClProof q = cl_prove(s.key.pub, s.attrs, foreign, {2}, context, *rng);
        if (!cl_proof_verify(q, s.key.pub, context)) throw ProtocolError(Reason::kCredentialProofRejected);
      },
      std::exception);
}

TEST_P(PokTest, ProofsAreRerandomized) {
  ClProof a = cl_prove(s.key.pub, s.attrs, s.sig, {2}, context, *rng);
  ClProof b = cl_prove(s.key.pub, s.attrs, s.sig, {2}, context, *rng);
  EXPECT_EQ(a.disclosed, b.disclosed);
  if (GetParam() == ClVariant::kRsa) {
    const auto& x = std::get<ClRsaProof>(a.body);
    const auto& y = std::get<ClRsaProof>(b.body);
    EXPECT_NE(x.a_prime, y.a_prime);
    EXPECT_NE(x.c, y.c);
    EXPECT_NE(x.e_hat, y.e_hat);
    EXPECT_NE(x.v_hat, y.v_hat);
    for (const auto& [slot, v] : x.m_hat) EXPECT_NE(v, y.m_hat.at(slot)) << slot;
  } else {
    const auto& x = std::get<ClPairingProof>(a.body);
    const auto& y = std::get<ClPairingProof>(b.body);
    EXPECT_NE(x.randomized, y.randomized);
    EXPECT_NE(x.c, y.c);
    EXPECT_NE(x.s_rho, y.s_rho);
    for (const auto& [slot, v] : x.s_m) EXPECT_NE(v, y.s_m.at(slot)) << slot;
  }
}

TEST_P(PokTest, EncodingMutationsRejected) {
  ClProof p = cl_prove(s.key.pub, s.attrs, s.sig, {2}, context, *rng);
  Bytes wire = p.to_bytes();
  int accepted = 0;
  for (int i = 0; i < 200; ++i) {
    Bytes m = flip_bit(wire, rng->next_u64() % (wire.size() * 8));
    try {
      if (cl_proof_verify(ClProof::from_bytes(m), s.key.pub, context)) ++accepted;
    } catch (const DecodeError&) {
    }
  }
  EXPECT_EQ(accepted, 0);
}

INSTANTIATE_TEST_SUITE_P(Variants, PokTest, ::testing::Values(ClVariant::kRsa, ClVariant::kPairing),
                         [](const auto& info) { return info.param == ClVariant::kRsa ? "Rsa" : "Pairing"; });

// ---- pseudonym binding proof -------------------------------------------------

struct Bound {
  PrePatientKeys keys;
  Bytes id;
  GeneratedPseudonym g;
};

Bound make_bound(Rng& rng) {
  PrePatientKeys keys = PrePatientKeys::generate(rng);
  PreHrrKeys hrr = PreHrrKeys::generate(rng);
  Bytes id = rng.bytes(16);
  GeneratedPseudonym g = pseudonym_generate(id, keys, hrr.pk, rng);
  return Bound{keys, id, g};
}

TEST(Pbp, HonestProofsVerify) {
  auto rng = rng_for("pbp-honest");
  for (int i = 0; i < 50; ++i) {
    Bound b = make_bound(*rng);
    PbProof p = pbp_prove(b.g.pai.pseudonym, b.g.r, b.g.h, *rng);
    ASSERT_TRUE(pbp_verify(b.g.pai.pseudonym, p, b.g.h));
    ASSERT_EQ(PbProof::from_bytes(p.to_bytes()), p);
    PbProof strict = pbp_prove(b.g.pai.pseudonym, b.g.r, b.g.h, *rng, PbpMode::kStrict);
    ASSERT_TRUE(pbp_verify(b.g.pai.pseudonym, strict, b.g.h, PbpMode::kStrict));
    ASSERT_TRUE(pbp_verify(b.g.pai.pseudonym, strict, b.g.h, PbpMode::kIndependent));
  }
}

TEST(Pbp, ZeroBlindingReducesToCommitments) {
  auto rng = rng_for("pbp-zero");
  PrePatientKeys keys = PrePatientKeys::generate(*rng);
  Bytes id = to_bytes("id");
  GeneratedPseudonym g =
      pseudonym_generate_with(id, keys, PreHrrKeys::generate(*rng).pk, Scalar(), Bytes(kAeadNonceSize, 0));
  Scalar t1 = Scalar::from_u64(1234), t2 = Scalar::from_u64(5678);
  PbProof p = pbp_prove_with(g.pai.pseudonym, g.r, g.h, t1, t2);
  EXPECT_EQ(p.s1, t1);
  EXPECT_EQ(p.s2, t2);
  EXPECT_TRUE(pbp_verify(g.pai.pseudonym, p, g.h));
}

// Both verification equations recomputed from known exponents: with P1 = z^(r+h),
// P2 = (r x) g2 and injected t1, t2, each side equals z^(t1 + c r) resp.
// (x (t2 + c r)) g2.
TEST(Pbp, ExponentArithmeticOracle) {
  auto rng = rng_for("pbp-exponent");
  const PairingContext& ctx = PairingContext::get();
  for (int i = 0; i < 20; ++i) {
    Scalar x = Scalar::random_nonzero(*rng), r = Scalar::random_nonzero(*rng);
    Scalar t1 = Scalar::random(*rng), t2 = Scalar::random(*rng);
    PrePatientKeys keys = PrePatientKeys::from_secret(x);
    Bytes id = rng->bytes(16);
    GeneratedPseudonym g =
        pseudonym_generate_with(id, keys, PreHrrKeys::generate(*rng).pk, r, rng->bytes(kAeadNonceSize));
    Scalar h = patient_id_hash(id);
    ASSERT_EQ(g.pai.pseudonym.p1, ctx.z_pow(r + h));
    ASSERT_EQ(g.pai.pseudonym.p2, G2::generator() * (r * x));
    PbProof p = pbp_prove_with(g.pai.pseudonym, r, h, t1, t2);
    ASSERT_EQ(p.t1, ctx.z_pow(t1));
    ASSERT_EQ(p.t2, G2::generator() * (t2 * x));
    ASSERT_EQ(p.c, pbp_challenge(g.pai.pseudonym, p.t1, p.t2, h));
    ASSERT_EQ(p.s1, t1 + p.c * r);
    ASSERT_EQ(p.s2, t2 + p.c * r);
    GT lhs1 = ctx.z_pow(p.s1);
    GT rhs1 = p.t1 * (g.pai.pseudonym.p1 / ctx.z_pow(h)).pow(p.c);
    ASSERT_EQ(lhs1, ctx.z_pow(t1 + p.c * r));
    ASSERT_EQ(lhs1, rhs1);
    G2 lhs2 = keys.pk * p.s2;
    ASSERT_EQ(lhs2, G2::generator() * (x * (t2 + p.c * r)));
    ASSERT_EQ(lhs2, p.t2 + g.pai.pseudonym.p2 * p.c);
    ASSERT_TRUE(pbp_verify(g.pai.pseudonym, p, h));
  }
}

TEST(Pbp, WrongIdentifierRejected) {
  auto rng = rng_for("pbp-wrong-h");
  Bound b = make_bound(*rng);
  PbProof p = pbp_prove(b.g.pai.pseudonym, b.g.r, b.g.h, *rng);
  EXPECT_FALSE(pbp_verify(b.g.pai.pseudonym, p, patient_id_hash(to_bytes("someone else"))));
  // A proof for a different patient's identifier does not transfer.
  PbProof other = pbp_prove(b.g.pai.pseudonym, b.g.r, patient_id_hash(to_bytes("x")), *rng);
  EXPECT_FALSE(pbp_verify(b.g.pai.pseudonym, other, b.g.h));
}

TEST(Pbp, FieldMutationSweep) {
  auto rng = rng_for("pbp-mutation");
  Bound b = make_bound(*rng);
  const Pseudonym& ps = b.g.pai.pseudonym;
  PbProof p = pbp_prove(ps, b.g.r, b.g.h, *rng);
  const Scalar one = Scalar::from_u64(1);
  EXPECT_FALSE(pbp_verify(ps, PbProof{p.t1, p.t2, p.c, p.s1 + one, p.s2}, b.g.h));
  EXPECT_FALSE(pbp_verify(ps, PbProof{p.t1, p.t2, p.c, p.s1, p.s2 + one}, b.g.h));
  const int kTrials = 100;
  int accepted = 0;
  for (int i = 0; i < kTrials; ++i) {
    Scalar d = Scalar::random_nonzero(*rng);
    PbProof m[] = {
        {p.t1 * PairingContext::get().z_pow(d), p.t2, p.c, p.s1, p.s2},
        {p.t1, p.t2 + G2::generator() * d, p.c, p.s1, p.s2},
        {p.t1, p.t2, p.c + d, p.s1, p.s2},
        {p.t1, p.t2, p.c, p.s1 + d, p.s2},
        {p.t1, p.t2, p.c, p.s1, p.s2 + d},
    };
    for (const PbProof& q : m) accepted += pbp_verify(ps, q, b.g.h);
    Pseudonym ps1 = ps, ps2 = ps;
    ps1.p1 = ps1.p1 * PairingContext::get().z_pow(d);
    ps2.p2 = ps2.p2 + G2::generator() * d;
    accepted += pbp_verify(ps1, p, b.g.h);
    accepted += pbp_verify(ps2, p, b.g.h);
  }
  EXPECT_EQ(accepted, 0);
}

TEST(Pbp, MalformedEncodingRejected) {
  auto rng = rng_for("pbp-decode");
  Bound b = make_bound(*rng);
  Bytes wire = pbp_prove(b.g.pai.pseudonym, b.g.r, b.g.h, *rng).to_bytes();
  EXPECT_THROW(PbProof::from_bytes(ByteView(wire).first(wire.size() - 1)), DecodeError);
}

// Independent nonces in P1 and P2 pass the two-response check but not the
// shared-response check.
TEST(Pbp, StrictModeBindsSharedNonce) {
  auto rng = rng_for("pbp-strict");
  const PairingContext& ctx = PairingContext::get();
  PrePatientKeys keys = PrePatientKeys::generate(*rng);
  Scalar h = patient_id_hash(to_bytes("id"));
  Scalar ra = Scalar::random_nonzero(*rng), rb = Scalar::random_nonzero(*rng);
  Pseudonym mixed{ctx.z_pow(ra + h), keys.pk * rb, keys.pk};
  Scalar t = Scalar::random(*rng);
  PbProof p;
  p.t1 = ctx.z_pow(t);
  p.t2 = keys.pk * t;
  p.c = pbp_challenge(mixed, p.t1, p.t2, h);
  p.s1 = t + p.c * ra;
  p.s2 = t + p.c * rb;
  EXPECT_TRUE(pbp_verify(mixed, p, h, PbpMode::kIndependent));
  EXPECT_FALSE(pbp_verify(mixed, p, h, PbpMode::kStrict));
}

}  // namespace
}  // namespace hidm
