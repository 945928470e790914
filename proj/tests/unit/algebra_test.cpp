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

#include "hidm/algebra/curve.hpp"
#include "hidm/algebra/hash.hpp"
#include "hidm/algebra/schnorr_group.hpp"
#include "hidm/common/aead.hpp"
#include "hidm/common/bigint.hpp"
#include "hidm/common/error.hpp"
#include "test_util.hpp"

namespace hidm {
namespace {

using testing::flip_bit;
using testing::rng_for;

// ---- hashing ---------------------------------------------------------------

TEST(Sha256, KnownAnswer) {
  EXPECT_EQ(to_hex(sha256(to_bytes("abc"))), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

struct HkdfCase {
  const char* ikm;
  const char* salt;
  const char* info;
  std::size_t len;
  const char* okm;
};

// RFC 5869 appendix A.1-A.3, cross-checked with an independent HKDF.
TEST(Hkdf, Rfc5869Vectors) {
  const HkdfCase cases[] = {
      {"0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b", "000102030405060708090a0b0c", "f0f1f2f3f4f5f6f7f8f9", 42,
       "3cb25f25faacd57a90434f64d0362f2a2d2d0a90cf1a5a4c5db02d56ecc4c5bf34007208d5b887185865"},
      {"000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f202122232425262728292a2b2c2d2e2f"
       "303132333435363738393a3b3c3d3e3f404142434445464748494a4b4c4d4e4f",
       "606162636465666768696a6b6c6d6e6f707172737475767778797a7b7c7d7e7f808182838485868788898a8b8c8d8e8f"
       "909192939495969798999a9b9c9d9e9fa0a1a2a3a4a5a6a7a8a9aaabacadaeaf",
       "b0b1b2b3b4b5b6b7b8b9babbbcbdbebfc0c1c2c3c4c5c6c7c8c9cacbcccdcecfd0d1d2d3d4d5d6d7d8d9dadbdcdddedf"
       "e0e1e2e3e4e5e6e7e8e9eaebecedeeeff0f1f2f3f4f5f6f7f8f9fafbfcfdfeff",
       82,
       "b11e398dc80327a1c8e7f78c596a49344f012eda2d4efad8a050cc4c19afa97c59045a99cac7827271cb41c65e590e09"
       "da3275600c2f09b8367793a9aca3db71cc30c58179ec3e87c14c01d5c1f3434f1d87"},
      {"0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b", "", "", 42,
       "8da4e775a563c18f715f802a063c5a31b8a11f5c5ee1879ec3454e5f3c738d2d9d201395faa4b61a96c8"},
  };
  for (const auto& c : cases) {
    EXPECT_EQ(to_hex(hkdf_sha256(from_hex(c.salt), from_hex(c.ikm), from_hex(c.info), c.len)), c.okm);
  }
}

TEST(HashToField, DeterministicAndInRange) {
  auto rng = rng_for("h2f-range");
  const BigInt small = 1000003;
  for (int i = 0; i < 500; ++i) {
    Bytes in = rng->bytes(1 + i % 40);
    BigInt a = hash_to_field("tag", in, small);
    EXPECT_EQ(a, hash_to_field("tag", in, small));
    EXPECT_GE(a, 0);
    EXPECT_LT(a, small);
    BigInt s = hash_to_field("tag", in, Scalar::order());
    EXPECT_LT(s, Scalar::order());
  }
}

TEST(HashToField, DomainTagsSeparate) {
  Bytes in = to_bytes("same input");
  EXPECT_NE(hash_to_field("tag-a", in, Scalar::order()), hash_to_field("tag-b", in, Scalar::order()));
  EXPECT_THROW(hash_to_field("", in, Scalar::order()), std::invalid_argument);
  EXPECT_THROW(hash_to_field("t", in, BigInt(1)), std::invalid_argument);
}

TEST(HashToField, NoCollisionsOverTenThousandInputs) {
  std::set<Bytes> seen;
  for (std::uint32_t i = 0; i < 10000; ++i) {
    Bytes in;
    append_u32be(in, i);
    seen.insert(hash_to_scalar(tags::kPatientId, in).to_bytes());
  }
  EXPECT_EQ(seen.size(), 10000u);
}

// RFC 9380 J.9.1 (BLS12381G1_XMD:SHA-256_SSWU_RO_), and the library's own
// identity tag, both computed with an independent implementation.
TEST(HashToG1, MatchesReferenceImplementation) {
  const std::string rfc_dst = "QUUX-V01-CS02-with-BLS12381G1_XMD:SHA-256_SSWU_RO_";
  EXPECT_EQ(to_hex(hash_to_g1(rfc_dst, to_bytes("")).to_bytes()),
            "852926add2207b76ca4fa57a8734416c8dc95e24501772c814278700eed6d1e4e8cf62d9c09db0fac349612b759e79a1");
  EXPECT_EQ(to_hex(hash_to_g1(rfc_dst, to_bytes("abc")).to_bytes()),
            "83567bc5ef9c690c2ab2ecdf6a96ef1c139cc0b2f284dca0a9a7943388a49a3aee664ba5379a7655d3c68900be2f6903");
  EXPECT_EQ(to_hex(hash_to_g1(tags::kIbsIdentity, to_bytes("")).to_bytes()),
            "afc87a311cd038ef80e9f09811c40583841be57c268ede187465b1b2b71b729240e1bcaa0560f56c9bd8e2d19e1b3e00");
  EXPECT_EQ(to_hex(hash_to_g1(tags::kIbsIdentity, to_bytes("hidm")).to_bytes()),
            "ae4be42ec46195625cb756df4628f859bd23b3620e0bec35d46e730d6626ced332f6bdf57f262592a8fb0dc7c1f53987");
  Bytes seq(32);
  for (int i = 0; i < 32; ++i) seq[i] = static_cast<std::uint8_t>(i);
  EXPECT_EQ(to_hex(hash_to_g1(tags::kIbsIdentity, seq).to_bytes()),
            "aca162b620b40aec1bf91d22f964d36750410e008da5024f3fe104e0bcdd54dfa95e2e285d309a06f6a94fc4b2f93ada");
}

TEST(HashToG1, OutputsHavePrimeOrder) {
  auto rng = rng_for("h2g1-order");
  Bytes order_le = bigint_to_bytes(Scalar::order(), 32);
  std::reverse(order_le.begin(), order_le.end());
  for (int i = 0; i < 1000; ++i) {
    Bytes in = rng->bytes(24);
    G1 p = hash_to_g1("order-sweep", in);
    ASSERT_TRUE(p.in_subgroup());
    ASSERT_FALSE(p.is_identity());
    if (i < 20) {
      EXPECT_EQ(p, hash_to_g1("order-sweep", in));
      EXPECT_TRUE(p.mul_raw(order_le, 255).is_identity());
    }
  }
}

// ---- codecs ----------------------------------------------------------------

TEST(Codec, IdentityEncodings) {
  Bytes id = G1().to_bytes();
  ASSERT_EQ(id.size(), G1::kEncodedSize);
  EXPECT_EQ(id[0], 0xc0);
  EXPECT_TRUE(std::all_of(id.begin() + 1, id.end(), [](std::uint8_t b) { return b == 0; }));
  EXPECT_TRUE(G1::from_bytes(id).is_identity());
  EXPECT_TRUE(G2::from_bytes(G2().to_bytes()).is_identity());
  EXPECT_TRUE(GT::from_bytes(GT().to_bytes()).is_one());
}

TEST(Codec, RoundTripProperty) {
  auto rng = rng_for("codec-roundtrip");
  for (int i = 0; i < 1000; ++i) {
    Scalar s = Scalar::random(*rng);
    ASSERT_EQ(Scalar::from_bytes(s.to_bytes()), s);
    G2 q = G2::generator() * s;
    ASSERT_EQ(G2::from_bytes(q.to_bytes()), q);
    G1 p = G1::generator() * s;
    ASSERT_EQ(G1::from_bytes(p.to_bytes()), p);
  }
  GT z = PairingContext::get().z.pow(Scalar::random(*rng));
  EXPECT_EQ(GT::from_bytes(z.to_bytes()), z);
}

TEST(Codec, FlippedBitsNeverDecodeToTheSameElement) {
  auto rng = rng_for("codec-mutation");
  for (int i = 0; i < 300; ++i) {
    G2 q = G2::generator() * Scalar::random(*rng);
    Bytes enc = flip_bit(q.to_bytes(), rng->next_u64() % (8 * G2::kEncodedSize));
    try {
      EXPECT_NE(G2::from_bytes(enc), q);
    } catch (const DecodeError&) {
    }
    G1 p = G1::generator() * Scalar::random(*rng);
    Bytes enc1 = flip_bit(p.to_bytes(), rng->next_u64() % (8 * G1::kEncodedSize));
    try {
      EXPECT_NE(G1::from_bytes(enc1), p);
    } catch (const DecodeError&) {
    }
  }
}

TEST(Codec, RejectsMalformedInput) {
  EXPECT_THROW(G1::from_bytes(Bytes(47, 0)), DecodeError);
  EXPECT_THROW(G2::from_bytes(Bytes(96, 0xff)), DecodeError);
  EXPECT_THROW(GT::from_bytes(Bytes(576, 0x01)), DecodeError);
  // r itself is not a canonical scalar.
  EXPECT_THROW(Scalar::from_bytes(bigint_to_bytes(Scalar::order(), 32)), DecodeError);
}

// ---- pairing ---------------------------------------------------------------

TEST(Pairing, Bilinearity) {
  auto rng = rng_for("bilinear");
  const auto& ctx = PairingContext::get();
  EXPECT_FALSE(ctx.z.is_one());
  for (int i = 0; i < 100; ++i) {
    Scalar a = Scalar::random(*rng), b = Scalar::random(*rng);
    ASSERT_EQ(pairing(ctx.g1 * a, ctx.g2 * b), ctx.z.pow(a * b));
  }
}

TEST(Pairing, MultiPairingAndFixedBase) {
  auto rng = rng_for("multi-pairing");
  const auto& ctx = PairingContext::get();
  Scalar a = Scalar::random(*rng), b = Scalar::random(*rng);
  G1 ps[2] = {ctx.g1 * a, ctx.g1 * b};
  G2 qs[2] = {ctx.g2, ctx.g2 * a};
  EXPECT_EQ(multi_pairing(ps, qs), pairing(ps[0], qs[0]) * pairing(ps[1], qs[1]));
  for (int i = 0; i < 20; ++i) {
    Scalar e = Scalar::random(*rng);
    EXPECT_EQ(ctx.z_pow(e), ctx.z.pow(e));
  }
}

TEST(Scalar, FieldArithmetic) {
  auto rng = rng_for("scalar");
  for (int i = 0; i < 200; ++i) {
    Scalar a = Scalar::random_nonzero(*rng), b = Scalar::random(*rng);
    EXPECT_EQ(a * a.inverse(), Scalar::from_u64(1));
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ(Scalar::from_bigint(a.to_bigint() * b.to_bigint()), a * b);
  }
  EXPECT_THROW(Scalar().inverse(), std::domain_error);
}

// ---- Schnorr group ---------------------------------------------------------

TEST(SchnorrGroup, StandardParameters) {
  const SchnorrGroup& g = SchnorrGroup::standard();
  EXPECT_EQ(bit_length(g.p), 3072u);
  EXPECT_EQ(bit_length(g.q), 256u);
  EXPECT_NO_THROW(g.validate());
  EXPECT_TRUE(g.is_element(g.g));
  EXPECT_FALSE(g.is_element(BigInt(1)));
  EXPECT_FALSE(g.is_element(g.p - 1));
}

TEST(SchnorrGroup, SmallGroupValidates) {
  SchnorrGroup small{23, 11, 2};
  EXPECT_NO_THROW(small.validate());
  EXPECT_TRUE(small.is_element(8));
  EXPECT_FALSE(small.is_element(5));  // 5 has order 22
  SchnorrGroup bad{23, 7, 2};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

// ---- common ----------------------------------------------------------------

TEST(BigIntCodec, SignedRoundTrip) {
  auto rng = rng_for("bigint");
  for (int i = 0; i < 200; ++i) {
    BigInt v = random_bits(*rng, 1 + i * 7);
    if (i % 2) v = -v;
    EXPECT_EQ(bigint_from_signed_bytes(bigint_to_signed_bytes(v)), v);
    if (v >= 0) EXPECT_EQ(bigint_from_bytes(bigint_to_bytes(v, 200)), v);
  }
  EXPECT_THROW(bigint_to_bytes(BigInt(256), 1), std::invalid_argument);
}

TEST(FieldWriter, FieldBoundariesAreUnambiguous) {
  Bytes a = FieldWriter().field("ab").field("c").bytes();
  Bytes b = FieldWriter().field("a").field("bc").bytes();
  EXPECT_NE(a, b);
  FieldReader r(a);
  EXPECT_EQ(to_string(r.field()), "ab");
  EXPECT_EQ(to_string(r.field()), "c");
  EXPECT_TRUE(r.done());
  FieldReader truncated(ByteView(a).first(a.size() - 1));
  truncated.field();
  EXPECT_THROW(truncated.field(), DecodeError);
}

TEST(Hex, RoundTripAndErrors) {
  EXPECT_EQ(to_hex(from_hex("00ff10")), "00ff10");
  EXPECT_THROW(from_hex("abc"), DecodeError);
  EXPECT_THROW(from_hex("zz"), DecodeError);
}

TEST(Aead, SealOpenAndTamper) {
  auto rng = rng_for("aead");
  Bytes key = rng->bytes(kAeadKeySize);
  Bytes msg = to_bytes("patient record");
  Bytes aad = to_bytes("context");
  Bytes sealed = aead_seal(key, msg, aad, *rng);
  EXPECT_EQ(sealed.size(), msg.size() + kAeadNonceSize + kAeadTagSize);
  EXPECT_EQ(aead_open(key, sealed, aad), msg);
  EXPECT_FALSE(aead_open(key, sealed, to_bytes("other")));
  for (std::size_t bit = 0; bit < sealed.size() * 8; bit += 13) {
    EXPECT_FALSE(aead_open(key, flip_bit(sealed, bit), aad)) << bit;
  }
  EXPECT_FALSE(aead_open(key, Bytes(5, 0), aad));
}

TEST(Rng, DeterministicForksDependOnlyOnLabel) {
  DeterministicRng a("seed"), b("seed");
  a.bytes(1000);  // consuming the parent does not change its children
  EXPECT_EQ(a.fork("x")->bytes(32), b.fork("x")->bytes(32));
  EXPECT_NE(a.fork("x")->bytes(32), a.fork("y")->bytes(32));
  EXPECT_NE(DeterministicRng("seed").bytes(32), DeterministicRng("other").bytes(32));
}

TEST(Rng, UuidV4Layout) {
  auto rng = rng_for("uuid");
  for (int i = 0; i < 100; ++i) {
    Id16 u = rng->uuid_v4();
    EXPECT_EQ(u[6] >> 4, 4);
    EXPECT_EQ(u[8] >> 6, 2);
  }
}

}  // namespace
}  // namespace hidm
