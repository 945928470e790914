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

#include "hidm/proofs/pok.hpp"

#include <algorithm>
#include <stdexcept>

#include "hidm/algebra/hash.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

namespace {

constexpr std::uint64_t kRsaTag = 1;
constexpr std::uint64_t kPairingTag = 2;

BigInt pow2(std::size_t bits) {
  BigInt out = 1;
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), bits);
  return out;
}

BigInt random_signed(Rng& rng, std::size_t bits) { return random_bits(rng, bits + 1) - pow2(bits); }

bool within(const BigInt& v, std::size_t bits) { return abs(v) <= pow2(bits); }

FieldWriter challenge_prefix(ClVariant variant, const ClPublicKey& pub, ByteView context,
                             const std::map<std::size_t, Bytes>& disclosed) {
  FieldWriter w;
  w.field(tags::kClPok).field(cl_variant_name(variant)).field(pub.to_bytes()).field(context).u64(disclosed.size());
  for (const auto& [slot, value] : disclosed) w.u64(slot).field(value);
  return w;
}

// ---- CL-RSA ----------------------------------------------------------------

std::size_t rsa_v_tilde_bits(const cl_rsa::Params& p) {
  return std::max(p.v_bits(), p.modulus_bits + p.e_bits + p.stat_bits) + p.stat_bits + p.challenge_bits + 1;
}

BigInt rsa_challenge(FieldWriter w, const BigInt& a_prime, const BigInt& t) {
  w.field(bigint_to_bytes(a_prime)).field(bigint_to_bytes(t));
  return bigint_from_bytes(to_bytes(sha256(w.bytes())));
}

ClRsaProof rsa_prove(const cl_rsa::PublicKey& pk, const cl_rsa::Signature& sig, std::span<const Scalar> encoded,
                     const std::set<std::size_t>& disclose, FieldWriter prefix, Rng& rng) {
  const cl_rsa::Params& prm = pk.params;
  const BigInt& n = pk.n;
  BigInt r_a = random_bits(rng, prm.modulus_bits + prm.stat_bits);
  BigInt a_prime = mod(sig.a * powm(pk.s, r_a, n), n);
  BigInt e_prime = sig.e - pow2(prm.e_bits - 1);
  BigInt v_prime = sig.v - sig.e * r_a;

  BigInt e_tilde = random_signed(rng, prm.e_range_bits + prm.stat_bits + prm.challenge_bits);
  BigInt v_tilde = random_signed(rng, rsa_v_tilde_bits(prm));
  BigInt t = mod(powm(a_prime, e_tilde, n) * powm(pk.s, v_tilde, n), n);
  std::map<std::size_t, BigInt> m_tilde;
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    if (disclose.count(i)) continue;
    m_tilde[i] = random_signed(rng, prm.message_bits + prm.stat_bits + prm.challenge_bits);
    t = mod(t * powm(pk.r[i], m_tilde[i], n), n);
  }

  ClRsaProof proof;
  proof.a_prime = a_prime;
  proof.c = rsa_challenge(std::move(prefix), a_prime, t);
  proof.e_hat = e_tilde + proof.c * e_prime;
  proof.v_hat = v_tilde + proof.c * v_prime;
  for (const auto& [i, mt] : m_tilde) proof.m_hat[i] = mt + proof.c * encoded[i].to_bigint();
  return proof;
}

bool rsa_verify(const ClRsaProof& proof, const cl_rsa::PublicKey& pk, const std::map<std::size_t, Scalar>& disclosed,
                FieldWriter prefix) {
  const cl_rsa::Params& prm = pk.params;
  const BigInt& n = pk.n;
  if (proof.a_prime <= 1 || proof.a_prime >= n) return false;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), proof.a_prime.get_mpz_t(), n.get_mpz_t());
  if (g != 1) return false;
  if (proof.c < 0 || bit_length(proof.c) > prm.challenge_bits) return false;
  if (!within(proof.e_hat, prm.e_range_bits + prm.stat_bits + prm.challenge_bits + 1)) return false;
  if (!within(proof.v_hat, rsa_v_tilde_bits(prm) + 1)) return false;
  for (const auto& [i, mh] : proof.m_hat) {
    if (!within(mh, prm.message_bits + prm.stat_bits + prm.challenge_bits + 1)) return false;
  }

  // Z' = Z * prod_D R^-m * A'^-2^(le-1)
  BigInt z_prime = mod(pk.z * powm(proof.a_prime, -pow2(prm.e_bits - 1), n), n);
  for (const auto& [i, m] : disclosed) z_prime = mod(z_prime * powm(pk.r[i], -m.to_bigint(), n), n);

  BigInt t = mod(powm(z_prime, -proof.c, n) * powm(proof.a_prime, proof.e_hat, n), n);
  t = mod(t * powm(pk.s, proof.v_hat, n), n);
  for (const auto& [i, mh] : proof.m_hat) t = mod(t * powm(pk.r[i], mh, n), n);
  return rsa_challenge(std::move(prefix), proof.a_prime, t) == proof.c;
}

// ---- CL-pairing ------------------------------------------------------------

// Base point paired with X for message j: b for the first message, B_j after.
const G1& message_base(const cl_pairing::Signature& sig, std::size_t j) { return j == 0 ? sig.b : sig.big_b[j - 1]; }

Scalar pairing_challenge(FieldWriter w, const cl_pairing::Signature& randomized, const GT& t) {
  w.field(randomized.to_bytes()).field(t.to_bytes());
  return hash_to_scalar(tags::kClPok, w.bytes());
}

ClPairingProof pairing_prove(const cl_pairing::PublicKey& pk, const cl_pairing::Signature& sig,
                             std::span<const Scalar> encoded, const std::set<std::size_t>& disclose,
                             FieldWriter prefix, Rng& rng) {
  Scalar r = Scalar::random_nonzero(rng);
  Scalar r2 = Scalar::random_nonzero(rng);
  cl_pairing::Signature rnd;
  rnd.a = sig.a * r2;
  for (const auto& p : sig.big_a) rnd.big_a.push_back(p * r2);
  rnd.b = sig.b * r2;
  for (const auto& p : sig.big_b) rnd.big_b.push_back(p * r2);
  rnd.c = sig.c * (r * r2);
  Scalar rho = r.inverse();

  Scalar rho_tilde = Scalar::random(rng);
  std::map<std::size_t, Scalar> m_tilde;
  std::vector<G1> points;
  std::vector<Scalar> scalars;
  for (std::size_t j = 0; j < encoded.size(); ++j) {
    if (disclose.count(j)) continue;
    m_tilde[j] = Scalar::random(rng);
    points.push_back(message_base(rnd, j));
    scalars.push_back(-m_tilde[j]);
  }
  G1 ps[2] = {rnd.c * rho_tilde, G1::msm(points, scalars)};
  G2 qs[2] = {G2::generator(), pk.x};
  GT t = multi_pairing(ps, qs);

  ClPairingProof proof;
  proof.c = pairing_challenge(std::move(prefix), rnd, t);
  proof.randomized = std::move(rnd);
  proof.s_rho = rho_tilde + proof.c * rho;
  for (const auto& [j, mt] : m_tilde) proof.s_m[j] = mt + proof.c * encoded[j];
  return proof;
}

bool pairing_verify(const ClPairingProof& proof, const cl_pairing::PublicKey& pk,
                    const std::map<std::size_t, Scalar>& disclosed, FieldWriter prefix) {
  const cl_pairing::Signature& rnd = proof.randomized;
  if (rnd.c.is_identity() || !cl_pairing::verify_structure(rnd, pk)) return false;

  std::vector<G1> points{rnd.a};
  std::vector<Scalar> scalars{-proof.c};
  for (const auto& [j, m] : disclosed) {
    points.push_back(message_base(rnd, j));
    scalars.push_back(-(proof.c * m));
  }
  for (const auto& [j, s] : proof.s_m) {
    points.push_back(message_base(rnd, j));
    scalars.push_back(-s);
  }
  G1 ps[2] = {rnd.c * proof.s_rho, G1::msm(points, scalars)};
  G2 qs[2] = {G2::generator(), pk.x};
  GT t = multi_pairing(ps, qs);
  return pairing_challenge(std::move(prefix), rnd, t) == proof.c;
}

}  // namespace

ClProof cl_prove(const ClPublicKey& pub, std::span<const Bytes> attrs, const ClSignature& sig,
                 const std::set<std::size_t>& disclose, ByteView context, Rng& rng) {
  for (std::size_t slot : disclose) {
    if (slot >= pub.slots()) throw std::invalid_argument("disclosed slot out of range");
  }
  std::vector<Scalar> encoded = cl_encode_attributes(attrs);
  if (!cl_verify_encoded(encoded, sig, pub)) {
    throw ProtocolError(Reason::kCredentialProofRejected, "credential signature does not verify");
  }
  ClProof proof;
  for (std::size_t slot : disclose) proof.disclosed[slot] = attrs[slot];
  FieldWriter prefix = challenge_prefix(pub.variant(), pub, context, proof.disclosed);
  if (pub.rsa()) {
    proof.body = rsa_prove(*pub.rsa(), *sig.rsa(), encoded, disclose, std::move(prefix), rng);
  } else {
    proof.body = pairing_prove(*pub.pairing(), *sig.pairing(), encoded, disclose, std::move(prefix), rng);
  }
  return proof;
}

bool cl_proof_verify(const ClProof& proof, const ClPublicKey& pub, ByteView context) {
  if (proof.variant() != pub.variant()) return false;
  const std::size_t slots = pub.slots();
  std::map<std::size_t, Scalar> disclosed;
  for (const auto& [slot, value] : proof.disclosed) {
    if (slot >= slots) return false;
    disclosed[slot] = cl_encode_attribute(slot, value);
  }
  // Every slot is either disclosed or carries a response, never both.
  auto covers = [&](const auto& hidden) {
    if (hidden.size() + disclosed.size() != slots) return false;
    for (const auto& entry : hidden) {
      if (entry.first >= slots || disclosed.count(entry.first)) return false;
    }
    return true;
  };
  FieldWriter prefix = challenge_prefix(pub.variant(), pub, context, proof.disclosed);
  if (const auto* p = std::get_if<ClRsaProof>(&proof.body)) {
    return covers(p->m_hat) && rsa_verify(*p, *pub.rsa(), disclosed, std::move(prefix));
  }
  const auto& p = std::get<ClPairingProof>(proof.body);
  if (p.randomized.big_a.size() + 1 != slots) return false;
  return covers(p.s_m) && pairing_verify(p, *pub.pairing(), disclosed, std::move(prefix));
}

Bytes ClProof::to_bytes() const {
  FieldWriter w;
  w.u64(variant() == ClVariant::kRsa ? kRsaTag : kPairingTag).u64(disclosed.size());
  for (const auto& [slot, value] : disclosed) w.u64(slot).field(value);
  if (const auto* p = std::get_if<ClRsaProof>(&body)) {
    w.field(bigint_to_bytes(p->a_prime)).field(bigint_to_bytes(p->c));
    w.field(bigint_to_signed_bytes(p->e_hat)).field(bigint_to_signed_bytes(p->v_hat)).u64(p->m_hat.size());
    for (const auto& [slot, v] : p->m_hat) w.u64(slot).field(bigint_to_signed_bytes(v));
  } else {
    const auto& q = std::get<ClPairingProof>(body);
    w.field(q.randomized.to_bytes()).field(q.c.to_bytes()).field(q.s_rho.to_bytes()).u64(q.s_m.size());
    for (const auto& [slot, v] : q.s_m) w.u64(slot).field(v.to_bytes());
  }
  return std::move(w).bytes();
}

ClProof ClProof::from_bytes(ByteView b) {
  constexpr std::uint64_t kMaxSlots = 64;
  FieldReader rd(b);
  ClProof proof;
  std::uint64_t tag = rd.u64();
  std::uint64_t count = rd.u64();
  if (count > kMaxSlots) throw DecodeError("too many disclosed slots");
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t slot = rd.u64();
    proof.disclosed[slot] = rd.field();
  }
  if (tag == kRsaTag) {
    ClRsaProof p;
    p.a_prime = bigint_from_bytes(rd.field());
    p.c = bigint_from_bytes(rd.field());
    p.e_hat = bigint_from_signed_bytes(rd.field());
    p.v_hat = bigint_from_signed_bytes(rd.field());
    std::uint64_t hidden = rd.u64();
    if (hidden > kMaxSlots) throw DecodeError("too many hidden slots");
    for (std::uint64_t i = 0; i < hidden; ++i) {
      std::uint64_t slot = rd.u64();
      p.m_hat[slot] = bigint_from_signed_bytes(rd.field());
    }
    proof.body = std::move(p);
  } else if (tag == kPairingTag) {
    ClPairingProof p;
    p.randomized = cl_pairing::Signature::from_bytes(rd.field());
    p.c = Scalar::from_bytes(rd.field());
    p.s_rho = Scalar::from_bytes(rd.field());
    std::uint64_t hidden = rd.u64();
    if (hidden > kMaxSlots) throw DecodeError("too many hidden slots");
    for (std::uint64_t i = 0; i < hidden; ++i) {
      std::uint64_t slot = rd.u64();
      p.s_m[slot] = Scalar::from_bytes(rd.field());
    }
    proof.body = std::move(p);
  } else {
    throw DecodeError("unknown proof variant");
  }
  if (!rd.done()) throw DecodeError("trailing bytes after proof");
  return proof;
}

}  // namespace hidm
