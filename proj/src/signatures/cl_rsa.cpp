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

#include "hidm/signatures/cl_rsa.hpp"

#include <stdexcept>

#include "hidm/common/error.hpp"
#include "hidm/signatures/cl_rsa_params.hpp"

namespace hidm::cl_rsa {

namespace {

BigInt pow2(std::size_t bits) {
  BigInt out = 1;
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), bits);
  return out;
}

BigInt random_qr(const BigInt& n, Rng& rng) {
  for (;;) {
    BigInt h = random_nonzero_below(rng, n);
    BigInt g;
    mpz_gcd(g.get_mpz_t(), h.get_mpz_t(), n.get_mpz_t());
    if (g != 1) continue;
    BigInt s = mod(h * h, n);
    if (s != 1) return s;
  }
}

BigInt crt_combine(const BigInt& xp, const BigInt& xq, const BigInt& p, const BigInt& q) {
  // x = xq + q * ((xp - xq) * q^-1 mod p)
  BigInt h = mod((xp - xq) * invert(q, p), p);
  return xq + q * h;
}

void write_params(FieldWriter& w, const Params& p) {
  w.u64(p.modulus_bits).u64(p.message_bits).u64(p.e_bits).u64(p.e_range_bits).u64(p.challenge_bits).u64(p.stat_bits);
}

Params read_params(FieldReader& r) {
  Params p;
  p.modulus_bits = r.u64();
  p.message_bits = r.u64();
  p.e_bits = r.u64();
  p.e_range_bits = r.u64();
  p.challenge_bits = r.u64();
  p.stat_bits = r.u64();
  return p;
}

}  // namespace

Bytes PublicKey::to_bytes() const {
  FieldWriter w;
  write_params(w, params);
  w.field(bigint_to_bytes(n)).field(bigint_to_bytes(s)).field(bigint_to_bytes(z)).u64(r.size());
  for (const auto& ri : r) w.field(bigint_to_bytes(ri));
  return std::move(w).bytes();
}

PublicKey PublicKey::from_bytes(ByteView b) {
  FieldReader rd(b);
  PublicKey pk;
  pk.params = read_params(rd);
  pk.n = bigint_from_bytes(rd.field());
  pk.s = bigint_from_bytes(rd.field());
  pk.z = bigint_from_bytes(rd.field());
  std::uint64_t count = rd.u64();
  if (count > 64) throw DecodeError("CL-RSA public key has too many slots");
  for (std::uint64_t i = 0; i < count; ++i) pk.r.push_back(bigint_from_bytes(rd.field()));
  if (!rd.done()) throw DecodeError("trailing bytes after CL-RSA public key");
  if (bit_length(pk.n) != pk.params.modulus_bits) throw DecodeError("CL-RSA modulus size mismatch");
  return pk;
}

BigInt SecretKey::group_order() const { return ((p - 1) / 2) * ((q - 1) / 2); }

BigInt generate_safe_prime(std::size_t bits, Rng& rng) {
  if (bits < 16) throw std::invalid_argument("safe prime too small");
  for (;;) {
    BigInt half = random_bits(rng, bits - 1);
    mpz_setbit(half.get_mpz_t(), bits - 2);
    half = next_prime(half);
    if (bit_length(half) != bits - 1) continue;
    BigInt p = 2 * half + 1;
    if (probably_prime(p)) return p;
  }
}

Keypair Keypair::generate(std::size_t slots, Rng& rng, std::optional<std::size_t> fresh_modulus_bits) {
  Keypair kp;
  if (fresh_modulus_bits) {
    std::size_t half = *fresh_modulus_bits / 2;
    do {
      kp.sk.p = generate_safe_prime(half, rng);
      kp.sk.q = generate_safe_prime(*fresh_modulus_bits - half, rng);
    } while (kp.sk.p == kp.sk.q || bit_length(kp.sk.p * kp.sk.q) != *fresh_modulus_bits);
    kp.pk.params.modulus_bits = *fresh_modulus_bits;
  } else {
    kp.sk.p = standard_safe_primes().p;
    kp.sk.q = standard_safe_primes().q;
  }
  kp.pk.n = kp.sk.p * kp.sk.q;
  kp.pk.params.modulus_bits = bit_length(kp.pk.n);
  BigInt order = kp.sk.group_order();
  kp.pk.s = random_qr(kp.pk.n, rng);
  kp.sk.z_log = random_below(rng, order - 2) + 2;
  kp.pk.z = powm(kp.pk.s, kp.sk.z_log, kp.pk.n);
  for (std::size_t i = 0; i < slots; ++i) {
    BigInt x = random_below(rng, order - 2) + 2;
    kp.sk.r_log.push_back(x);
    kp.pk.r.push_back(powm(kp.pk.s, x, kp.pk.n));
  }
  return kp;
}

Bytes Signature::to_bytes() const {
  return FieldWriter().field(bigint_to_bytes(a)).field(bigint_to_bytes(e)).field(bigint_to_bytes(v)).bytes();
}

Signature Signature::from_bytes(ByteView b) {
  FieldReader rd(b);
  Signature sig;
  sig.a = bigint_from_bytes(rd.field());
  sig.e = bigint_from_bytes(rd.field());
  sig.v = bigint_from_bytes(rd.field());
  if (!rd.done()) throw DecodeError("trailing bytes after CL-RSA signature");
  return sig;
}

Signature sign(std::span<const BigInt> messages, const Keypair& key, Rng& rng) {
  const PublicKey& pk = key.pk;
  const Params& prm = pk.params;
  if (messages.size() != pk.slots()) throw std::invalid_argument("CL-RSA message count does not match key slots");
  BigInt m_bound = pow2(prm.message_bits);
  for (const auto& m : messages) {
    if (m < 0 || m >= m_bound) throw std::invalid_argument("CL-RSA message out of range");
  }

  BigInt e_base = pow2(prm.e_bits - 1);
  BigInt e_limit = e_base + pow2(prm.e_range_bits - 1);
  BigInt order = key.sk.group_order();
  BigInt e;
  for (;;) {
    e = next_prime(e_base + random_bits(rng, prm.e_range_bits - 1));
    if (e < e_limit && mod(order, e) != 0) break;
  }
  BigInt v = random_bits(rng, prm.v_bits());
  mpz_setbit(v.get_mpz_t(), prm.v_bits() - 1);

  // A = S^((z - v - sum r_i m_i) / e) using the discrete logs and CRT.
  BigInt log = key.sk.z_log - v;
  for (std::size_t i = 0; i < messages.size(); ++i) log -= key.sk.r_log[i] * messages[i];
  BigInt exponent = mod(mod(log, order) * invert(e, order), order);
  BigInt pp = (key.sk.p - 1) / 2;
  BigInt qq = (key.sk.q - 1) / 2;
  BigInt ap = powm(mod(pk.s, key.sk.p), mod(exponent, pp), key.sk.p);
  BigInt aq = powm(mod(pk.s, key.sk.q), mod(exponent, qq), key.sk.q);
  return Signature{crt_combine(ap, aq, key.sk.p, key.sk.q), e, v};
}

bool verify(std::span<const BigInt> messages, const Signature& sig, const PublicKey& pk) {
  const Params& prm = pk.params;
  if (messages.size() != pk.slots() || pk.n <= 0) return false;
  BigInt m_bound = pow2(prm.message_bits);
  for (const auto& m : messages) {
    if (m < 0 || m >= m_bound) return false;
  }
  if (sig.a <= 1 || sig.a >= pk.n) return false;
  BigInt e_base = pow2(prm.e_bits - 1);
  if (sig.e < e_base || sig.e >= e_base + pow2(prm.e_range_bits - 1)) return false;
  if (sig.v < 0 || bit_length(sig.v) > prm.v_bits()) return false;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), sig.a.get_mpz_t(), pk.n.get_mpz_t());
  if (g != 1) return false;

  BigInt acc = mod(powm(sig.a, sig.e, pk.n) * powm(pk.s, sig.v, pk.n), pk.n);
  for (std::size_t i = 0; i < messages.size(); ++i) acc = mod(acc * powm(pk.r[i], messages[i], pk.n), pk.n);
  if (acc != pk.z) return false;
  return probably_prime(sig.e, 20);
}

}  // namespace hidm::cl_rsa
