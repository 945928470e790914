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

#include "hidm/signatures/rsa.hpp"

#include <algorithm>
#include <stdexcept>

#include "hidm/algebra/hash.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

namespace {

// DER DigestInfo prefix for SHA-256.
constexpr std::uint8_t kSha256Prefix[] = {0x30, 0x31, 0x30, 0x0d, 0x06, 0x09, 0x60, 0x86, 0x48, 0x01,
                                          0x65, 0x03, 0x04, 0x02, 0x01, 0x05, 0x00, 0x04, 0x20};

Bytes encode_message(ByteView msg, std::size_t k) {
  Digest32 digest = sha256(msg);
  std::size_t t_len = sizeof(kSha256Prefix) + digest.size();
  if (k < t_len + 11) throw std::invalid_argument("RSA modulus too small");
  Bytes em(k, 0xff);
  em[0] = 0x00;
  em[1] = 0x01;
  em[k - t_len - 1] = 0x00;
  std::copy(std::begin(kSha256Prefix), std::end(kSha256Prefix), em.begin() + (k - t_len));
  std::copy(digest.begin(), digest.end(), em.end() - digest.size());
  return em;
}

BigInt random_prime(std::size_t bits, const BigInt& e, Rng& rng) {
  for (;;) {
    BigInt c = random_bits(rng, bits);
    mpz_setbit(c.get_mpz_t(), bits - 1);
    mpz_setbit(c.get_mpz_t(), bits - 2);
    BigInt p = next_prime(c);
    if (bit_length(p) != bits) continue;
    BigInt g;
    BigInt pm1 = p - 1;
    mpz_gcd(g.get_mpz_t(), pm1.get_mpz_t(), e.get_mpz_t());
    if (g == 1) return p;
  }
}

}  // namespace

Bytes RsaPublicKey::to_bytes() const {
  return FieldWriter().field(bigint_to_bytes(n)).field(bigint_to_bytes(e)).bytes();
}

RsaPublicKey RsaPublicKey::from_bytes(ByteView b) {
  FieldReader rd(b);
  RsaPublicKey pk{bigint_from_bytes(rd.field()), bigint_from_bytes(rd.field())};
  if (!rd.done()) throw DecodeError("trailing bytes after RSA public key");
  return pk;
}

RsaKeypair RsaKeypair::generate(std::size_t bits, Rng& rng) {
  if (bits < 1024 || bits % 2 != 0) throw std::invalid_argument("unsupported RSA modulus size");
  RsaKeypair kp;
  kp.pub.e = 65537;
  for (;;) {
    kp.p = random_prime(bits / 2, kp.pub.e, rng);
    kp.q = random_prime(bits / 2, kp.pub.e, rng);
    if (kp.p == kp.q) continue;
    kp.pub.n = kp.p * kp.q;
    if (bit_length(kp.pub.n) == bits) break;
  }
  if (kp.p < kp.q) std::swap(kp.p, kp.q);
  kp.d = invert(kp.pub.e, (kp.p - 1) * (kp.q - 1));
  return kp;
}

Bytes rsa_sign(ByteView msg, const RsaKeypair& key) {
  std::size_t k = key.pub.modulus_size();
  BigInt m = bigint_from_bytes(encode_message(msg, k));
  BigInt sp = powm(mod(m, key.p), mod(key.d, key.p - 1), key.p);
  BigInt sq = powm(mod(m, key.q), mod(key.d, key.q - 1), key.q);
  BigInt h = mod((sp - sq) * invert(key.q, key.p), key.p);
  BigInt s = sq + key.q * h;
  return bigint_to_bytes(s, k);
}

bool rsa_verify(ByteView msg, ByteView sig, const RsaPublicKey& pub) {
  if (pub.n <= 0 || pub.e <= 1) return false;
  std::size_t k = pub.modulus_size();
  if (sig.size() != k) return false;
  BigInt s = bigint_from_bytes(sig);
  if (s >= pub.n) return false;
  Bytes em = bigint_to_bytes(powm(s, pub.e, pub.n), k);
  Bytes expected;
  try {
    expected = encode_message(msg, k);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return em == expected;
}

}  // namespace hidm
