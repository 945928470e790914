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

#include "hidm/common/bigint.hpp"

#include <stdexcept>

#include "hidm/common/error.hpp"

namespace hidm {

BigInt bigint_from_bytes(ByteView be) {
  BigInt v;
  if (!be.empty()) mpz_import(v.get_mpz_t(), be.size(), 1, 1, 1, 0, be.data());
  return v;
}

Bytes bigint_to_bytes(const BigInt& v, std::size_t width) {
  if (sgn(v) < 0) throw std::invalid_argument("negative value has no unsigned encoding");
  std::size_t n = byte_length(v);
  if (width != 0 && n > width) throw std::invalid_argument("value does not fit in fixed width");
  std::size_t out_len = width == 0 ? n : width;
  Bytes out(out_len, 0);
  if (n > 0) {
    std::size_t written = 0;
    mpz_export(out.data() + (out_len - n), &written, 1, 1, 1, 0, v.get_mpz_t());
  }
  return out;
}

BigInt bigint_from_hex(std::string_view hex) {
  BigInt v;
  if (v.set_str(std::string(hex), 16) != 0) throw DecodeError("invalid hex integer");
  return v;
}

std::string bigint_to_hex(const BigInt& v) { return v.get_str(16); }

Bytes bigint_to_signed_bytes(const BigInt& v) {
  Bytes out;
  out.push_back(sgn(v) < 0 ? 1 : 0);
  BigInt mag = abs(v);
  append(out, bigint_to_bytes(mag));
  return out;
}

BigInt bigint_from_signed_bytes(ByteView b) {
  if (b.empty() || b[0] > 1) throw DecodeError("invalid signed integer encoding");
  BigInt mag = bigint_from_bytes(b.subspan(1));
  if (b[0] == 1 && mag == 0) throw DecodeError("negative zero is not canonical");
  return b[0] == 1 ? BigInt(-mag) : mag;
}

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

std::size_t byte_length(const BigInt& v) { return (bit_length(v) + 7) / 8; }

BigInt random_bits(Rng& rng, std::size_t bits) {
  if (bits == 0) return 0;
  Bytes buf = rng.bytes((bits + 7) / 8);
  std::size_t excess = buf.size() * 8 - bits;
  buf[0] &= static_cast<std::uint8_t>(0xff >> excess);
  return bigint_from_bytes(buf);
}

BigInt random_below(Rng& rng, const BigInt& bound) {
  if (bound <= 0) throw std::invalid_argument("bound must be positive");
  // Oversample by 128 bits so the modular bias is below 2^-128.
  BigInt wide = random_bits(rng, bit_length(bound) + 128);
  BigInt out;
  mpz_mod(out.get_mpz_t(), wide.get_mpz_t(), bound.get_mpz_t());
  return out;
}

BigInt random_nonzero_below(Rng& rng, const BigInt& bound) {
  if (bound <= 1) throw std::invalid_argument("bound must exceed 1");
  return random_below(rng, bound - 1) + 1;
}

BigInt powm(const BigInt& base, const BigInt& exp, const BigInt& m) {
  BigInt out;
  if (sgn(exp) < 0) {
    BigInt inv = invert(base, m);
    BigInt e = -exp;
    mpz_powm(out.get_mpz_t(), inv.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  } else {
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  }
  return out;
}

BigInt invert(const BigInt& a, const BigInt& m) {
  BigInt out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::domain_error("element is not invertible");
  }
  return out;
}

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt out;
  mpz_mod(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return out;
}

bool probably_prime(const BigInt& v, int reps) { return mpz_probab_prime_p(v.get_mpz_t(), reps) > 0; }

BigInt next_prime(const BigInt& start) {
  BigInt out;
  mpz_nextprime(out.get_mpz_t(), BigInt(start - 1).get_mpz_t());
  return out;
}

}  // namespace hidm
