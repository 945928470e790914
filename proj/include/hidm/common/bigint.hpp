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

#pragma once

#include <gmpxx.h>

#include <string_view>

#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"

namespace hidm {

using BigInt = mpz_class;

BigInt bigint_from_bytes(ByteView be);
// Big-endian magnitude, left-padded to `width` bytes (0 = minimal width).
// Throws std::invalid_argument if the value does not fit or is negative.
Bytes bigint_to_bytes(const BigInt& v, std::size_t width = 0);
BigInt bigint_from_hex(std::string_view hex);
std::string bigint_to_hex(const BigInt& v);

// Signed integers (sigma-protocol responses may be negative) encode as a
// sign byte followed by the minimal magnitude.
Bytes bigint_to_signed_bytes(const BigInt& v);
BigInt bigint_from_signed_bytes(ByteView b);

std::size_t bit_length(const BigInt& v);
std::size_t byte_length(const BigInt& v);

BigInt random_bits(Rng& rng, std::size_t bits);
// Uniform in [0, bound).
BigInt random_below(Rng& rng, const BigInt& bound);
// Uniform in [1, bound).
BigInt random_nonzero_below(Rng& rng, const BigInt& bound);

BigInt powm(const BigInt& base, const BigInt& exp, const BigInt& mod);
// Throws std::domain_error when no inverse exists.
BigInt invert(const BigInt& a, const BigInt& mod);
BigInt mod(const BigInt& a, const BigInt& m);
bool probably_prime(const BigInt& v, int reps = 30);
// Smallest prime >= start drawn deterministically from the candidate walk.
BigInt next_prime(const BigInt& start);

}  // namespace hidm
