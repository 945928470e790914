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

// Type-3 pairing groups over BLS12-381: G1 and G2 are additive, GT is the
// multiplicative order-r subgroup of Fp12. All encodings are canonical:
//   Scalar  32 bytes, big-endian, value < r
//   G1      48 bytes, ZCash compressed form
//   G2      96 bytes, ZCash compressed form
//   GT     576 bytes, twelve big-endian Fp coefficients in blst tower order
// Decoders reject non-canonical, off-curve and out-of-subgroup input.

#pragma once

#include <blst.h>

#include <array>
#include <span>
#include <string_view>

#include "hidm/common/bigint.hpp"
#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"

namespace hidm {

// The only compile-time curve switch in the build.
inline constexpr std::string_view kCurveId = "BLS12-381";

class Scalar {
 public:
  static constexpr std::size_t kEncodedSize = 32;

  Scalar();
  static Scalar from_u64(std::uint64_t v);
  static Scalar random(Rng& rng);
  static Scalar random_nonzero(Rng& rng);
  // Canonical 32-byte big-endian encoding.
  static Scalar from_bytes(ByteView be);
  // Any-length big-endian integer reduced mod r.
  static Scalar reduce(ByteView be);
  static Scalar from_bigint(const BigInt& v);
  static const BigInt& order();

  Bytes to_bytes() const;
  BigInt to_bigint() const;
  std::array<std::uint8_t, 32> le_bytes() const;

  bool is_zero() const;
  // Throws std::domain_error for zero.
  Scalar inverse() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  bool operator==(const Scalar& o) const;

 private:
  blst_fr v_;
};

class G1 {
 public:
  static constexpr std::size_t kEncodedSize = 48;

  G1();  // identity
  explicit G1(const blst_p1& p) : p_(p) {}
  static G1 generator();
  static G1 from_bytes(ByteView b);
  // Multi-scalar multiplication sum(points[i] * scalars[i]).
  static G1 msm(std::span<const G1> points, std::span<const Scalar> scalars);

  Bytes to_bytes() const;
  bool is_identity() const;
  bool in_subgroup() const;
  // Multiplication by an arbitrary little-endian integer of `nbits` bits.
  G1 mul_raw(ByteView le, std::size_t nbits) const;

  G1 operator+(const G1& o) const;
  G1 operator-(const G1& o) const;
  G1 operator-() const;
  G1 operator*(const Scalar& s) const;
  G1& operator+=(const G1& o) { return *this = *this + o; }
  bool operator==(const G1& o) const;

  const blst_p1& raw() const { return p_; }
  blst_p1_affine affine() const;

 private:
  blst_p1 p_;
};

class G2 {
 public:
  static constexpr std::size_t kEncodedSize = 96;

  G2();  // identity
  explicit G2(const blst_p2& p) : p_(p) {}
  static G2 generator();
  static G2 from_bytes(ByteView b);

  Bytes to_bytes() const;
  bool is_identity() const;
  bool in_subgroup() const;
  G2 mul_raw(ByteView le, std::size_t nbits) const;

  G2 operator+(const G2& o) const;
  G2 operator-(const G2& o) const;
  G2 operator-() const;
  G2 operator*(const Scalar& s) const;
  bool operator==(const G2& o) const;

  const blst_p2& raw() const { return p_; }
  blst_p2_affine affine() const;

 private:
  blst_p2 p_;
};

inline G1 operator*(const Scalar& s, const G1& p) { return p * s; }
inline G2 operator*(const Scalar& s, const G2& p) { return p * s; }

class GT {
 public:
  static constexpr std::size_t kEncodedSize = 576;

  GT();  // identity
  explicit GT(const blst_fp12& f) : f_(f) {}
  static GT from_bytes(ByteView b);

  Bytes to_bytes() const;
  bool is_one() const;
  GT inverse() const;
  GT pow(const Scalar& e) const;

  GT operator*(const GT& o) const;
  GT operator/(const GT& o) const { return *this * o.inverse(); }
  bool operator==(const GT& o) const;

  const blst_fp12& raw() const { return f_; }

 private:
  blst_fp12 f_;
};

GT pairing(const G1& p, const G2& q);
// prod e(ps[i], qs[i]) with a single final exponentiation.
GT multi_pairing(std::span<const G1> ps, std::span<const G2> qs);

// Public parameters of the bilinear setting.
struct PairingContext {
  std::string_view curve_id;
  BigInt order;
  G1 g1;
  G2 g2;
  GT z;  // pairing(g1, g2)

  // z^e through a fixed-base table; equal to z.pow(e).
  GT z_pow(const Scalar& e) const;

  static const PairingContext& get();
};

}  // namespace hidm
