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

#include "hidm/algebra/curve.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "hidm/common/error.hpp"

namespace hidm {

namespace {

constexpr char kOrderHex[] = "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001";
constexpr std::size_t kScalarBits = 255;

blst_scalar to_blst_scalar(const blst_fr& f) {
  blst_scalar s;
  blst_scalar_from_fr(&s, &f);
  return s;
}

}  // namespace

// ---- Scalar ----------------------------------------------------------------

Scalar::Scalar() { std::memset(&v_, 0, sizeof(v_)); }

Scalar Scalar::from_u64(std::uint64_t v) {
  std::uint64_t limbs[4] = {v, 0, 0, 0};
  Scalar out;
  blst_fr_from_uint64(&out.v_, limbs);
  return out;
}

Scalar Scalar::random(Rng& rng) {
  std::array<std::uint8_t, 64> wide{};
  rng.fill(wide);
  return reduce(wide);
}

Scalar Scalar::random_nonzero(Rng& rng) {
  for (;;) {
    Scalar s = random(rng);
    if (!s.is_zero()) return s;
  }
}

Scalar Scalar::from_bytes(ByteView be) {
  if (be.size() != kEncodedSize) throw DecodeError("scalar encoding must be 32 bytes");
  blst_scalar s;
  blst_scalar_from_bendian(&s, be.data());
  if (!blst_scalar_fr_check(&s)) throw DecodeError("scalar out of range");
  Scalar out;
  blst_fr_from_scalar(&out.v_, &s);
  return out;
}

Scalar Scalar::reduce(ByteView be) {
  blst_scalar s;
  if (be.empty()) return Scalar();
  blst_scalar_from_be_bytes(&s, be.data(), be.size());
  Scalar out;
  blst_fr_from_scalar(&out.v_, &s);
  return out;
}

Scalar Scalar::from_bigint(const BigInt& v) {
  BigInt reduced = mod(v, order());
  return from_bytes(bigint_to_bytes(reduced, kEncodedSize));
}

const BigInt& Scalar::order() {
  static const BigInt r = bigint_from_hex(kOrderHex);
  return r;
}

Bytes Scalar::to_bytes() const {
  blst_scalar s = to_blst_scalar(v_);
  Bytes out(kEncodedSize);
  blst_bendian_from_scalar(out.data(), &s);
  return out;
}

BigInt Scalar::to_bigint() const { return bigint_from_bytes(to_bytes()); }

std::array<std::uint8_t, 32> Scalar::le_bytes() const {
  blst_scalar s = to_blst_scalar(v_);
  std::array<std::uint8_t, 32> out{};
  std::memcpy(out.data(), s.b, 32);
  return out;
}

bool Scalar::is_zero() const {
  auto b = le_bytes();
  return std::all_of(b.begin(), b.end(), [](std::uint8_t x) { return x == 0; });
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("zero scalar has no inverse");
  Scalar out;
  blst_fr_inverse(&out.v_, &v_);
  return out;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar out;
  blst_fr_add(&out.v_, &v_, &o.v_);
  return out;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar out;
  blst_fr_sub(&out.v_, &v_, &o.v_);
  return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar out;
  blst_fr_mul(&out.v_, &v_, &o.v_);
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out;
  blst_fr_cneg(&out.v_, &v_, true);
  return out;
}

bool Scalar::operator==(const Scalar& o) const { return le_bytes() == o.le_bytes(); }

// ---- G1 --------------------------------------------------------------------

G1::G1() { std::memset(&p_, 0, sizeof(p_)); }

G1 G1::generator() { return G1(*blst_p1_generator()); }

G1 G1::from_bytes(ByteView b) {
  if (b.size() != kEncodedSize) throw DecodeError("G1 encoding must be 48 bytes");
  blst_p1_affine aff;
  if (blst_p1_uncompress(&aff, b.data()) != BLST_SUCCESS) throw DecodeError("invalid G1 encoding");
  if (!blst_p1_affine_in_g1(&aff)) throw DecodeError("G1 point outside the order-r subgroup");
  blst_p1 p;
  blst_p1_from_affine(&p, &aff);
  G1 out(p);
  // Compressed form must round-trip exactly; rejects redundant encodings.
  if (out.to_bytes() != Bytes(b.begin(), b.end())) throw DecodeError("non-canonical G1 encoding");
  return out;
}

G1 G1::msm(std::span<const G1> points, std::span<const Scalar> scalars) {
  if (points.size() != scalars.size()) throw std::invalid_argument("msm size mismatch");
  G1 acc;
  for (std::size_t i = 0; i < points.size(); ++i) acc += points[i] * scalars[i];
  return acc;
}

Bytes G1::to_bytes() const {
  Bytes out(kEncodedSize);
  blst_p1_compress(out.data(), &p_);
  return out;
}

bool G1::is_identity() const { return blst_p1_is_inf(&p_); }
bool G1::in_subgroup() const { return blst_p1_in_g1(&p_); }

G1 G1::mul_raw(ByteView le, std::size_t nbits) const {
  blst_p1 out;
  blst_p1_mult(&out, &p_, le.data(), nbits);
  return G1(out);
}

G1 G1::operator+(const G1& o) const {
  blst_p1 out;
  blst_p1_add_or_double(&out, &p_, &o.p_);
  return G1(out);
}

G1 G1::operator-() const {
  blst_p1 out = p_;
  blst_p1_cneg(&out, true);
  return G1(out);
}

G1 G1::operator-(const G1& o) const { return *this + (-o); }

G1 G1::operator*(const Scalar& s) const {
  auto le = s.le_bytes();
  return mul_raw(le, kScalarBits);
}

bool G1::operator==(const G1& o) const { return blst_p1_is_equal(&p_, &o.p_); }

blst_p1_affine G1::affine() const {
  blst_p1_affine a;
  blst_p1_to_affine(&a, &p_);
  return a;
}

// ---- G2 --------------------------------------------------------------------

G2::G2() { std::memset(&p_, 0, sizeof(p_)); }

G2 G2::generator() { return G2(*blst_p2_generator()); }

G2 G2::from_bytes(ByteView b) {
  if (b.size() != kEncodedSize) throw DecodeError("G2 encoding must be 96 bytes");
  blst_p2_affine aff;
  if (blst_p2_uncompress(&aff, b.data()) != BLST_SUCCESS) throw DecodeError("invalid G2 encoding");
  if (!blst_p2_affine_in_g2(&aff)) throw DecodeError("G2 point outside the order-r subgroup");
  blst_p2 p;
  blst_p2_from_affine(&p, &aff);
  G2 out(p);
  if (out.to_bytes() != Bytes(b.begin(), b.end())) throw DecodeError("non-canonical G2 encoding");
  return out;
}

Bytes G2::to_bytes() const {
  Bytes out(kEncodedSize);
  blst_p2_compress(out.data(), &p_);
  return out;
}

bool G2::is_identity() const { return blst_p2_is_inf(&p_); }
bool G2::in_subgroup() const { return blst_p2_in_g2(&p_); }

G2 G2::mul_raw(ByteView le, std::size_t nbits) const {
  blst_p2 out;
  blst_p2_mult(&out, &p_, le.data(), nbits);
  return G2(out);
}

G2 G2::operator+(const G2& o) const {
  blst_p2 out;
  blst_p2_add_or_double(&out, &p_, &o.p_);
  return G2(out);
}

G2 G2::operator-() const {
  blst_p2 out = p_;
  blst_p2_cneg(&out, true);
  return G2(out);
}

G2 G2::operator-(const G2& o) const { return *this + (-o); }

G2 G2::operator*(const Scalar& s) const {
  auto le = s.le_bytes();
  return mul_raw(le, kScalarBits);
}

bool G2::operator==(const G2& o) const { return blst_p2_is_equal(&p_, &o.p_); }

blst_p2_affine G2::affine() const {
  blst_p2_affine a;
  blst_p2_to_affine(&a, &p_);
  return a;
}

// ---- GT --------------------------------------------------------------------

GT::GT() : f_(*blst_fp12_one()) {}

GT GT::from_bytes(ByteView b) {
  if (b.size() != kEncodedSize) throw DecodeError("GT encoding must be 576 bytes");
  blst_fp12 f;
  const std::uint8_t* in = b.data();
  // Mirrors blst_bendian_from_fp12: fp6 index j varies fastest inside fp2 index i.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 2; ++k) {
        blst_fp c;
        blst_fp_from_bendian(&c, in);
        std::array<std::uint8_t, 48> back{};
        blst_bendian_from_fp(back.data(), &c);
        if (std::memcmp(back.data(), in, 48) != 0) throw DecodeError("non-canonical GT coefficient");
        f.fp6[j].fp2[i].fp[k] = c;
        in += 48;
      }
    }
  }
  if (!blst_fp12_in_group(&f)) throw DecodeError("GT element outside the order-r subgroup");
  return GT(f);
}

Bytes GT::to_bytes() const {
  Bytes out(kEncodedSize);
  blst_bendian_from_fp12(out.data(), &f_);
  return out;
}

bool GT::is_one() const { return blst_fp12_is_one(&f_); }

GT GT::inverse() const {
  // GT lies in the cyclotomic subgroup, where inversion is conjugation.
  blst_fp12 out = f_;
  blst_fp12_conjugate(&out);
  return GT(out);
}

GT GT::pow(const Scalar& e) const {
  std::array<blst_fp12, 16> table;
  table[0] = *blst_fp12_one();
  table[1] = f_;
  for (std::size_t i = 2; i < 16; ++i) blst_fp12_mul(&table[i], &table[i - 1], &f_);

  Bytes be = e.to_bytes();
  blst_fp12 acc = *blst_fp12_one();
  bool started = false;
  for (std::uint8_t byte : be) {
    for (int half = 1; half >= 0; --half) {
      unsigned nibble = (byte >> (4 * half)) & 0x0f;
      if (started) {
        for (int s = 0; s < 4; ++s) blst_fp12_cyclotomic_sqr(&acc, &acc);
      }
      if (nibble != 0) {
        blst_fp12_mul(&acc, &acc, &table[nibble]);
        started = true;
      }
    }
  }
  return GT(acc);
}

GT GT::operator*(const GT& o) const {
  blst_fp12 out;
  blst_fp12_mul(&out, &f_, &o.f_);
  return GT(out);
}

bool GT::operator==(const GT& o) const { return blst_fp12_is_equal(&f_, &o.f_); }

// ---- pairing ---------------------------------------------------------------

GT pairing(const G1& p, const G2& q) {
  if (p.is_identity() || q.is_identity()) return GT();
  blst_p1_affine pa = p.affine();
  blst_p2_affine qa = q.affine();
  blst_fp12 ml;
  blst_miller_loop(&ml, &qa, &pa);
  blst_fp12 out;
  blst_final_exp(&out, &ml);
  return GT(out);
}

GT multi_pairing(std::span<const G1> ps, std::span<const G2> qs) {
  if (ps.size() != qs.size()) throw std::invalid_argument("multi_pairing size mismatch");
  std::vector<blst_p1_affine> pa;
  std::vector<blst_p2_affine> qa;
  pa.reserve(ps.size());
  qa.reserve(qs.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].is_identity() || qs[i].is_identity()) continue;
    pa.push_back(ps[i].affine());
    qa.push_back(qs[i].affine());
  }
  if (pa.empty()) return GT();
  std::vector<const blst_p1_affine*> pp;
  std::vector<const blst_p2_affine*> qp;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    pp.push_back(&pa[i]);
    qp.push_back(&qa[i]);
  }
  blst_fp12 ml;
  blst_miller_loop_n(&ml, qp.data(), pp.data(), pa.size());
  blst_fp12 out;
  blst_final_exp(&out, &ml);
  return GT(out);
}

// ---- PairingContext --------------------------------------------------------

namespace {

// table[i][d] = z^(d * 16^i) for the 64 nibbles of a 256-bit exponent.
struct FixedBaseTable {
  std::vector<std::array<blst_fp12, 16>> rows;

  explicit FixedBaseTable(const GT& base) : rows(64) {
    blst_fp12 b = base.raw();
    for (std::size_t i = 0; i < 64; ++i) {
      rows[i][0] = *blst_fp12_one();
      rows[i][1] = b;
      for (std::size_t d = 2; d < 16; ++d) blst_fp12_mul(&rows[i][d], &rows[i][d - 1], &b);
      for (int s = 0; s < 4; ++s) blst_fp12_cyclotomic_sqr(&b, &b);
    }
  }

  GT pow(const Scalar& e) const {
    auto le = e.le_bytes();
    blst_fp12 acc = *blst_fp12_one();
    for (std::size_t i = 0; i < 64; ++i) {
      unsigned nibble = (le[i / 2] >> (4 * (i % 2))) & 0x0f;
      if (nibble != 0) blst_fp12_mul(&acc, &acc, &rows[i][nibble]);
    }
    return GT(acc);
  }
};

const FixedBaseTable& z_table() {
  static const FixedBaseTable table(PairingContext::get().z);
  return table;
}

}  // namespace

GT PairingContext::z_pow(const Scalar& e) const { return z_table().pow(e); }

const PairingContext& PairingContext::get() {
  static const PairingContext ctx = [] {
    PairingContext c;
    c.curve_id = kCurveId;
    c.order = Scalar::order();
    c.g1 = G1::generator();
    c.g2 = G2::generator();
    c.z = pairing(c.g1, c.g2);
    return c;
  }();
  return ctx;
}

}  // namespace hidm
