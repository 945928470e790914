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

#include "hidm/signatures/cl_pairing.hpp"

#include <stdexcept>

#include "hidm/algebra/hash.hpp"
#include "hidm/common/error.hpp"

namespace hidm::cl_pairing {

namespace {

G1 mul_u64(const G1& p, std::uint64_t w) {
  std::uint8_t le[8];
  for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(w >> (8 * i));
  return p.mul_raw(ByteView(le, 8), 64);
}

}  // namespace

Bytes PublicKey::to_bytes() const {
  Bytes out = x.to_bytes();
  append(out, y.to_bytes());
  for (const auto& zi : z) append(out, zi.to_bytes());
  return out;
}

PublicKey PublicKey::from_bytes(ByteView b) {
  constexpr std::size_t w = G2::kEncodedSize;
  if (b.size() < 2 * w || b.size() % w != 0) throw DecodeError("CL-pairing public key has wrong length");
  PublicKey pk;
  pk.x = G2::from_bytes(b.subspan(0, w));
  pk.y = G2::from_bytes(b.subspan(w, w));
  for (std::size_t off = 2 * w; off < b.size(); off += w) pk.z.push_back(G2::from_bytes(b.subspan(off, w)));
  return pk;
}

Keypair Keypair::generate(std::size_t slots, Rng& rng) {
  if (slots == 0) throw std::invalid_argument("CL-pairing key needs at least one slot");
  const G2 g2 = G2::generator();
  Keypair kp;
  kp.sk.x = Scalar::random_nonzero(rng);
  kp.sk.y = Scalar::random_nonzero(rng);
  kp.pk.x = g2 * kp.sk.x;
  kp.pk.y = g2 * kp.sk.y;
  for (std::size_t i = 1; i < slots; ++i) {
    Scalar zi = Scalar::random_nonzero(rng);
    kp.sk.z.push_back(zi);
    kp.pk.z.push_back(g2 * zi);
  }
  return kp;
}

Bytes Signature::to_bytes() const {
  Bytes out = a.to_bytes();
  for (const auto& p : big_a) append(out, p.to_bytes());
  append(out, b.to_bytes());
  for (const auto& p : big_b) append(out, p.to_bytes());
  append(out, c.to_bytes());
  return out;
}

Signature Signature::from_bytes(ByteView bytes) {
  constexpr std::size_t w = G1::kEncodedSize;
  if (bytes.size() % w != 0 || bytes.size() < 3 * w || ((bytes.size() / w) - 3) % 2 != 0) {
    throw DecodeError("CL-pairing signature has wrong length");
  }
  std::size_t l = (bytes.size() / w - 3) / 2;
  std::size_t off = 0;
  auto next = [&] {
    G1 p = G1::from_bytes(bytes.subspan(off, w));
    off += w;
    return p;
  };
  Signature sig;
  sig.a = next();
  for (std::size_t i = 0; i < l; ++i) sig.big_a.push_back(next());
  sig.b = next();
  for (std::size_t i = 0; i < l; ++i) sig.big_b.push_back(next());
  sig.c = next();
  return sig;
}

std::vector<std::uint64_t> batch_weights(ByteView seed, std::size_t count) {
  Bytes stream = shake256(FieldWriter().field(tags::kClBatch).field(seed).bytes(), 8 * count);
  std::vector<std::uint64_t> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = read_u64be(ByteView(stream).subspan(8 * i, 8));
    if (out[i] == 0) out[i] = 1;
  }
  return out;
}

Signature sign(std::span<const Scalar> messages, const Keypair& key, Rng& rng) {
  const std::size_t l = key.sk.z.size();
  if (messages.size() != l + 1) throw std::invalid_argument("CL-pairing message count does not match key slots");
  Scalar alpha = Scalar::random_nonzero(rng);
  const G1 g1 = G1::generator();
  Signature sig;
  sig.a = g1 * alpha;
  sig.b = sig.a * key.sk.y;
  Scalar xy = key.sk.x * key.sk.y;
  Scalar c_exp = key.sk.x + xy * messages[0];
  for (std::size_t i = 0; i < l; ++i) {
    sig.big_a.push_back(sig.a * key.sk.z[i]);
    sig.big_b.push_back(sig.a * (key.sk.y * key.sk.z[i]));
    c_exp += xy * messages[i + 1] * key.sk.z[i];
  }
  sig.c = sig.a * c_exp;
  return sig;
}

namespace {

// Appends the weighted pairs for the structural equations and adds the
// g2-side accumulator to `g2_side`.
void structure_pairs(const Signature& sig, const PublicKey& pk, std::span<const std::uint64_t> w,
                     std::vector<G1>& ps, std::vector<G2>& qs, G1& g2_side) {
  const std::size_t l = pk.z.size();
  // w[0..l): a vs Z_i; w[l]: a vs Y; w[l+1..2l+1): A_i vs Y.
  for (std::size_t i = 0; i < l; ++i) {
    ps.push_back(mul_u64(sig.a, w[i]));
    qs.push_back(pk.z[i]);
    g2_side += mul_u64(sig.big_a[i], w[i]);
  }
  G1 y_side = mul_u64(sig.a, w[l]);
  g2_side += mul_u64(sig.b, w[l]);
  for (std::size_t i = 0; i < l; ++i) {
    y_side += mul_u64(sig.big_a[i], w[l + 1 + i]);
    g2_side += mul_u64(sig.big_b[i], w[l + 1 + i]);
  }
  ps.push_back(y_side);
  qs.push_back(pk.y);
}

bool shape_ok(const Signature& sig, const PublicKey& pk) {
  const std::size_t l = pk.z.size();
  return sig.big_a.size() == l && sig.big_b.size() == l && !sig.a.is_identity();
}

Bytes batch_seed(const Signature& sig, const PublicKey& pk, std::span<const Scalar> messages) {
  FieldWriter w;
  w.field(sig.to_bytes()).field(pk.to_bytes());
  for (const auto& m : messages) w.field(m.to_bytes());
  return std::move(w).bytes();
}

}  // namespace

bool verify_structure(const Signature& sig, const PublicKey& pk) {
  if (!shape_ok(sig, pk)) return false;
  const std::size_t l = pk.z.size();
  auto w = batch_weights(batch_seed(sig, pk, {}), 2 * l + 1);
  std::vector<G1> ps;
  std::vector<G2> qs;
  G1 g2_side;
  structure_pairs(sig, pk, w, ps, qs, g2_side);
  ps.push_back(-g2_side);
  qs.push_back(G2::generator());
  return multi_pairing(ps, qs).is_one();
}

bool verify(std::span<const Scalar> messages, const Signature& sig, const PublicKey& pk) {
  if (!shape_ok(sig, pk) || messages.size() != pk.slots()) return false;
  const std::size_t l = pk.z.size();
  auto w = batch_weights(batch_seed(sig, pk, messages), 2 * l + 2);
  std::vector<G1> ps;
  std::vector<G2> qs;
  G1 g2_side;
  structure_pairs(sig, pk, w, ps, qs, g2_side);

  // e(a + m_0 b + sum m_i B_i, X) = e(c, g2)
  std::vector<G1> points{sig.b};
  std::vector<Scalar> scalars{messages[0]};
  for (std::size_t i = 0; i < l; ++i) {
    points.push_back(sig.big_b[i]);
    scalars.push_back(messages[i + 1]);
  }
  const std::uint64_t w_last = w[2 * l + 1];
  ps.push_back(mul_u64(sig.a + G1::msm(points, scalars), w_last));
  qs.push_back(pk.x);
  g2_side += mul_u64(sig.c, w_last);

  ps.push_back(-g2_side);
  qs.push_back(G2::generator());
  return multi_pairing(ps, qs).is_one();
}

}  // namespace hidm::cl_pairing
