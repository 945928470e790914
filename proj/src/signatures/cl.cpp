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

#include "hidm/signatures/cl.hpp"

#include <stdexcept>

#include "hidm/algebra/hash.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

namespace {

constexpr std::uint8_t kRsaTag = 1;
constexpr std::uint8_t kPairingTag = 2;

std::vector<BigInt> to_bigints(std::span<const Scalar> messages) {
  std::vector<BigInt> out;
  out.reserve(messages.size());
  for (const auto& m : messages) out.push_back(m.to_bigint());
  return out;
}

}  // namespace

std::string_view cl_variant_name(ClVariant v) { return v == ClVariant::kRsa ? "cl-rsa" : "cl-pairing"; }

std::optional<ClVariant> parse_cl_variant(std::string_view name) {
  if (name == "cl-rsa") return ClVariant::kRsa;
  if (name == "cl-pairing") return ClVariant::kPairing;
  return std::nullopt;
}

ClVariant ClPublicKey::variant() const { return rsa() ? ClVariant::kRsa : ClVariant::kPairing; }

std::size_t ClPublicKey::slots() const { return rsa() ? rsa()->slots() : pairing()->slots(); }

Bytes ClPublicKey::to_bytes() const {
  Bytes out{rsa() ? kRsaTag : kPairingTag};
  append(out, rsa() ? rsa()->to_bytes() : pairing()->to_bytes());
  return out;
}

ClPublicKey ClPublicKey::from_bytes(ByteView b) {
  if (b.empty()) throw DecodeError("empty CL public key");
  if (b[0] == kRsaTag) return ClPublicKey(cl_rsa::PublicKey::from_bytes(b.subspan(1)));
  if (b[0] == kPairingTag) return ClPublicKey(cl_pairing::PublicKey::from_bytes(b.subspan(1)));
  throw DecodeError("unknown CL variant");
}

ClVariant ClSignature::variant() const { return rsa() ? ClVariant::kRsa : ClVariant::kPairing; }

Bytes ClSignature::to_bytes() const {
  Bytes out{rsa() ? kRsaTag : kPairingTag};
  append(out, rsa() ? rsa()->to_bytes() : pairing()->to_bytes());
  return out;
}

std::size_t ClSignature::payload_size() const { return to_bytes().size() - 1; }

ClSignature ClSignature::from_bytes(ByteView b) {
  if (b.empty()) throw DecodeError("empty CL signature");
  if (b[0] == kRsaTag) return ClSignature(cl_rsa::Signature::from_bytes(b.subspan(1)));
  if (b[0] == kPairingTag) return ClSignature(cl_pairing::Signature::from_bytes(b.subspan(1)));
  throw DecodeError("unknown CL variant");
}

ClKeypair ClKeypair::generate(ClVariant variant, std::size_t slots, Rng& rng) {
  ClKeypair kp;
  if (variant == ClVariant::kRsa) {
    auto k = cl_rsa::Keypair::generate(slots, rng);
    kp.pub = ClPublicKey(k.pk);
    kp.key = std::move(k);
  } else {
    auto k = cl_pairing::Keypair::generate(slots, rng);
    kp.pub = ClPublicKey(k.pk);
    kp.key = std::move(k);
  }
  return kp;
}

bool ClKeypair::self_test(Rng& rng) const {
  std::vector<Bytes> attrs;
  for (std::size_t i = 0; i < slots(); ++i) attrs.push_back(to_bytes("self-test-" + std::to_string(i)));
  return cl_verify(attrs, cl_sign(attrs, *this, rng), pub);
}

Scalar cl_encode_attribute(std::size_t slot, ByteView value) {
  return hash_to_scalar(tags::kClAttr, FieldWriter().u64(slot).field(value).bytes());
}

std::vector<Scalar> cl_encode_attributes(std::span<const Bytes> attrs) {
  std::vector<Scalar> out;
  out.reserve(attrs.size());
  for (std::size_t i = 0; i < attrs.size(); ++i) out.push_back(cl_encode_attribute(i, attrs[i]));
  return out;
}

ClSignature cl_sign_encoded(std::span<const Scalar> messages, const ClKeypair& key, Rng& rng) {
  if (messages.size() != key.slots()) throw std::invalid_argument("attribute count does not match the issuer key");
  if (const auto* k = std::get_if<cl_rsa::Keypair>(&key.key)) {
    auto ms = to_bigints(messages);
    return ClSignature(cl_rsa::sign(ms, *k, rng));
  }
  return ClSignature(cl_pairing::sign(messages, std::get<cl_pairing::Keypair>(key.key), rng));
}

bool cl_verify_encoded(std::span<const Scalar> messages, const ClSignature& sig, const ClPublicKey& pub) {
  if (sig.variant() != pub.variant() || messages.size() != pub.slots()) return false;
  if (pub.rsa()) {
    auto ms = to_bigints(messages);
    return cl_rsa::verify(ms, *sig.rsa(), *pub.rsa());
  }
  return cl_pairing::verify(messages, *sig.pairing(), *pub.pairing());
}

ClSignature cl_sign(std::span<const Bytes> attrs, const ClKeypair& key, Rng& rng) {
  return cl_sign_encoded(cl_encode_attributes(attrs), key, rng);
}

bool cl_verify(std::span<const Bytes> attrs, const ClSignature& sig, const ClPublicKey& pub) {
  if (attrs.size() != pub.slots()) return false;
  return cl_verify_encoded(cl_encode_attributes(attrs), sig, pub);
}

}  // namespace hidm
