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

// Variant-agnostic CL credential signatures. Attributes are byte strings;
// each is mapped to a field element together with its slot index before
// signing, so reordering attributes changes every encoded message.

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "hidm/algebra/curve.hpp"
#include "hidm/common/bigint.hpp"
#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"
#include "hidm/signatures/cl_pairing.hpp"
#include "hidm/signatures/cl_rsa.hpp"

namespace hidm {

enum class ClVariant { kRsa, kPairing };

std::string_view cl_variant_name(ClVariant v);  // "cl-rsa" / "cl-pairing"
std::optional<ClVariant> parse_cl_variant(std::string_view name);

class ClPublicKey {
 public:
  ClPublicKey() = default;
  explicit ClPublicKey(cl_rsa::PublicKey pk) : key_(std::move(pk)) {}
  explicit ClPublicKey(cl_pairing::PublicKey pk) : key_(std::move(pk)) {}

  ClVariant variant() const;
  std::size_t slots() const;
  const cl_rsa::PublicKey* rsa() const { return std::get_if<cl_rsa::PublicKey>(&key_); }
  const cl_pairing::PublicKey* pairing() const { return std::get_if<cl_pairing::PublicKey>(&key_); }

  // One variant byte followed by the variant encoding.
  Bytes to_bytes() const;
  static ClPublicKey from_bytes(ByteView b);
  bool operator==(const ClPublicKey&) const = default;

 private:
  std::variant<cl_rsa::PublicKey, cl_pairing::PublicKey> key_;
};

class ClSignature {
 public:
  ClSignature() = default;
  explicit ClSignature(cl_rsa::Signature s) : sig_(std::move(s)) {}
  explicit ClSignature(cl_pairing::Signature s) : sig_(std::move(s)) {}

  ClVariant variant() const;
  const cl_rsa::Signature* rsa() const { return std::get_if<cl_rsa::Signature>(&sig_); }
  const cl_pairing::Signature* pairing() const { return std::get_if<cl_pairing::Signature>(&sig_); }

  Bytes to_bytes() const;
  static ClSignature from_bytes(ByteView b);
  // Size of the bare signature value, without the variant byte.
  std::size_t payload_size() const;
  bool operator==(const ClSignature&) const = default;

 private:
  std::variant<cl_rsa::Signature, cl_pairing::Signature> sig_;
};

struct ClKeypair {
  std::variant<cl_rsa::Keypair, cl_pairing::Keypair> key;
  ClPublicKey pub;

  static ClKeypair generate(ClVariant variant, std::size_t slots, Rng& rng);
  ClVariant variant() const { return pub.variant(); }
  std::size_t slots() const { return pub.slots(); }
  // Signs and verifies a fixed attribute list.
  bool self_test(Rng& rng) const;
};

Scalar cl_encode_attribute(std::size_t slot, ByteView value);
std::vector<Scalar> cl_encode_attributes(std::span<const Bytes> attrs);

// Throws std::invalid_argument on a slot-count mismatch.
ClSignature cl_sign(std::span<const Bytes> attrs, const ClKeypair& key, Rng& rng);
bool cl_verify(std::span<const Bytes> attrs, const ClSignature& sig, const ClPublicKey& pub);

// Same as above on pre-encoded attributes.
ClSignature cl_sign_encoded(std::span<const Scalar> messages, const ClKeypair& key, Rng& rng);
bool cl_verify_encoded(std::span<const Scalar> messages, const ClSignature& sig, const ClPublicKey& pub);

}  // namespace hidm
