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

// RSASSA-PKCS1-v1_5 with SHA-256 on GMP integers, with key generation
// driven by the library RNG so keys are reproducible in test-vector mode.

#pragma once

#include "hidm/common/bigint.hpp"
#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"

namespace hidm {

struct RsaPublicKey {
  BigInt n;
  BigInt e;

  std::size_t modulus_size() const { return byte_length(n); }
  Bytes to_bytes() const;
  static RsaPublicKey from_bytes(ByteView b);
  bool operator==(const RsaPublicKey&) const = default;
};

struct RsaKeypair {
  RsaPublicKey pub;
  BigInt d;
  BigInt p;
  BigInt q;

  static RsaKeypair generate(std::size_t bits, Rng& rng);
};

Bytes rsa_sign(ByteView msg, const RsaKeypair& key);
bool rsa_verify(ByteView msg, ByteView sig, const RsaPublicKey& pub);

}  // namespace hidm
