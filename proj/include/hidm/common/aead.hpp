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

// AES-256-GCM with the nonce carried in the ciphertext:
//   nonce (12) || body || tag (16)

#pragma once

#include <optional>

#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"

namespace hidm {

inline constexpr std::size_t kAeadKeySize = 32;
inline constexpr std::size_t kAeadNonceSize = 12;
inline constexpr std::size_t kAeadTagSize = 16;

Bytes aead_seal(ByteView key, ByteView plaintext, ByteView aad, Rng& rng);
Bytes aead_seal_with_nonce(ByteView key, ByteView nonce, ByteView plaintext, ByteView aad);
// nullopt on any authentication or framing failure.
std::optional<Bytes> aead_open(ByteView key, ByteView sealed, ByteView aad);

}  // namespace hidm
