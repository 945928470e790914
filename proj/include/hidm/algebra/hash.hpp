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

#include <string_view>

#include "hidm/algebra/curve.hpp"
#include "hidm/common/bigint.hpp"
#include "hidm/common/bytes.hpp"

namespace hidm {

// Domain tags. Every challenge hash in the library is separated by one.
namespace tags {
inline constexpr std::string_view kSchnorr = "HIDM/schnorr";
inline constexpr std::string_view kPbs = "HIDM/pbs";
inline constexpr std::string_view kPbsInfo = "HIDM/pbs-info";
inline constexpr std::string_view kPbsCommit = "HIDM/pbs-commit";
inline constexpr std::string_view kIbs = "HIDM/ibs";
inline constexpr std::string_view kIbsIdentity = "HIDM-IBS-IDENTITY-BLS12381G1_XMD:SHA-256_SSWU_RO_";
inline constexpr std::string_view kClPok = "HIDM/cl-pok";
inline constexpr std::string_view kClAttr = "HIDM/cl-attr";
inline constexpr std::string_view kClBatch = "HIDM/cl-batch";
inline constexpr std::string_view kPatientId = "HIDM/patient-id";
inline constexpr std::string_view kPbp = "HIDM/pbp";
inline constexpr std::string_view kLedger = "HIDM/ledger";
}  // namespace tags

Digest32 sha256(ByteView data);
Bytes shake256(ByteView data, std::size_t out_len);
Bytes hmac_sha256(ByteView key, ByteView data);
// RFC 5869 HKDF-SHA256.
Bytes hkdf_sha256(ByteView salt, ByteView ikm, ByteView info, std::size_t out_len);

// Deterministic map of (tag, input) into [0, modulus). The XOF output is
// bit_length(modulus) + 128 bits before reduction, bounding the bias by
// 2^-128. Throws std::invalid_argument for an empty tag or modulus < 2.
BigInt hash_to_field(std::string_view tag, ByteView input, const BigInt& modulus);
// hash_to_field specialised to the pairing scalar field.
Scalar hash_to_scalar(std::string_view tag, ByteView input);
// RFC 9380 hash_to_curve (SSWU, random-oracle variant) into G1.
G1 hash_to_g1(std::string_view tag, ByteView input);

}  // namespace hidm
