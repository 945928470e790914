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

// DID document ledger. Registration and updates carry a proof of control:
// a Schnorr signature by an authentication key of the new document (first
// registration) or of the current version (update).

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hidm/common/bytes.hpp"
#include "hidm/ledgers/chain.hpp"
#include "hidm/signatures/schnorr.hpp"

namespace hidm {

namespace did_keys {
// Purposes.
inline constexpr std::string_view kAuthentication = "authentication";
inline constexpr std::string_view kLvcIssuer = "lvc-issuer";
inline constexpr std::string_view kWarrantIssuer = "warrant-issuer";
inline constexpr std::string_view kCredentialIssuer = "credential-issuer";
inline constexpr std::string_view kTokenSigner = "token-signer";
inline constexpr std::string_view kPseudonymKeyIssuer = "pseudonym-key-issuer";
inline constexpr std::string_view kRecordEncryption = "record-encryption";
// Types.
inline constexpr std::string_view kSchnorr = "schnorr-ffc3072";
inline constexpr std::string_view kRsa = "rsa-pkcs1-sha256";
inline constexpr std::string_view kClRsa = "cl-rsa";
inline constexpr std::string_view kClPairing = "cl-pairing";
inline constexpr std::string_view kBlsG1 = "bls12381-g1";
inline constexpr std::string_view kBlsG2 = "bls12381-g2";
}  // namespace did_keys

struct DidKey {
  std::string id;
  std::string purpose;
  std::string type;
  Bytes key;

  bool operator==(const DidKey&) const = default;
};

struct DidDocument {
  std::string did;
  std::vector<DidKey> keys;
  std::vector<std::string> endpoints;
  std::uint64_t version = 1;

  const DidKey* find(std::string_view purpose) const;
  nlohmann::json to_json() const;
  static DidDocument from_json(const nlohmann::json& j);
  // Message covered by the proof of control.
  Bytes signing_bytes() const;
  bool operator==(const DidDocument&) const = default;
};

struct DidProof {
  std::string key_id;
  SchnorrSig sig;
};

DidProof did_prove(const DidDocument& doc, const std::string& key_id, const SchnorrKeypair& key, Rng& rng);
// Schnorr signature under the authentication key `key_id` of `doc`.
bool did_key_verify(const DidDocument& doc, const std::string& key_id, ByteView msg, const SchnorrSig& sig);

class DidLedger {
 public:
  explicit DidLedger(std::optional<std::filesystem::path> file = {});

  // Throws ProtocolError(kUnauthorizedUpdate) on a bad proof or version.
  void register_document(const DidDocument& doc, const DidProof& proof);
  std::optional<DidDocument> resolve(std::string_view did) const;

  // The root authority may revoke any DID; the proof signs the revoked DID.
  void set_root(std::string root_did);
  void revoke(std::string_view did, const DidProof& root_proof);
  bool is_revoked(std::string_view did) const;
  static Bytes revocation_message(std::string_view did);

  const HashChain& chain() const { return chain_; }

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, DidDocument, std::less<>> docs_;
  std::map<std::string, bool, std::less<>> revoked_;
  std::string root_;
  HashChain chain_;
};

}  // namespace hidm
