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

#include "hidm/ledgers/did.hpp"

#include "hidm/common/error.hpp"

namespace hidm {

const DidKey* DidDocument::find(std::string_view purpose) const {
  for (const auto& k : keys) {
    if (k.purpose == purpose) return &k;
  }
  return nullptr;
}

nlohmann::json DidDocument::to_json() const {
  nlohmann::json ks = nlohmann::json::array();
  for (const auto& k : keys) {
    ks.push_back({{"id", k.id}, {"purpose", k.purpose}, {"type", k.type}, {"key", to_hex(k.key)}});
  }
  return {{"did", did}, {"keys", ks}, {"endpoints", endpoints}, {"version", version}};
}

DidDocument DidDocument::from_json(const nlohmann::json& j) {
  try {
    DidDocument doc;
    doc.did = j.at("did").get<std::string>();
    for (const auto& k : j.at("keys")) {
      doc.keys.push_back(DidKey{k.at("id").get<std::string>(), k.at("purpose").get<std::string>(),
                                k.at("type").get<std::string>(), from_hex(k.at("key").get<std::string>())});
    }
    doc.endpoints = j.at("endpoints").get<std::vector<std::string>>();
    doc.version = j.at("version").get<std::uint64_t>();
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("malformed DID document: ") + e.what());
  }
}

Bytes DidDocument::signing_bytes() const {
  return FieldWriter().field("HIDM/did-document").field(to_json().dump()).bytes();
}

DidProof did_prove(const DidDocument& doc, const std::string& key_id, const SchnorrKeypair& key, Rng& rng) {
  return DidProof{key_id, schnorr_sign(SchnorrGroup::standard(), doc.signing_bytes(), key, rng)};
}

bool did_key_verify(const DidDocument& doc, const std::string& key_id, ByteView msg, const SchnorrSig& sig) {
  for (const auto& k : doc.keys) {
    if (k.id != key_id || k.purpose != did_keys::kAuthentication || k.type != did_keys::kSchnorr) continue;
    return schnorr_verify(SchnorrGroup::standard(), msg, sig, bigint_from_bytes(k.key));
  }
  return false;
}

DidLedger::DidLedger(std::optional<std::filesystem::path> file) : chain_(std::move(file)) {}

void DidLedger::register_document(const DidDocument& doc, const DidProof& proof) {
  std::unique_lock lock(mu_);
  auto it = docs_.find(doc.did);
  Bytes msg = doc.signing_bytes();
  if (it == docs_.end()) {
    if (doc.version != 1) throw ProtocolError(Reason::kUnauthorizedUpdate, "first version must be 1");
    if (!did_key_verify(doc, proof.key_id, msg, proof.sig)) {
      throw ProtocolError(Reason::kUnauthorizedUpdate, "registration not signed by the document's own key");
    }
  } else {
    if (doc.version != it->second.version + 1) throw ProtocolError(Reason::kUnauthorizedUpdate, "version must increase by one");
    if (!did_key_verify(it->second, proof.key_id, msg, proof.sig)) {
      throw ProtocolError(Reason::kUnauthorizedUpdate, "update not signed by a key of the prior version");
    }
  }
  chain_.append({{"op", it == docs_.end() ? "register" : "update"}, {"doc", doc.to_json()}});
  docs_[doc.did] = doc;
}

std::optional<DidDocument> DidLedger::resolve(std::string_view did) const {
  std::shared_lock lock(mu_);
  auto it = docs_.find(did);
  if (it == docs_.end()) return std::nullopt;
  return it->second;
}

void DidLedger::set_root(std::string root_did) {
  std::unique_lock lock(mu_);
  root_ = std::move(root_did);
}

Bytes DidLedger::revocation_message(std::string_view did) {
  return FieldWriter().field("HIDM/did-revoke").field(did).bytes();
}

void DidLedger::revoke(std::string_view did, const DidProof& root_proof) {
  std::unique_lock lock(mu_);
  auto root = docs_.find(root_);
  if (root == docs_.end() || !did_key_verify(root->second, root_proof.key_id, revocation_message(did), root_proof.sig)) {
    throw ProtocolError(Reason::kUnauthorizedUpdate, "revocation not signed by the root authority");
  }
  if (!docs_.count(did)) throw ProtocolError(Reason::kInvalidArgument, "unknown DID");
  chain_.append({{"op", "revoke"}, {"did", std::string(did)}});
  revoked_[std::string(did)] = true;
}

bool DidLedger::is_revoked(std::string_view did) const {
  std::shared_lock lock(mu_);
  return revoked_.count(did) > 0;
}

}  // namespace hidm
