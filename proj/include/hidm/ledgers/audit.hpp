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

// Auditor ledger: hash-chained, access-tiered event records.
//
// Writers are core entities registered by module name against their DID;
// every append carries a Schnorr signature by that DID's authentication key.
// Readers authenticate per query: patients with a credential proof plus IBS
// signatures for the pseudonyms they claim, authorities and administrators
// with a GHA-issued L-VC plus a signature by their DID key. Query metadata
// goes to a separate administrator-only chain.

#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hidm/credentials/artifacts.hpp"
#include "hidm/ledgers/audit_types.hpp"
#include "hidm/ledgers/chain.hpp"
#include "hidm/ledgers/did.hpp"
#include "hidm/signatures/ibs.hpp"

namespace hidm {

using Clock = std::function<std::int64_t()>;
std::int64_t system_clock_now();

struct AuditRecord {
  std::uint64_t log_id = 0;
  std::int64_t timestamp = 0;
  std::string origin_module;
  std::string event_type;
  AccessLevel access_level = AccessLevel::kAuditorAuthorityAccessible;
  std::string patient_identifier;
  std::optional<std::string> hp_identifier;
  std::map<std::string, std::string> details;

  nlohmann::json to_json() const;
  static AuditRecord from_json(const nlohmann::json& j);
  // Bytes covered by the origin signature (everything but logID).
  Bytes signing_bytes() const;
  bool operator==(const AuditRecord&) const = default;
};

struct OriginProof {
  std::string key_id;
  SchnorrSig sig;
};

// key=value pairs separated by '&' or ','. Keys: logID, originModule,
// eventType, accessLevel, patientIdentifier,
// healthcareProfessionalIdentifier, and detail.<name>. Empty matches all.
class AuditFilter {
 public:
  AuditFilter() = default;
  // Throws std::invalid_argument on an unknown key or a missing '='.
  static AuditFilter parse(std::string_view text);
  bool matches(const AuditRecord& r) const;
  const std::string& text() const { return text_; }

 private:
  std::vector<std::pair<std::string, std::string>> terms_;
  std::string text_;
};

struct PseudonymClaim {
  Bytes pseudonym;  // canonical encoding, also the IBS identity
  IbsSignature sig;
};

struct PatientQueryAuth {
  ClProof credential_proof;  // context: pok_context("audit-query", ledger DID, nonce)
  std::vector<PseudonymClaim> pseudonyms;
};

struct AuthorityQueryAuth {
  LegitimacyCredential lvc;
  std::string key_id;
  SchnorrSig sig;
};

struct QueryRequest {
  Bytes nonce;  // from AuditLedger::issue_nonce
  std::string filter;
  std::variant<PatientQueryAuth, AuthorityQueryAuth> auth;
};

// Message signed by every claim and by authority requesters.
Bytes audit_query_message(std::string_view ledger_did, ByteView nonce, std::string_view filter);
Bytes audit_query_context(std::string_view ledger_did, ByteView nonce);

struct QueryResult {
  std::vector<AuditRecord> records;
  bool auth_error = false;
  std::string error;
  std::optional<AccessLevel> tier;
};

// Keys a ledger needs to authenticate readers.
struct AuditTrustAnchors {
  const DidLedger* dids = nullptr;
  RsaPublicKey gha;
  ClPublicKey credential_issuer;
  G2 ibs_mpk;
};

class AuditLedger {
 public:
  AuditLedger(std::string did, AuditTrustAnchors anchors, std::optional<std::filesystem::path> file = {},
              Clock clock = system_clock_now);

  const std::string& did() const { return did_; }
  void register_origin(std::string module, std::string origin_did);
  // Throws ProtocolError(kOriginMismatch) unless `proof` verifies under an
  // authentication key of the DID registered for record.origin_module.
  std::uint64_t append(AuditRecord record, const OriginProof& proof);

  Bytes issue_nonce(Rng& rng);
  QueryResult query(const QueryRequest& request);

  std::vector<AuditRecord> records() const;
  std::vector<AuditRecord> admin_records() const;
  const HashChain& chain() const { return chain_; }
  const HashChain& admin_chain() const { return admin_chain_; }
  std::int64_t now() const { return clock_(); }

 private:
  QueryResult authenticate(const QueryRequest& request, std::set<std::string>& identifiers, std::string& requester);
  void log_query(const std::string& requester, const std::string& filter, const QueryResult& result);

  std::string did_;
  AuditTrustAnchors anchors_;
  Clock clock_;
  mutable std::mutex mu_;
  std::map<std::string, std::string> origins_;
  std::set<Bytes> nonces_;
  std::vector<AuditRecord> records_;
  std::vector<AuditRecord> admin_records_;
  HashChain chain_;
  HashChain admin_chain_;
};

// An entity's handle for logging its own actions.
class AuditWriter final : public AuditSink {
 public:
  AuditWriter(AuditLedger& ledger, std::string module, std::string key_id, const SchnorrKeypair& key, Rng& rng);
  std::uint64_t log(const AuditEvent& event) override;

 private:
  AuditLedger& ledger_;
  std::string module_;
  std::string key_id_;
  const SchnorrKeypair& key_;
  std::mutex mu_;
  std::unique_ptr<Rng> rng_;
};

}  // namespace hidm
