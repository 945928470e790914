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

// Entity state and the issuer/verifier side of every episode. Handlers take
// and return the JSON messages that travel over a SecureChannel, so tests
// can also drive them directly.

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hidm/actors/channel.hpp"
#include "hidm/credentials/issuance.hpp"
#include "hidm/ledgers/ati.hpp"
#include "hidm/ledgers/audit.hpp"
#include "hidm/ledgers/did.hpp"
#include "hidm/pre/pre.hpp"
#include "hidm/signatures/ibs.hpp"

namespace hidm {

namespace modules {
inline constexpr std::string_view kApc = "APC";
inline constexpr std::string_view kPta = "PTA";
inline constexpr std::string_view kHo = "HO";
inline constexpr std::string_view kHp = "HP";
inline constexpr std::string_view kHrr = "HRR";
}  // namespace modules

struct EntityIdentity {
  std::string role;
  std::string did;
  std::string key_id;
  SchnorrKeypair auth;
  LegitimacyCredential lvc;  // unsigned for patients and the GHA

  ChannelParty party() const { return ChannelParty{role, did, key_id, &auth}; }
};

// Registers a DID document holding a fresh Schnorr authentication key plus
// `extra` keys.
EntityIdentity register_identity(DidLedger& dids, std::string role, std::vector<DidKey> extra, Rng& rng);
std::optional<Bytes> resolve_key(const DidLedger& dids, std::string_view did, std::string_view purpose);

// Role claim matches, the issuer is the GHA, its signature verifies under
// the GHA's DID key and the subject DID is not revoked.
bool verify_lvc(const LegitimacyCredential& lvc, std::string_view expected_role, const DidLedger& dids,
                std::string_view gha_did);

struct Warrant {
  Id16 id{};
  Bytes target_pseudonym;
  std::string scope;
  std::int64_t issued_at = 0;
  std::string issuer_did;
  LegitimacyCredential issuer_lvc;
  Bytes signature;  // RSA, by the issuer's warrant-issuer key

  Bytes signed_message() const;
  nlohmann::json to_json() const;
  static Warrant from_json(const nlohmann::json& j);
};

Warrant warrant_issue(ByteView target_pseudonym, std::string scope, std::int64_t now, const EntityIdentity& authority,
                      const RsaKeypair& key, Rng& rng);
bool warrant_verify(const Warrant& w, const DidLedger& dids, std::string_view gha_did);

// Shared, read-mostly services and public keys resolved from the DID ledger.
struct Context {
  const DidLedger* dids = nullptr;
  AtiLedger* atis = nullptr;
  std::string gha_did;
  std::int64_t now = 0;
  std::int64_t clock_skew = kDefaultClockSkew;
  std::int64_t at_validity = kDefaultAtValidity;
  PbpMode pbp_mode = PbpMode::kIndependent;
  ClPublicKey credential_issuer;
  BigInt apc_token_key;
  G2 ibs_mpk;
  BigInt pta_token_key;
  G1 hrr_key;
};

// Canonical messages signed by patients and professionals.
Bytes booking_message(const PseudonymAccessInfo& pai, const AppointmentToken& at, std::string_view schedule);
Bytes inperson_message(ByteView nonce, ByteView pseudonym, std::string_view code);

// ---- issuers ---------------------------------------------------------------

class AgencyForPatientCare {
 public:
  EntityIdentity id;
  ClKeypair cl;
  SchnorrKeypair token_key;
  IbsMasterKey ibs;
  ApcStore store;
  std::unique_ptr<AuditWriter> audit;

  // E1: {pii, did, biohash} -> {credential}
  nlohmann::json handle_enrollment(const nlohmann::json& req, const Context& ctx, Rng& rng);
  // E3: {patientId, pok, blindedIdentity} -> {blindedKey}. The APC sees
  // only the blinded identity.
  nlohmann::json handle_key_request(const nlohmann::json& req, ByteView context, const Context& ctx);
  // Trace step 2. Throws ProtocolError(kTraceRefused) without a valid warrant.
  PiiBundle reveal_pii(const Warrant& w, ByteView patient_id, const Context& ctx);
};

class PseudonymTokenAuthority {
 public:
  EntityIdentity id;
  SchnorrKeypair token_key;
  PtaStore store;
  std::unique_ptr<AuditWriter> audit;

  // E2: {patientId, pok, pseudonym, pbp} -> {token}
  nlohmann::json handle_issue(const nlohmann::json& req, ByteView context, const Context& ctx, Rng& rng);
  // Trace step 1. Throws kTraceRefused or kUnknownPseudonym.
  Bytes reveal_patient_id(const Warrant& w, const Context& ctx);
};

// ---- healthcare organization -----------------------------------------------

struct Booking {
  Bytes pseudonym;
  PseudonymAccessInfo pai;
  std::string schedule;
  std::string code;
  Id16 ati{};
  bool admitted = false;
};

class HealthcareOrganization {
 public:
  EntityIdentity id;
  std::unique_ptr<AuditWriter> audit;

  // E5: {pai, at, schedule, sig} -> {confirmationCode}
  nlohmann::json handle_booking(const nlohmann::json& req, const Context& ctx, Rng& rng);
  // E6: {pseudonym, confirmationCode, pt, pok, sig} with the live capture.
  nlohmann::json handle_inperson(const nlohmann::json& req, ByteView nonce, std::span<const double> live,
                                 const Context& ctx);
  // E7: PAI of an admitted booking, for a verified HP.
  PseudonymAccessInfo handoff(ByteView pseudonym, const LegitimacyCredential& hp_lvc, const Context& ctx);

  std::vector<Booking> bookings() const;
  // Stored state as the HO would persist it.
  nlohmann::json state() const;

 private:
  mutable std::mutex mu_;
  std::vector<Booking> bookings_;
};

// ---- professionals and records ---------------------------------------------

enum class AccessType { kRead, kWrite };
std::string_view access_type_name(AccessType t);

struct RecordEntry {
  std::int64_t timestamp = 0;
  std::string hp;
  std::string type;  // Observation, Prescription, Note
  std::string content;
  nlohmann::json to_json() const;
  static RecordEntry from_json(const nlohmann::json& j);
  bool operator==(const RecordEntry&) const = default;
};

class HealthcareProfessional {
 public:
  EntityIdentity id;

  nlohmann::json access_request(const PseudonymAccessInfo& pai, AccessType type, const std::optional<RecordEntry>& entry,
                                const Context& ctx, Rng& rng) const;
};

Bytes access_message(const nlohmann::json& req);

class HealthRecordRepository {
 public:
  EntityIdentity id;
  PreHrrKeys pre;
  std::unique_ptr<AuditWriter> audit;

  // E8: returns {entries} for reads and {entries: [appended]} for writes.
  nlohmann::json handle_access(const nlohmann::json& req, const Context& ctx);
  std::vector<RecordEntry> records_for(ByteView patient_id) const;
  std::string serialize() const;

 private:
  mutable std::mutex mu_;
  std::map<Bytes, std::vector<RecordEntry>> records_;
};

struct AuthorityEntity {
  EntityIdentity id;
  RsaKeypair key;  // GHA: L-VC issuer; Auditor Authority: warrant issuer
};

}  // namespace hidm
