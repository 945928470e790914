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

// Issuance and verification of patient credentials, pseudonym tokens and
// appointment tokens.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "hidm/credentials/artifacts.hpp"
#include "hidm/credentials/stores.hpp"
#include "hidm/ledgers/audit_types.hpp"
#include "hidm/ledgers/did.hpp"

namespace hidm {

inline constexpr std::int64_t kDefaultClockSkew = 120;
inline constexpr std::int64_t kDefaultAtValidity = 24 * 3600;

// Proof context: episode tag || verifier DID || fresh verifier nonce.
Bytes pok_context(std::string_view episode, std::string_view verifier_did, ByteView nonce);

struct PcredIssuer {
  std::string did;
  const ClKeypair& key;
  ApcStore& store;
  AuditSink* audit = nullptr;
  const DidLedger* dids = nullptr;  // when set, the patient DID must resolve
};

// Throws ProtocolError(kIdentityProofingFailed) if the PII bundle fails
// verification or the patient DID does not resolve.
PatientCredential pcred_issue(const PiiBundle& pii, std::string_view patient_did, const BioHash& biohash,
                              const PcredIssuer& issuer, std::int64_t now, Rng& rng);
bool pcred_verify(const PatientCredential& cred, const ClPublicKey& pub);

ClProof pok_pcred_prove(const PatientCredential& cred, const ClPublicKey& pub, const std::set<std::size_t>& disclose,
                        ByteView context, Rng& rng);
bool pok_pcred_verify(const ClProof& proof, const ClPublicKey& pub, ByteView context);
std::optional<Bytes> disclosed_slot(const ClProof& proof, std::size_t slot);

struct PtIssuer {
  std::string did;
  const SchnorrKeypair& key;
  const ClPublicKey& credential_issuer;
  PtaStore& store;
  AuditSink* audit = nullptr;
  PbpMode mode = PbpMode::kIndependent;
};

// The PoK must disclose exactly `patient_id` in the PatientID slot; the
// binding proof is checked against H(patient_id).
// Throws ProtocolError(kCredentialProofRejected / kPseudonymBindingRejected).
PseudonymToken pt_issue(ByteView patient_id, const ClProof& pok, ByteView context, const Pseudonym& pseudonym,
                        const PbProof& pbp, const PtIssuer& issuer, std::int64_t now, Rng& rng);
bool pt_verify(const PseudonymToken& pt, const BigInt& pta_public);

// APC side of appointment-token issuance. The issuance log records exactly
// what the APC handled; it has no ATI field.
class AtIssuerSession {
 public:
  AtIssuerSession(const SchnorrKeypair& key, Rng& rng);

  const BigInt& commitment() const { return signer_.commitment(); }
  // Verifies the PoK (PatientID disclosed) before signing.
  // Throws ProtocolError(kCredentialProofRejected).
  PbsSignerResponse respond(const ClProof& pok, ByteView context, const ClPublicKey& credential_issuer,
                            const BigInt& blinded_challenge, std::int64_t now, std::int64_t validity,
                            AuditSink* audit);
  const PbsSignerTranscript& transcript() const { return signer_.transcript(); }
  const nlohmann::json& issuance_log() const { return log_; }

 private:
  PbsSignerSession signer_;
  nlohmann::json log_;
};

struct AtIssueResult {
  AppointmentToken at;
  PbsSignerTranscript signer_view;
  nlohmann::json issuance_log;
};

// Both sides in-process; the patient draws the ATI as a UUIDv4.
AtIssueResult at_issue(const ClProof& pok, ByteView context, const ClPublicKey& credential_issuer,
                       const SchnorrKeypair& apc_key, std::int64_t now, std::int64_t validity, AuditSink* audit,
                       Rng& patient_rng, Rng& apc_rng);

enum class AtStatus { kValid, kExpired, kBadSignature };
std::string_view at_status_name(AtStatus s);

// Valid iff the signature verifies and now <= exp + skew.
AtStatus at_check(const AppointmentToken& at, std::int64_t now, const BigInt& apc_public,
                  std::int64_t skew = kDefaultClockSkew);

}  // namespace hidm
