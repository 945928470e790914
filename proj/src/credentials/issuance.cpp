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

#include "hidm/credentials/issuance.hpp"

#include "hidm/algebra/hash.hpp"
#include "hidm/algebra/schnorr_group.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

Bytes pok_context(std::string_view episode, std::string_view verifier_did, ByteView nonce) {
  return FieldWriter().field(episode).field(verifier_did).field(nonce).bytes();
}

PatientCredential pcred_issue(const PiiBundle& pii, std::string_view patient_did, const BioHash& biohash,
                              const PcredIssuer& issuer, std::int64_t now, Rng& rng) {
  if (!pii.verify()) throw ProtocolError(Reason::kIdentityProofingFailed, "PII verification failed");
  if (issuer.dids && !issuer.dids->resolve(patient_did)) {
    throw ProtocolError(Reason::kIdentityProofingFailed, "patient DID does not resolve");
  }
  ApcStore::Enrollment enrolled = issuer.store.enroll(pii, rng);

  PatientCredential cred;
  cred.credential_id = rng.uuid_v4();
  cred.did_patient_l = std::string(patient_did);
  cred.patient_id = enrolled.patient_id;
  cred.issue_date = now;
  cred.biohash = biohash;
  cred.did_apc = issuer.did;
  cred.sig = cl_sign(cred.slots(), issuer.key, rng);

  if (issuer.audit) {
    issuer.audit->log(AuditEvent{std::string(events::kPatientCredentialIssuance),
                                 AccessLevel::kAuditorAuthorityAccessible,
                                 patient_identifier_for_id(cred.patient_id),
                                 std::nullopt,
                                 {{"credentialId", to_hex(cred.credential_id)},
                                  {"issueDate", std::to_string(now)},
                                  {"clVariant", std::string(cl_variant_name(cred.sig.variant()))},
                                  {"newEnrollment", enrolled.is_new ? "true" : "false"}}});
  }
  return cred;
}

bool pcred_verify(const PatientCredential& cred, const ClPublicKey& pub) {
  return cl_verify(cred.slots(), cred.sig, pub);
}

ClProof pok_pcred_prove(const PatientCredential& cred, const ClPublicKey& pub, const std::set<std::size_t>& disclose,
                        ByteView context, Rng& rng) {
  return cl_prove(pub, cred.slots(), cred.sig, disclose, context, rng);
}

bool pok_pcred_verify(const ClProof& proof, const ClPublicKey& pub, ByteView context) {
  return cl_proof_verify(proof, pub, context);
}

std::optional<Bytes> disclosed_slot(const ClProof& proof, std::size_t slot) {
  auto it = proof.disclosed.find(slot);
  if (it == proof.disclosed.end()) return std::nullopt;
  return it->second;
}

namespace {

// PoK verifies and discloses the PatientID; returns it.
Bytes require_patient_id(const ClProof& pok, ByteView context, const ClPublicKey& pub) {
  if (!pok_pcred_verify(pok, pub, context)) throw ProtocolError(Reason::kCredentialProofRejected);
  auto id = disclosed_slot(pok, kSlotPatientId);
  if (!id) throw ProtocolError(Reason::kCredentialProofRejected, "PatientID not disclosed");
  return *id;
}

}  // namespace

PseudonymToken pt_issue(ByteView patient_id, const ClProof& pok, ByteView context, const Pseudonym& pseudonym,
                        const PbProof& pbp, const PtIssuer& issuer, std::int64_t now, Rng& rng) {
  Bytes disclosed = require_patient_id(pok, context, issuer.credential_issuer);
  if (!std::equal(disclosed.begin(), disclosed.end(), patient_id.begin(), patient_id.end())) {
    throw ProtocolError(Reason::kCredentialProofRejected, "disclosed PatientID differs from the submitted one");
  }
  if (!pbp_verify(pseudonym, pbp, patient_id_hash(patient_id), issuer.mode)) {
    throw ProtocolError(Reason::kPseudonymBindingRejected);
  }

  PseudonymToken pt;
  pt.pti = rng.uuid_v4();
  pt.pseudonym = pseudonym;
  pt.sig = schnorr_sign(SchnorrGroup::standard(), pt.signed_message(), issuer.key, rng);

  Bytes encoded = pseudonym.to_bytes();
  issuer.store.add(PtaRecord{pt.pti, encoded, disclosed, now});
  if (issuer.audit) {
    issuer.audit->log(AuditEvent{std::string(events::kPseudonymTokenIssuance),
                                 AccessLevel::kAuditorAuthorityAccessible,
                                 patient_identifier_for_pseudonym(encoded),
                                 std::nullopt,
                                 {{"pti", to_hex(pt.pti)}, {"issuedAt", std::to_string(now)}}});
  }
  return pt;
}

bool pt_verify(const PseudonymToken& pt, const BigInt& pta_public) {
  return schnorr_verify(SchnorrGroup::standard(), pt.signed_message(), pt.sig, pta_public);
}

// ---- appointment tokens ----------------------------------------------------

AtIssuerSession::AtIssuerSession(const SchnorrKeypair& key, Rng& rng)
    : signer_(SchnorrGroup::standard(), key, rng) {}

PbsSignerResponse AtIssuerSession::respond(const ClProof& pok, ByteView context,
                                           const ClPublicKey& credential_issuer, const BigInt& blinded_challenge,
                                           std::int64_t now, std::int64_t validity, AuditSink* audit) {
  Bytes patient_id = require_patient_id(pok, context, credential_issuer);
  std::int64_t exp = now + validity;
  PbsSignerResponse response = signer_.respond(blinded_challenge, exp);
  log_ = {{"patientId", to_hex(patient_id)}, {"exp", exp}, {"issuedAt", now}};
  if (audit) {
    audit->log(AuditEvent{std::string(events::kAppointmentTokenIssuance),
                          AccessLevel::kAuditorAuthorityAccessible,
                          patient_identifier_for_id(patient_id),
                          std::nullopt,
                          {{"exp", std::to_string(exp)}, {"issuedAt", std::to_string(now)}}});
  }
  return response;
}

AtIssueResult at_issue(const ClProof& pok, ByteView context, const ClPublicKey& credential_issuer,
                       const SchnorrKeypair& apc_key, std::int64_t now, std::int64_t validity, AuditSink* audit,
                       Rng& patient_rng, Rng& apc_rng) {
  const SchnorrGroup& group = SchnorrGroup::standard();
  AtIssuerSession apc(apc_key, apc_rng);
  Id16 ati = patient_rng.uuid_v4();
  PbsUserSession patient(group, apc_key.y, ati, patient_rng);
  BigInt cu = patient.blind(apc.commitment());
  PbsSignerResponse response = apc.respond(pok, context, credential_issuer, cu, now, validity, audit);
  PartiallyBlindSig sig = patient.finish(response);
  return AtIssueResult{AppointmentToken{ati, response.exp, std::move(sig)}, apc.transcript(), apc.issuance_log()};
}

std::string_view at_status_name(AtStatus s) {
  switch (s) {
    case AtStatus::kValid:
      return "valid";
    case AtStatus::kExpired:
      return "expired";
    case AtStatus::kBadSignature:
      return "bad-signature";
  }
  return "unknown";
}

AtStatus at_check(const AppointmentToken& at, std::int64_t now, const BigInt& apc_public, std::int64_t skew) {
  if (!pbs_verify(SchnorrGroup::standard(), at.ati, at.exp, at.sig, apc_public)) return AtStatus::kBadSignature;
  if (now > at.exp + skew) return AtStatus::kExpired;
  return AtStatus::kValid;
}

}  // namespace hidm
