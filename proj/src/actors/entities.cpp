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

#include "hidm/actors/entities.hpp"

#include <algorithm>
#include <cctype>

#include "hidm/algebra/schnorr_group.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

using nlohmann::json;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

Bytes hex_field(const json& j, const char* key) { return from_hex(j.at(key).get<std::string>()); }

// PoK that verifies under the credential issuer and discloses `slot`.
Bytes require_disclosed(const json& pok_json, ByteView context, const Context& ctx, std::size_t slot) {
  ClProof pok;
  try {
    pok = pok_from_json(pok_json);
  } catch (const std::exception& e) {
    throw ProtocolError(Reason::kCredentialProofRejected, e.what());
  }
  if (!pok_pcred_verify(pok, ctx.credential_issuer, context)) throw ProtocolError(Reason::kCredentialProofRejected);
  auto v = disclosed_slot(pok, slot);
  if (!v) throw ProtocolError(Reason::kCredentialProofRejected, "required attribute not disclosed");
  return *v;
}

}  // namespace

EntityIdentity register_identity(DidLedger& dids, std::string role, std::vector<DidKey> extra, Rng& rng) {
  const SchnorrGroup& g = SchnorrGroup::standard();
  EntityIdentity id;
  id.role = std::move(role);
  id.did = "did:hidm:" + lower(id.role) + ":" + to_hex(rng.bytes(12));
  id.key_id = "#auth-1";
  id.auth = SchnorrKeypair::generate(g, rng);
  DidDocument doc;
  doc.did = id.did;
  doc.keys.push_back(DidKey{id.key_id, std::string(did_keys::kAuthentication), std::string(did_keys::kSchnorr),
                            bigint_to_bytes(id.auth.y, g.element_size())});
  for (auto& k : extra) doc.keys.push_back(std::move(k));
  dids.register_document(doc, did_prove(doc, id.key_id, id.auth, rng));
  return id;
}

std::optional<Bytes> resolve_key(const DidLedger& dids, std::string_view did, std::string_view purpose) {
  auto doc = dids.resolve(did);
  if (!doc) return std::nullopt;
  const DidKey* k = doc->find(purpose);
  if (!k) return std::nullopt;
  return k->key;
}

bool verify_lvc(const LegitimacyCredential& lvc, std::string_view expected_role, const DidLedger& dids,
                std::string_view gha_did) {
  if (lvc.issuer_did != gha_did) return false;
  if (dids.is_revoked(lvc.subject_did) || !dids.resolve(lvc.subject_did)) return false;
  auto key = resolve_key(dids, gha_did, did_keys::kLvcIssuer);
  if (!key) return false;
  try {
    return lvc_verify(lvc, RsaPublicKey::from_bytes(*key), expected_role);
  } catch (const std::exception&) {
    return false;
  }
}

// ---- warrants --------------------------------------------------------------

Bytes Warrant::signed_message() const {
  return FieldWriter()
      .field("HIDM/warrant")
      .field(id)
      .field(target_pseudonym)
      .field(scope)
      .u64(static_cast<std::uint64_t>(issued_at))
      .field(issuer_did)
      .bytes();
}

json Warrant::to_json() const {
  return {{"warrantId", to_hex(id)},
          {"targetPseudonym", to_hex(target_pseudonym)},
          {"scope", scope},
          {"issuedAt", issued_at},
          {"issuerDid", issuer_did},
          {"issuerLvc", hidm::to_json(issuer_lvc)},
          {"signature", to_hex(signature)}};
}

Warrant Warrant::from_json(const json& j) {
  try {
    Warrant w;
    w.id = to_id16(hex_field(j, "warrantId"));
    w.target_pseudonym = hex_field(j, "targetPseudonym");
    w.scope = j.at("scope").get<std::string>();
    w.issued_at = j.at("issuedAt").get<std::int64_t>();
    w.issuer_did = j.at("issuerDid").get<std::string>();
    w.issuer_lvc = lvc_from_json(j.at("issuerLvc"));
    w.signature = hex_field(j, "signature");
    return w;
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed warrant: ") + e.what());
  }
}

Warrant warrant_issue(ByteView target_pseudonym, std::string scope, std::int64_t now, const EntityIdentity& authority,
                      const RsaKeypair& key, Rng& rng) {
  Warrant w;
  w.id = rng.uuid_v4();
  w.target_pseudonym = Bytes(target_pseudonym.begin(), target_pseudonym.end());
  w.scope = std::move(scope);
  w.issued_at = now;
  w.issuer_did = authority.did;
  w.issuer_lvc = authority.lvc;
  w.signature = rsa_sign(w.signed_message(), key);
  return w;
}

bool warrant_verify(const Warrant& w, const DidLedger& dids, std::string_view gha_did) {
  if (w.issuer_lvc.subject_did != w.issuer_did) return false;
  if (!verify_lvc(w.issuer_lvc, roles::kAuditorAuthority, dids, gha_did)) return false;
  auto key = resolve_key(dids, w.issuer_did, did_keys::kWarrantIssuer);
  if (!key) return false;
  try {
    return rsa_verify(w.signed_message(), w.signature, RsaPublicKey::from_bytes(*key));
  } catch (const std::exception&) {
    return false;
  }
}

Bytes booking_message(const PseudonymAccessInfo& pai, const AppointmentToken& at, std::string_view schedule) {
  return FieldWriter()
      .field("HIDM/booking")
      .field(pai.to_bytes())
      .field(at.ati)
      .u64(static_cast<std::uint64_t>(at.exp))
      .field(at.sig.to_bytes(SchnorrGroup::standard()))
      .field(schedule)
      .bytes();
}

Bytes inperson_message(ByteView nonce, ByteView pseudonym, std::string_view code) {
  return FieldWriter().field("HIDM/inperson").field(nonce).field(pseudonym).field(code).bytes();
}

// ---- APC -------------------------------------------------------------------

json AgencyForPatientCare::handle_enrollment(const json& req, const Context& ctx, Rng& rng) {
  PiiBundle pii;
  BioHash bh{};
  std::string did;
  try {
    pii = PiiBundle::from_json(req.at("pii"));
    did = req.at("did").get<std::string>();
    Bytes b = hex_field(req, "biohash");
    if (b.size() != bh.size()) throw DecodeError("biohash has wrong length");
    std::copy(b.begin(), b.end(), bh.begin());
  } catch (const std::exception& e) {
    throw ProtocolError(Reason::kIdentityProofingFailed, e.what());
  }
  PatientCredential cred =
      pcred_issue(pii, did, bh, PcredIssuer{id.did, cl, store, audit.get(), ctx.dids}, ctx.now, rng);
  return {{"credential", to_json(cred)}};
}

json AgencyForPatientCare::handle_key_request(const json& req, ByteView context, const Context& ctx) {
  Bytes patient_id = require_disclosed(req.at("pok"), context, ctx, kSlotPatientId);
  if (hex_field(req, "patientId") != patient_id) {
    throw ProtocolError(Reason::kCredentialProofRejected, "disclosed PatientID differs from the submitted one");
  }
  G1 blinded;
  try {
    blinded = G1::from_bytes(hex_field(req, "blindedIdentity"));
  } catch (const std::exception& e) {
    throw ProtocolError(Reason::kInvalidArgument, e.what());
  }
  G1 response = ibs_blind_issue(blinded, ibs);
  if (audit) {
    audit->log(AuditEvent{std::string(events::kPseudonymKeyIssuance),
                          AccessLevel::kAuditorAuthorityAccessible,
                          patient_identifier_for_id(patient_id),
                          std::nullopt,
                          {{"issuedAt", std::to_string(ctx.now)}}});
  }
  return {{"blindedKey", to_hex(response.to_bytes())}};
}

PiiBundle AgencyForPatientCare::reveal_pii(const Warrant& w, ByteView patient_id, const Context& ctx) {
  if (!warrant_verify(w, *ctx.dids, ctx.gha_did)) throw ProtocolError(Reason::kTraceRefused);
  auto pii = store.lookup(patient_id);
  if (!pii) throw ProtocolError(Reason::kTraceRefused, "unknown PatientID");
  if (audit) {
    audit->log(AuditEvent{std::string(events::kIdentityDisclosure),
                          AccessLevel::kAuditorAuthorityAccessible,
                          patient_identifier_for_id(patient_id),
                          std::nullopt,
                          {{"warrantId", to_hex(w.id)}, {"disclosed", "pii"}, {"requester", w.issuer_did}}});
  }
  return *pii;
}

// ---- PTA -------------------------------------------------------------------

json PseudonymTokenAuthority::handle_issue(const json& req, ByteView context, const Context& ctx, Rng& rng) {
  ClProof pok;
  Bytes patient_id;
  try {
    pok = pok_from_json(req.at("pok"));
    patient_id = hex_field(req, "patientId");
  } catch (const std::exception& e) {
    throw ProtocolError(Reason::kCredentialProofRejected, e.what());
  }
  Pseudonym pseudonym;
  PbProof pbp;
  try {
    pseudonym = pseudonym_from_json(req.at("pseudonym"));
    pbp = pbp_from_json(req.at("pbp"));
  } catch (const std::exception& e) {
    throw ProtocolError(Reason::kPseudonymBindingRejected, e.what());
  }
  PseudonymToken pt = pt_issue(patient_id, pok, context, pseudonym, pbp,
                               PtIssuer{id.did, token_key, ctx.credential_issuer, store, audit.get(), ctx.pbp_mode},
                               ctx.now, rng);
  return {{"token", to_json(pt)}};
}

Bytes PseudonymTokenAuthority::reveal_patient_id(const Warrant& w, const Context& ctx) {
  if (!warrant_verify(w, *ctx.dids, ctx.gha_did)) throw ProtocolError(Reason::kTraceRefused);
  auto rec = store.find_by_pseudonym(w.target_pseudonym);
  if (!rec) throw ProtocolError(Reason::kUnknownPseudonym);
  if (audit) {
    audit->log(AuditEvent{std::string(events::kIdentityDisclosure),
                          AccessLevel::kAuditorAuthorityAccessible,
                          patient_identifier_for_pseudonym(w.target_pseudonym),
                          std::nullopt,
                          {{"warrantId", to_hex(w.id)}, {"disclosed", "patientId"}, {"requester", w.issuer_did}}});
  }
  return rec->patient_id;
}

// ---- HO --------------------------------------------------------------------

json HealthcareOrganization::handle_booking(const json& req, const Context& ctx, Rng& rng) {
  PseudonymAccessInfo pai;
  try {
    pai = pai_from_json(req.at("pai"));
  } catch (const std::exception& e) {
    throw ProtocolError(Reason::kMalformedPai, e.what());
  }
  AppointmentToken at;
  std::string schedule;
  IbsSignature sig;
  try {
    at = at_from_json(req.at("at"));
    schedule = req.at("schedule").get<std::string>();
    sig = IbsSignature::from_bytes(hex_field(req, "sig"));
  } catch (const std::exception& e) {
    throw ProtocolError(Reason::kInvalidArgument, e.what());
  }
  Bytes pseudonym = pai.pseudonym.to_bytes();
  if (!ibs_verify(booking_message(pai, at, schedule), sig, pseudonym, ctx.ibs_mpk)) {
    throw ProtocolError(Reason::kRequesterNotBound);
  }
  switch (at_check(at, ctx.now, ctx.apc_token_key, ctx.clock_skew)) {
    case AtStatus::kBadSignature:
      throw ProtocolError(Reason::kTokenSignatureInvalid);
    case AtStatus::kExpired:
      throw ProtocolError(Reason::kTokenExpired);
    case AtStatus::kValid:
      break;
  }
  if (!rk_check(pai.rk, pai.pseudonym.pk, ctx.hrr_key)) throw ProtocolError(Reason::kMalformedPai);
  if (ctx.atis->check_and_mark(at.ati, ctx.now, id.did) == AtiStatus::kReplayed) {
    throw ProtocolError(Reason::kReplayRejected);
  }
  std::string code = to_hex(rng.bytes(8));
  {
    std::lock_guard lock(mu_);
    bookings_.push_back(Booking{pseudonym, pai, schedule, code, at.ati, false});
  }
  if (audit) {
    audit->log(AuditEvent{std::string(events::kAppointmentBooked),
                          AccessLevel::kPatientAccessible,
                          patient_identifier_for_pseudonym(pseudonym),
                          std::nullopt,
                          {{"confirmationCode", code}, {"schedule", schedule}, {"ati", to_hex(at.ati)}}});
  }
  return {{"confirmationCode", code}};
}

json HealthcareOrganization::handle_inperson(const json& req, ByteView nonce, std::span<const double> live,
                                             const Context& ctx) {
  Bytes pseudonym;
  std::string code;
  IbsSignature sig;
  try {
    pseudonym = hex_field(req, "pseudonym");
    code = req.at("confirmationCode").get<std::string>();
    sig = IbsSignature::from_bytes(hex_field(req, "sig"));
  } catch (const std::exception& e) {
    throw ProtocolError(Reason::kInvalidArgument, e.what());
  }
  if (!ibs_verify(inperson_message(nonce, pseudonym, code), sig, pseudonym, ctx.ibs_mpk)) {
    throw ProtocolError(Reason::kRequesterNotBound);
  }
  {
    std::lock_guard lock(mu_);
    auto it = std::find_if(bookings_.rbegin(), bookings_.rend(),
                           [&](const Booking& b) { return b.pseudonym == pseudonym && b.code == code; });
    if (it == bookings_.rend()) throw ProtocolError(Reason::kConfirmationCodeInvalid);
  }
  PseudonymToken pt;
  try {
    pt = pt_from_json(req.at("pt"));
  } catch (const std::exception& e) {
    throw ProtocolError(Reason::kPseudonymTokenInvalid, e.what());
  }
  if (pt.pseudonym.to_bytes() != pseudonym || !pt_verify(pt, ctx.pta_token_key)) {
    throw ProtocolError(Reason::kPseudonymTokenInvalid);
  }
  Bytes disclosed = require_disclosed(req.at("pok"), pok_context("E6", id.did, nonce), ctx, kSlotBioHash);
  if (disclosed.size() != BioHash{}.size()) throw ProtocolError(Reason::kCredentialProofRejected, "biohash size");
  BioHash enrolled;
  std::copy(disclosed.begin(), disclosed.end(), enrolled.begin());
  if (!biohash_match(enrolled, live, BioHashParams::standard())) throw ProtocolError(Reason::kBiometricMismatch);
  {
    std::lock_guard lock(mu_);
    for (auto& b : bookings_) {
      if (b.pseudonym == pseudonym && b.code == code) b.admitted = true;
    }
  }
  if (audit) {
    audit->log(AuditEvent{std::string(events::kIdentityVerification),
                          AccessLevel::kPatientAccessible,
                          patient_identifier_for_pseudonym(pseudonym),
                          std::nullopt,
                          {{"confirmationCode", code}, {"outcome", "admitted"}}});
  }
  return {{"admitted", true}};
}

PseudonymAccessInfo HealthcareOrganization::handoff(ByteView pseudonym, const LegitimacyCredential& hp_lvc,
                                                    const Context& ctx) {
  if (!verify_lvc(hp_lvc, roles::kHp, *ctx.dids, ctx.gha_did)) throw ProtocolError(Reason::kLegitimacyRejected);
  PseudonymAccessInfo pai;
  {
    std::lock_guard lock(mu_);
    Bytes key(pseudonym.begin(), pseudonym.end());
    auto it = std::find_if(bookings_.rbegin(), bookings_.rend(),
                           [&](const Booking& b) { return b.pseudonym == key && b.admitted; });
    if (it == bookings_.rend()) throw ProtocolError(Reason::kConfirmationCodeInvalid, "no admitted booking");
    pai = it->pai;
  }
  if (audit) {
    audit->log(AuditEvent{std::string(events::kConsultationHandoff),
                          AccessLevel::kPatientAccessible,
                          patient_identifier_for_pseudonym(pseudonym),
                          hp_lvc.subject_did,
                          {{"handoffAt", std::to_string(ctx.now)}}});
  }
  return pai;
}

std::vector<Booking> HealthcareOrganization::bookings() const {
  std::lock_guard lock(mu_);
  return bookings_;
}

json HealthcareOrganization::state() const {
  std::lock_guard lock(mu_);
  json rows = json::array();
  for (const auto& b : bookings_) {
    rows.push_back({{"pseudonym", to_hex(b.pseudonym)},
                    {"rk", to_hex(b.pai.rk.to_bytes())},
                    {"ct", to_hex(b.pai.ct)},
                    {"schedule", b.schedule},
                    {"confirmationCode", b.code},
                    {"ati", to_hex(b.ati)},
                    {"admitted", b.admitted}});
  }
  return {{"bookings", rows}};
}

// ---- HP / HRR --------------------------------------------------------------

std::string_view access_type_name(AccessType t) { return t == AccessType::kRead ? "read" : "write"; }

json RecordEntry::to_json() const {
  return {{"timestamp", timestamp}, {"hp", hp}, {"type", type}, {"content", content}};
}

RecordEntry RecordEntry::from_json(const json& j) {
  return RecordEntry{j.at("timestamp").get<std::int64_t>(), j.at("hp").get<std::string>(),
                     j.at("type").get<std::string>(), j.at("content").get<std::string>()};
}

Bytes access_message(const json& req) {
  return FieldWriter()
      .field("HIDM/access")
      .field(req.at("lvc").dump())
      .field(req.at("accessType").get<std::string>())
      .field(req.at("hrrPseudonym").get<std::string>())
      .field(req.at("ct").get<std::string>())
      .field(req.at("pseudonymRef").get<std::string>())
      .field(req.at("entry").dump())
      .u64(req.at("timestamp").get<std::uint64_t>())
      .bytes();
}

json HealthcareProfessional::access_request(const PseudonymAccessInfo& pai, AccessType type,
                                            const std::optional<RecordEntry>& entry, const Context& ctx,
                                            Rng& rng) const {
  HrrPseudonym hp = transform_to_hrr(pai, ctx.hrr_key);
  json req = {{"lvc", to_json(id.lvc)},
              {"keyId", id.key_id},
              {"accessType", access_type_name(type)},
              {"hrrPseudonym", to_hex(hp.to_bytes())},
              {"ct", to_hex(pai.ct)},
              {"pseudonymRef", patient_identifier_for_pseudonym(pai.pseudonym.to_bytes())},
              {"entry", entry ? entry->to_json() : json(nullptr)},
              {"timestamp", ctx.now}};
  SchnorrSig sig = schnorr_sign(SchnorrGroup::standard(), access_message(req), id.auth, rng);
  req["sig"] = to_hex(sig.to_bytes(SchnorrGroup::standard()));
  return req;
}

json HealthRecordRepository::handle_access(const json& req, const Context& ctx) {
  LegitimacyCredential lvc;
  std::string type_name;
  SchnorrSig sig;
  Bytes msg;
  try {
    lvc = lvc_from_json(req.at("lvc"));
    type_name = req.at("accessType").get<std::string>();
    sig = SchnorrSig::from_bytes(SchnorrGroup::standard(), hex_field(req, "sig"));
    msg = access_message(req);
  } catch (const std::exception& e) {
    throw ProtocolError(Reason::kInvalidArgument, e.what());
  }
  if (type_name != "read" && type_name != "write") throw ProtocolError(Reason::kInvalidArgument, "access type");
  if (!verify_lvc(lvc, roles::kHp, *ctx.dids, ctx.gha_did)) throw ProtocolError(Reason::kLegitimacyRejected);
  if (!lvc.has_scope(type_name)) throw ProtocolError(Reason::kInsufficientAuthorization);
  auto doc = ctx.dids->resolve(lvc.subject_did);
  if (!doc || !did_key_verify(*doc, req.at("keyId").get<std::string>(), msg, sig)) {
    throw ProtocolError(Reason::kLegitimacyRejected, "access request not signed by the credential subject");
  }

  Bytes patient_id;
  try {
    HrrPseudonym hp = HrrPseudonym::from_bytes(hex_field(req, "hrrPseudonym"));
    patient_id = hrr_recover(hp, hex_field(req, "ct"), pre);
  } catch (const std::exception& e) {
    throw ProtocolError(Reason::kRecordReferenceInvalid, e.what());
  }

  bool write = type_name == "write";
  json out = json::array();
  {
    std::lock_guard lock(mu_);
    auto& list = records_[patient_id];
    if (write) {
      if (req.at("entry").is_null()) throw ProtocolError(Reason::kInvalidArgument, "write without an entry");
      RecordEntry e = RecordEntry::from_json(req.at("entry"));
      e.timestamp = ctx.now;
      e.hp = lvc.subject_did;
      list.push_back(e);
      out.push_back(e.to_json());
    } else {
      for (const auto& e : list) out.push_back(e.to_json());
    }
  }
  if (audit) {
    std::string_view event = write ? events::kHealthRecordWrite : events::kHealthRecordRead;
    std::map<std::string, std::string> details = {{"accessType", type_name},
                                                  {"accessTimestamp", std::to_string(ctx.now)}};
    audit->log(AuditEvent{std::string(event), AccessLevel::kPatientAccessible,
                          req.at("pseudonymRef").get<std::string>(), lvc.subject_did, details});
    audit->log(AuditEvent{std::string(event), AccessLevel::kAuditorAuthorityAccessible,
                          patient_identifier_for_id(patient_id), lvc.subject_did, details});
  }
  return {{"entries", out}};
}

std::vector<RecordEntry> HealthRecordRepository::records_for(ByteView patient_id) const {
  std::lock_guard lock(mu_);
  auto it = records_.find(Bytes(patient_id.begin(), patient_id.end()));
  return it == records_.end() ? std::vector<RecordEntry>{} : it->second;
}

std::string HealthRecordRepository::serialize() const {
  std::lock_guard lock(mu_);
  json out = json::object();
  for (const auto& [id, list] : records_) {
    json rows = json::array();
    for (const auto& e : list) rows.push_back(e.to_json());
    out[to_hex(id)] = rows;
  }
  return out.dump();
}

}  // namespace hidm
