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

#include "hidm/ledgers/audit.hpp"

#include <chrono>

#include "hidm/algebra/schnorr_group.hpp"
#include "hidm/common/error.hpp"
#include "hidm/credentials/issuance.hpp"

namespace hidm {

std::int64_t system_clock_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

nlohmann::json AuditRecord::to_json() const {
  nlohmann::json j = {{"logID", log_id},
                      {"timestamp", timestamp},
                      {"originModule", origin_module},
                      {"eventType", event_type},
                      {"accessLevel", access_level_name(access_level)},
                      {"patientIdentifier", patient_identifier},
                      {"eventDetails", details}};
  j["healthcareProfessionalIdentifier"] = hp_identifier ? nlohmann::json(*hp_identifier) : nlohmann::json(nullptr);
  return j;
}

AuditRecord AuditRecord::from_json(const nlohmann::json& j) {
  try {
    AuditRecord r;
    r.log_id = j.at("logID").get<std::uint64_t>();
    r.timestamp = j.at("timestamp").get<std::int64_t>();
    r.origin_module = j.at("originModule").get<std::string>();
    r.event_type = j.at("eventType").get<std::string>();
    auto level = parse_access_level(j.at("accessLevel").get<std::string>());
    if (!level) throw DecodeError("unknown access level");
    r.access_level = *level;
    r.patient_identifier = j.at("patientIdentifier").get<std::string>();
    const auto& hp = j.at("healthcareProfessionalIdentifier");
    if (!hp.is_null()) r.hp_identifier = hp.get<std::string>();
    r.details = j.at("eventDetails").get<std::map<std::string, std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("malformed audit record: ") + e.what());
  }
}

Bytes AuditRecord::signing_bytes() const {
  nlohmann::json j = to_json();
  j.erase("logID");
  return FieldWriter().field("HIDM/audit-origin").field(j.dump()).bytes();
}

// ---- filters ---------------------------------------------------------------

namespace {

const std::set<std::string, std::less<>> kFilterKeys = {
    "logID",       "originModule",      "eventType", "accessLevel", "patientIdentifier",
    "healthcareProfessionalIdentifier"};

std::optional<std::string> field_value(const AuditRecord& r, const std::string& key) {
  if (key == "logID") return std::to_string(r.log_id);
  if (key == "originModule") return r.origin_module;
  if (key == "eventType") return r.event_type;
  if (key == "accessLevel") return std::string(access_level_name(r.access_level));
  if (key == "patientIdentifier") return r.patient_identifier;
  if (key == "healthcareProfessionalIdentifier") return r.hp_identifier;
  if (key.starts_with("detail.")) {
    auto it = r.details.find(key.substr(7));
    if (it == r.details.end()) return std::nullopt;
    return it->second;
  }
  return std::nullopt;
}

}  // namespace

AuditFilter AuditFilter::parse(std::string_view text) {
  AuditFilter f;
  f.text_ = std::string(text);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find_first_of("&,", pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view term = text.substr(pos, end - pos);
    pos = end + 1;
    if (term.empty()) continue;
    std::size_t eq = term.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("filter term without '=': " + std::string(term));
    std::string key(term.substr(0, eq));
    if (!kFilterKeys.count(key) && !(key.starts_with("detail.") && key.size() > 7)) {
      throw std::invalid_argument("unknown filter key: " + key);
    }
    f.terms_.emplace_back(std::move(key), std::string(term.substr(eq + 1)));
  }
  return f;
}

bool AuditFilter::matches(const AuditRecord& r) const {
  for (const auto& [key, value] : terms_) {
    auto v = field_value(r, key);
    if (!v || *v != value) return false;
  }
  return true;
}

// ---- ledger ----------------------------------------------------------------

Bytes audit_query_message(std::string_view ledger_did, ByteView nonce, std::string_view filter) {
  return FieldWriter().field("HIDM/audit-query").field(ledger_did).field(nonce).field(filter).bytes();
}

Bytes audit_query_context(std::string_view ledger_did, ByteView nonce) {
  return pok_context("audit-query", ledger_did, nonce);
}

namespace {

std::optional<std::filesystem::path> admin_path(const std::optional<std::filesystem::path>& file) {
  if (!file) return std::nullopt;
  std::filesystem::path p = *file;
  p.replace_extension(".admin" + file->extension().string());
  return p;
}

}  // namespace

AuditLedger::AuditLedger(std::string did, AuditTrustAnchors anchors, std::optional<std::filesystem::path> file,
                         Clock clock)
    : did_(std::move(did)),
      anchors_(std::move(anchors)),
      clock_(std::move(clock)),
      chain_(file),
      admin_chain_(admin_path(file)) {}

void AuditLedger::register_origin(std::string module, std::string origin_did) {
  std::lock_guard lock(mu_);
  origins_[std::move(module)] = std::move(origin_did);
}

std::uint64_t AuditLedger::append(AuditRecord record, const OriginProof& proof) {
  std::lock_guard lock(mu_);
  auto origin = origins_.find(record.origin_module);
  if (origin == origins_.end()) throw ProtocolError(Reason::kOriginMismatch, "unregistered module");
  auto doc = anchors_.dids ? anchors_.dids->resolve(origin->second) : std::nullopt;
  if (!doc || !did_key_verify(*doc, proof.key_id, record.signing_bytes(), proof.sig)) {
    throw ProtocolError(Reason::kOriginMismatch, "record not signed by " + record.origin_module);
  }
  record.log_id = records_.size();
  nlohmann::json payload = record.to_json();
  payload["originProof"] = {{"keyId", proof.key_id},
                            {"sig", to_hex(proof.sig.to_bytes(SchnorrGroup::standard()))}};
  chain_.append(payload);
  records_.push_back(record);
  return record.log_id;
}

Bytes AuditLedger::issue_nonce(Rng& rng) {
  Bytes n = rng.bytes(16);
  std::lock_guard lock(mu_);
  nonces_.insert(n);
  return n;
}

QueryResult AuditLedger::authenticate(const QueryRequest& request, std::set<std::string>& identifiers,
                                      std::string& requester) {
  QueryResult fail;
  fail.auth_error = true;
  {
    std::lock_guard lock(mu_);
    if (!nonces_.erase(request.nonce)) {
      fail.error = "unknown or reused query nonce";
      return fail;
    }
  }
  Bytes msg = audit_query_message(did_, request.nonce, request.filter);
  QueryResult ok;

  if (const auto* p = std::get_if<PatientQueryAuth>(&request.auth)) {
    requester = "patient";
    if (!pok_pcred_verify(p->credential_proof, anchors_.credential_issuer, audit_query_context(did_, request.nonce))) {
      fail.error = "credential proof rejected";
      return fail;
    }
    for (const auto& claim : p->pseudonyms) {
      if (!ibs_verify(msg, claim.sig, claim.pseudonym, anchors_.ibs_mpk)) {
        fail.error = "pseudonym claim not signed by its holder";
        return fail;
      }
      identifiers.insert(patient_identifier_for_pseudonym(claim.pseudonym));
    }
    if (auto id = disclosed_slot(p->credential_proof, kSlotPatientId)) identifiers.insert(patient_identifier_for_id(*id));
    ok.tier = AccessLevel::kPatientAccessible;
    return ok;
  }

  const auto& a = std::get<AuthorityQueryAuth>(request.auth);
  requester = a.lvc.subject_did;
  std::optional<AccessLevel> tier;
  if (lvc_verify(a.lvc, anchors_.gha, roles::kAuditorAuthority)) {
    tier = AccessLevel::kAuditorAuthorityAccessible;
  } else if (lvc_verify(a.lvc, anchors_.gha, roles::kAdministrator)) {
    tier = AccessLevel::kAdministrator;
  }
  if (!tier) {
    fail.error = "legitimacy credential rejected";
    return fail;
  }
  auto doc = anchors_.dids ? anchors_.dids->resolve(a.lvc.subject_did) : std::nullopt;
  if (!doc || anchors_.dids->is_revoked(a.lvc.subject_did) || !did_key_verify(*doc, a.key_id, msg, a.sig)) {
    fail.error = "requester signature rejected";
    return fail;
  }
  ok.tier = tier;
  return ok;
}

QueryResult AuditLedger::query(const QueryRequest& request) {
  std::set<std::string> identifiers;
  std::string requester = "unknown";
  QueryResult result;
  AuditFilter filter;
  try {
    filter = AuditFilter::parse(request.filter);
    result = authenticate(request, identifiers, requester);
  } catch (const std::exception& e) {
    result = QueryResult{{}, true, e.what(), std::nullopt};
  }
  if (!result.auth_error) {
    std::lock_guard lock(mu_);
    const auto& source = *result.tier == AccessLevel::kAdministrator ? admin_records_ : records_;
    for (const auto& r : source) {
      if (r.access_level != *result.tier || !filter.matches(r)) continue;
      if (*result.tier == AccessLevel::kPatientAccessible && !identifiers.count(r.patient_identifier)) continue;
      result.records.push_back(r);
    }
  }
  log_query(requester, request.filter, result);
  return result;
}

void AuditLedger::log_query(const std::string& requester, const std::string& filter, const QueryResult& result) {
  std::lock_guard lock(mu_);
  AuditRecord r;
  r.log_id = admin_records_.size();
  r.timestamp = clock_();
  r.origin_module = "AuditorLedger";
  r.event_type = std::string(events::kLedgerQuery);
  r.access_level = AccessLevel::kAdministrator;
  r.details = {{"requester", requester},
               {"filter", filter},
               {"outcome", result.auth_error ? "rejected" : "accepted"},
               {"tier", result.tier ? std::string(access_level_name(*result.tier)) : ""},
               {"resultCount", std::to_string(result.records.size())}};
  admin_chain_.append(r.to_json());
  admin_records_.push_back(std::move(r));
}

std::vector<AuditRecord> AuditLedger::records() const {
  std::lock_guard lock(mu_);
  return records_;
}

std::vector<AuditRecord> AuditLedger::admin_records() const {
  std::lock_guard lock(mu_);
  return admin_records_;
}

// ---- writer ----------------------------------------------------------------

AuditWriter::AuditWriter(AuditLedger& ledger, std::string module, std::string key_id, const SchnorrKeypair& key,
                         Rng& rng)
    : ledger_(ledger),
      module_(std::move(module)),
      key_id_(std::move(key_id)),
      key_(key),
      rng_(rng.fork("audit-writer/" + module_)) {}

std::uint64_t AuditWriter::log(const AuditEvent& event) {
  AuditRecord r;
  r.timestamp = ledger_.now();
  r.origin_module = module_;
  r.event_type = event.event_type;
  r.access_level = event.access_level;
  r.patient_identifier = event.patient_identifier;
  r.hp_identifier = event.hp_identifier;
  r.details = event.details;
  std::lock_guard lock(mu_);
  SchnorrSig sig = schnorr_sign(SchnorrGroup::standard(), r.signing_bytes(), key_, *rng_);
  return ledger_.append(std::move(r), OriginProof{key_id_, sig});
}

}  // namespace hidm
