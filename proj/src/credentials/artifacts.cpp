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

#include "hidm/credentials/artifacts.hpp"

#include <algorithm>

#include "hidm/algebra/schnorr_group.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

using nlohmann::json;

namespace {

void expect_type(const json& j, std::string_view type) {
  if (!j.is_object()) throw DecodeError("expected a JSON object");
  if (j.value("schema", "") != kSchemaVersion) throw DecodeError("unsupported schema version");
  if (j.value("type", "") != type) throw DecodeError("expected artifact type " + std::string(type));
}

json header(std::string_view type) { return json{{"schema", kSchemaVersion}, {"type", type}}; }

std::string str(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) throw DecodeError(std::string("missing string field ") + key);
  return it->get<std::string>();
}

Bytes hex(const json& j, const char* key) { return from_hex(str(j, key)); }

std::int64_t i64(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) throw DecodeError(std::string("missing integer field ") + key);
  return it->get<std::int64_t>();
}

BioHash to_biohash(ByteView b) {
  if (b.size() != BioHash{}.size()) throw DecodeError("biohash has wrong length");
  BioHash out;
  std::copy(b.begin(), b.end(), out.begin());
  return out;
}

// Runs a decoder, mapping library exceptions onto DecodeError.
template <typename F>
auto decoding(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DecodeError&) {
    throw;
  } catch (const json::exception& e) {
    throw DecodeError(e.what());
  } catch (const std::invalid_argument& e) {
    throw DecodeError(e.what());
  } catch (const std::domain_error& e) {
    throw DecodeError(e.what());
  }
}

}  // namespace

std::vector<Bytes> PatientCredential::slots() const {
  std::vector<Bytes> out(kPcredSlotCount);
  out[kSlotCredentialId] = to_bytes(credential_id);
  out[kSlotPatientDid] = to_bytes(did_patient_l);
  out[kSlotPatientId] = patient_id;
  append_u64be(out[kSlotIssueDate], static_cast<std::uint64_t>(issue_date));
  out[kSlotBioHash] = to_bytes(biohash);
  out[kSlotIssuerDid] = to_bytes(did_apc);
  return out;
}

Bytes PseudonymToken::signed_message() const {
  return FieldWriter().field("HIDM/pseudonym-token").field(pti).field(pseudonym.to_bytes()).bytes();
}

Bytes LegitimacyCredential::signed_message() const {
  FieldWriter w;
  w.field("HIDM/lvc").field(subject_did).field(role).u64(scope.size());
  for (const auto& s : scope) w.field(s);
  w.field(issuer_did).u64(static_cast<std::uint64_t>(issued_at));
  return std::move(w).bytes();
}

bool LegitimacyCredential::has_scope(std::string_view s) const {
  return std::find(scope.begin(), scope.end(), s) != scope.end();
}

LegitimacyCredential lvc_issue(std::string subject_did, std::string role, std::vector<std::string> scope,
                               std::string issuer_did, std::int64_t issued_at, const RsaKeypair& issuer) {
  LegitimacyCredential l{std::move(subject_did), std::move(role), std::move(scope), std::move(issuer_did),
                         issued_at, {}};
  l.signature = rsa_sign(l.signed_message(), issuer);
  return l;
}

bool lvc_verify(const LegitimacyCredential& lvc, const RsaPublicKey& issuer, std::string_view expected_role) {
  if (lvc.role != expected_role) return false;
  return rsa_verify(lvc.signed_message(), lvc.signature, issuer);
}

// ---- encoders --------------------------------------------------------------

json to_json(const PatientCredential& c) {
  json j = header("PatientCredential");
  j["credentialId"] = to_hex(c.credential_id);
  j["didPatient"] = c.did_patient_l;
  j["patientId"] = to_hex(c.patient_id);
  j["issueDate"] = c.issue_date;
  j["biohash"] = to_hex(c.biohash);
  j["didIssuer"] = c.did_apc;
  j["clVariant"] = cl_variant_name(c.sig.variant());
  j["signature"] = to_hex(c.sig.to_bytes());
  return j;
}

json to_json(const Pseudonym& p) {
  json j = header("Pseudonym");
  j["p1"] = to_hex(p.p1.to_bytes());
  j["p2"] = to_hex(p.p2.to_bytes());
  j["pk"] = to_hex(p.pk.to_bytes());
  return j;
}

json to_json(const PseudonymToken& t) {
  const auto& g = SchnorrGroup::standard();
  json j = header("PseudonymToken");
  j["pti"] = to_hex(t.pti);
  j["pseudonym"] = to_json(t.pseudonym);
  j["signature"] = to_hex(t.sig.to_bytes(g));
  return j;
}

json to_json(const AppointmentToken& t) {
  const auto& g = SchnorrGroup::standard();
  json j = header("AppointmentToken");
  j["ati"] = to_hex(t.ati);
  j["exp"] = t.exp;
  j["signature"] = to_hex(t.sig.to_bytes(g));
  return j;
}

json to_json(const LegitimacyCredential& l) {
  json j = header("LegitimacyCredential");
  j["subjectDid"] = l.subject_did;
  j["role"] = l.role;
  j["scope"] = l.scope;
  j["issuerDid"] = l.issuer_did;
  j["issuedAt"] = l.issued_at;
  j["signature"] = to_hex(l.signature);
  return j;
}

json to_json(const PseudonymAccessInfo& pai) {
  json j = header("PseudonymAccessInfo");
  j["p1"] = to_hex(pai.pseudonym.p1.to_bytes());
  j["p2"] = to_hex(pai.pseudonym.p2.to_bytes());
  j["pk"] = to_hex(pai.pseudonym.pk.to_bytes());
  j["rk"] = to_hex(pai.rk.to_bytes());
  j["ct"] = to_hex(pai.ct);
  return j;
}

json to_json(const ClProof& p) {
  json j = header("ClProof");
  j["clVariant"] = cl_variant_name(p.variant());
  json disclosed = json::object();
  for (const auto& [slot, value] : p.disclosed) disclosed[std::to_string(slot)] = to_hex(value);
  j["disclosed"] = disclosed;
  j["proof"] = to_hex(p.to_bytes());
  return j;
}

json to_json(const PbProof& p) {
  json j = header("PseudonymBindingProof");
  j["proof"] = to_hex(p.to_bytes());
  return j;
}

// ---- decoders --------------------------------------------------------------

PatientCredential pcred_from_json(const json& j) {
  return decoding([&] {
    expect_type(j, "PatientCredential");
    PatientCredential c;
    c.credential_id = to_id16(hex(j, "credentialId"));
    c.did_patient_l = str(j, "didPatient");
    c.patient_id = hex(j, "patientId");
    c.issue_date = i64(j, "issueDate");
    c.biohash = to_biohash(hex(j, "biohash"));
    c.did_apc = str(j, "didIssuer");
    c.sig = ClSignature::from_bytes(hex(j, "signature"));
    if (parse_cl_variant(str(j, "clVariant")) != c.sig.variant()) throw DecodeError("CL variant mismatch");
    return c;
  });
}

Pseudonym pseudonym_from_json(const json& j) {
  return decoding([&] {
    expect_type(j, "Pseudonym");
    return Pseudonym{GT::from_bytes(hex(j, "p1")), G2::from_bytes(hex(j, "p2")), G2::from_bytes(hex(j, "pk"))};
  });
}

PseudonymToken pt_from_json(const json& j) {
  return decoding([&] {
    expect_type(j, "PseudonymToken");
    return PseudonymToken{to_id16(hex(j, "pti")), pseudonym_from_json(j.at("pseudonym")),
                          SchnorrSig::from_bytes(SchnorrGroup::standard(), hex(j, "signature"))};
  });
}

AppointmentToken at_from_json(const json& j) {
  return decoding([&] {
    expect_type(j, "AppointmentToken");
    return AppointmentToken{to_id16(hex(j, "ati")), i64(j, "exp"),
                            PartiallyBlindSig::from_bytes(SchnorrGroup::standard(), hex(j, "signature"))};
  });
}

LegitimacyCredential lvc_from_json(const json& j) {
  return decoding([&] {
    expect_type(j, "LegitimacyCredential");
    LegitimacyCredential l;
    l.subject_did = str(j, "subjectDid");
    l.role = str(j, "role");
    l.scope = j.at("scope").get<std::vector<std::string>>();
    l.issuer_did = str(j, "issuerDid");
    l.issued_at = i64(j, "issuedAt");
    l.signature = hex(j, "signature");
    return l;
  });
}

PseudonymAccessInfo pai_from_json(const json& j) {
  return decoding([&] {
    expect_type(j, "PseudonymAccessInfo");
    PseudonymAccessInfo pai;
    pai.pseudonym = Pseudonym{GT::from_bytes(hex(j, "p1")), G2::from_bytes(hex(j, "p2")), G2::from_bytes(hex(j, "pk"))};
    pai.rk = G1::from_bytes(hex(j, "rk"));
    pai.ct = hex(j, "ct");
    return pai;
  });
}

ClProof pok_from_json(const json& j) {
  return decoding([&] {
    expect_type(j, "ClProof");
    ClProof p = ClProof::from_bytes(hex(j, "proof"));
    if (parse_cl_variant(str(j, "clVariant")) != p.variant()) throw DecodeError("CL variant mismatch");
    // The readable disclosed map must agree with the encoded proof.
    const json& d = j.at("disclosed");
    if (!d.is_object() || d.size() != p.disclosed.size()) throw DecodeError("disclosed attributes mismatch");
    for (const auto& [slot, value] : p.disclosed) {
      auto it = d.find(std::to_string(slot));
      if (it == d.end() || from_hex(it->get<std::string>()) != value) {
        throw DecodeError("disclosed attributes mismatch");
      }
    }
    return p;
  });
}

PbProof pbp_from_json(const json& j) {
  return decoding([&] {
    expect_type(j, "PseudonymBindingProof");
    return PbProof::from_bytes(hex(j, "proof"));
  });
}

}  // namespace hidm
