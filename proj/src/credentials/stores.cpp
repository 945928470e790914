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

#include "hidm/credentials/stores.hpp"

#include <regex>

#include "hidm/algebra/hash.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

bool PiiBundle::verify() const {
  static const std::regex kDate(R"(\d{4}-\d{2}-\d{2})");
  if (!document_valid) return false;
  if (full_name.empty() || national_id.empty() || address.empty()) return false;
  return std::regex_match(date_of_birth, kDate);
}

Digest32 PiiBundle::fingerprint() const {
  return sha256(FieldWriter().field("HIDM/pii").field(national_id).field(full_name).field(date_of_birth).bytes());
}

nlohmann::json PiiBundle::to_json() const {
  return {{"fullName", full_name},
          {"dateOfBirth", date_of_birth},
          {"nationalId", national_id},
          {"address", address},
          {"documentValid", document_valid}};
}

PiiBundle PiiBundle::from_json(const nlohmann::json& j) {
  try {
    return PiiBundle{j.at("fullName").get<std::string>(), j.at("dateOfBirth").get<std::string>(),
                     j.at("nationalId").get<std::string>(), j.at("address").get<std::string>(),
                     j.value("documentValid", true)};
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("PII bundle: ") + e.what());
  }
}

// ---- APC -------------------------------------------------------------------

const std::vector<std::string>& ApcStore::columns() {
  static const std::vector<std::string> kColumns = {"fingerprint", "patientId",  "fullName",
                                                    "dateOfBirth", "nationalId", "address"};
  return kColumns;
}

ApcStore::Enrollment ApcStore::enroll(const PiiBundle& pii, Rng& rng) {
  Digest32 fp = pii.fingerprint();
  std::lock_guard lock(mu_);
  if (auto it = by_fingerprint_.find(fp); it != by_fingerprint_.end()) return {it->second.patient_id, false};
  Bytes id = rng.bytes(kPatientIdSize);
  while (by_patient_id_.count(id)) id = rng.bytes(kPatientIdSize);
  by_fingerprint_.emplace(fp, Row{id, pii});
  by_patient_id_.emplace(id, fp);
  return {id, true};
}

std::optional<PiiBundle> ApcStore::lookup(ByteView patient_id) const {
  std::lock_guard lock(mu_);
  auto it = by_patient_id_.find(Bytes(patient_id.begin(), patient_id.end()));
  if (it == by_patient_id_.end()) return std::nullopt;
  return by_fingerprint_.at(it->second).pii;
}

std::size_t ApcStore::size() const {
  std::lock_guard lock(mu_);
  return by_fingerprint_.size();
}

std::string ApcStore::serialize() const {
  std::lock_guard lock(mu_);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [fp, row] : by_fingerprint_) {
    rows.push_back({{"fingerprint", to_hex(fp)},
                    {"patientId", to_hex(row.patient_id)},
                    {"fullName", row.pii.full_name},
                    {"dateOfBirth", row.pii.date_of_birth},
                    {"nationalId", row.pii.national_id},
                    {"address", row.pii.address}});
  }
  return nlohmann::json{{"columns", columns()}, {"rows", rows}}.dump();
}

// ---- PTA -------------------------------------------------------------------

const std::vector<std::string>& PtaStore::columns() {
  static const std::vector<std::string> kColumns = {"pti", "pseudonym", "patientId", "issuedAt"};
  return kColumns;
}

void PtaStore::add(PtaRecord record) {
  std::lock_guard lock(mu_);
  by_pseudonym_[record.pseudonym] = rows_.size();
  rows_.push_back(std::move(record));
}

std::optional<PtaRecord> PtaStore::find_by_pseudonym(ByteView pseudonym) const {
  std::lock_guard lock(mu_);
  auto it = by_pseudonym_.find(Bytes(pseudonym.begin(), pseudonym.end()));
  if (it == by_pseudonym_.end()) return std::nullopt;
  return rows_[it->second];
}

std::size_t PtaStore::size() const {
  std::lock_guard lock(mu_);
  return rows_.size();
}

std::string PtaStore::serialize() const {
  std::lock_guard lock(mu_);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rows_) {
    rows.push_back({{"pti", to_hex(r.pti)},
                    {"pseudonym", to_hex(r.pseudonym)},
                    {"patientId", to_hex(r.patient_id)},
                    {"issuedAt", r.issued_at}});
  }
  return nlohmann::json{{"columns", columns()}, {"rows", rows}}.dump();
}

}  // namespace hidm
