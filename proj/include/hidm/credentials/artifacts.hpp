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

// The issuer-signed artifacts and their "hidm/v1" JSON encodings.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hidm/common/bytes.hpp"
#include "hidm/credentials/biohash.hpp"
#include "hidm/pre/pre.hpp"
#include "hidm/proofs/pbp.hpp"
#include "hidm/proofs/pok.hpp"
#include "hidm/signatures/cl.hpp"
#include "hidm/signatures/pbs.hpp"
#include "hidm/signatures/rsa.hpp"
#include "hidm/signatures/schnorr.hpp"
#include "json.hpp"

namespace hidm {

inline constexpr std::string_view kSchemaVersion = "hidm/v1";

// Patient credential slots, in signing order.
enum PcredSlot : std::size_t {
  kSlotCredentialId = 0,
  kSlotPatientDid = 1,
  kSlotPatientId = 2,
  kSlotIssueDate = 3,
  kSlotBioHash = 4,
  kSlotIssuerDid = 5,
  kPcredSlotCount = 6,
};

struct PatientCredential {
  Id16 credential_id{};
  std::string did_patient_l;
  Bytes patient_id;
  std::int64_t issue_date = 0;  // Unix seconds, UTC
  BioHash biohash{};
  std::string did_apc;
  ClSignature sig;

  std::vector<Bytes> slots() const;
  bool operator==(const PatientCredential&) const = default;
};

struct PseudonymToken {
  Id16 pti{};
  Pseudonym pseudonym;
  SchnorrSig sig;

  Bytes signed_message() const;  // pti || pseudonym
  bool operator==(const PseudonymToken&) const = default;
};

struct AppointmentToken {
  Id16 ati{};
  std::int64_t exp = 0;
  PartiallyBlindSig sig;

  bool operator==(const AppointmentToken&) const = default;
};

// GHA-issued legitimacy credential. `scope` lists permitted access types for
// healthcare professionals and is empty for other roles.
struct LegitimacyCredential {
  std::string subject_did;
  std::string role;
  std::vector<std::string> scope;
  std::string issuer_did;
  std::int64_t issued_at = 0;
  Bytes signature;

  Bytes signed_message() const;
  bool has_scope(std::string_view s) const;
  bool operator==(const LegitimacyCredential&) const = default;
};

namespace roles {
inline constexpr std::string_view kApc = "APC";
inline constexpr std::string_view kPta = "PTA";
inline constexpr std::string_view kHo = "HO";
inline constexpr std::string_view kHp = "HP";
inline constexpr std::string_view kHrr = "HRR";
inline constexpr std::string_view kAuditorAuthority = "AuditorAuthority";
inline constexpr std::string_view kAdministrator = "Administrator";
}  // namespace roles

LegitimacyCredential lvc_issue(std::string subject_did, std::string role, std::vector<std::string> scope,
                               std::string issuer_did, std::int64_t issued_at, const RsaKeypair& issuer);
bool lvc_verify(const LegitimacyCredential& lvc, const RsaPublicKey& issuer, std::string_view expected_role);

// ---- JSON ------------------------------------------------------------------
// Decoders throw DecodeError on missing fields, bad hex or invalid points.

nlohmann::json to_json(const PatientCredential& c);
nlohmann::json to_json(const PseudonymToken& t);
nlohmann::json to_json(const AppointmentToken& t);
nlohmann::json to_json(const LegitimacyCredential& l);
nlohmann::json to_json(const PseudonymAccessInfo& pai);
nlohmann::json to_json(const Pseudonym& p);
nlohmann::json to_json(const ClProof& p);
nlohmann::json to_json(const PbProof& p);

PatientCredential pcred_from_json(const nlohmann::json& j);
PseudonymToken pt_from_json(const nlohmann::json& j);
AppointmentToken at_from_json(const nlohmann::json& j);
LegitimacyCredential lvc_from_json(const nlohmann::json& j);
PseudonymAccessInfo pai_from_json(const nlohmann::json& j);
Pseudonym pseudonym_from_json(const nlohmann::json& j);
ClProof pok_from_json(const nlohmann::json& j);
PbProof pbp_from_json(const nlohmann::json& j);

}  // namespace hidm
