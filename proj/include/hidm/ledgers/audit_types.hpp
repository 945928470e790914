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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "hidm/common/bytes.hpp"

namespace hidm {

enum class AccessLevel { kPatientAccessible, kAuditorAuthorityAccessible, kAdministrator };

std::string_view access_level_name(AccessLevel level);
std::optional<AccessLevel> parse_access_level(std::string_view name);

namespace events {
inline constexpr std::string_view kPatientCredentialIssuance = "PatientCredentialIssuance";
inline constexpr std::string_view kPseudonymTokenIssuance = "PseudonymTokenIssuance";
inline constexpr std::string_view kPseudonymKeyIssuance = "PseudonymKeyIssuance";
inline constexpr std::string_view kAppointmentTokenIssuance = "AppointmentTokenIssuance";
inline constexpr std::string_view kAppointmentBooked = "AppointmentBooked";
inline constexpr std::string_view kIdentityVerification = "IdentityVerification";
inline constexpr std::string_view kConsultationHandoff = "ConsultationHandoff";
inline constexpr std::string_view kHealthRecordRead = "HealthRecordRead";
inline constexpr std::string_view kHealthRecordWrite = "HealthRecordWrite";
inline constexpr std::string_view kIdentityDisclosure = "IdentityDisclosure";
inline constexpr std::string_view kLedgerQuery = "LedgerQuery";
}  // namespace events

// What an issuing or accessing entity reports; the ledger adds logID,
// timestamp and originModule.
struct AuditEvent {
  std::string event_type;
  AccessLevel access_level = AccessLevel::kAuditorAuthorityAccessible;
  std::string patient_identifier;
  std::optional<std::string> hp_identifier;
  std::map<std::string, std::string> details;
};

class AuditSink {
 public:
  virtual ~AuditSink() = default;
  // Returns the logID.
  virtual std::uint64_t log(const AuditEvent& event) = 0;
};

// patientIdentifier values: "patient:<hex id>" or
// "pseudonym:<hex SHA-256 of the pseudonym encoding>".
std::string patient_identifier_for_id(ByteView patient_id);
std::string patient_identifier_for_pseudonym(ByteView pseudonym_encoding);

}  // namespace hidm
