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

#include "hidm/ledgers/audit_types.hpp"

#include "hidm/algebra/hash.hpp"

namespace hidm {

std::string_view access_level_name(AccessLevel level) {
  switch (level) {
    case AccessLevel::kPatientAccessible:
      return "PatientAccessible";
    case AccessLevel::kAuditorAuthorityAccessible:
      return "AuditorAuthorityAccessible";
    case AccessLevel::kAdministrator:
      return "Administrator";
  }
  return "";
}

std::optional<AccessLevel> parse_access_level(std::string_view name) {
  for (auto level : {AccessLevel::kPatientAccessible, AccessLevel::kAuditorAuthorityAccessible,
                     AccessLevel::kAdministrator}) {
    if (access_level_name(level) == name) return level;
  }
  return std::nullopt;
}

std::string patient_identifier_for_id(ByteView patient_id) { return "patient:" + to_hex(patient_id); }

std::string patient_identifier_for_pseudonym(ByteView pseudonym_encoding) {
  return "pseudonym:" + to_hex(sha256(pseudonym_encoding));
}

}  // namespace hidm
