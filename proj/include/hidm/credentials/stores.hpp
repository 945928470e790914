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

// Entity stores with disjoint schemas: the APC maps PII to PatientIDs and
// never sees pseudonyms; the PTA maps pseudonyms to PatientIDs and never
// sees PII.

#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"
#include "json.hpp"

namespace hidm {

inline constexpr std::size_t kPatientIdSize = 16;

struct PiiBundle {
  std::string full_name;
  std::string date_of_birth;  // YYYY-MM-DD
  std::string national_id;
  std::string address;
  bool document_valid = true;  // outcome of the simulated document check

  // Simulated identity proofing.
  bool verify() const;
  // Stable per person; used to detect re-enrollment.
  Digest32 fingerprint() const;
  nlohmann::json to_json() const;
  static PiiBundle from_json(const nlohmann::json& j);
  bool operator==(const PiiBundle&) const = default;
};

class ApcStore {
 public:
  static const std::vector<std::string>& columns();

  struct Enrollment {
    Bytes patient_id;
    bool is_new = false;
  };
  // Returns the PatientID already bound to this person, or mints one.
  Enrollment enroll(const PiiBundle& pii, Rng& rng);
  std::optional<PiiBundle> lookup(ByteView patient_id) const;
  std::size_t size() const;
  // Serialized rows, for storage and privacy scans.
  std::string serialize() const;

 private:
  struct Row {
    Bytes patient_id;
    PiiBundle pii;
  };
  mutable std::mutex mu_;
  std::map<Digest32, Row> by_fingerprint_;
  std::map<Bytes, Digest32> by_patient_id_;
};

struct PtaRecord {
  Id16 pti{};
  Bytes pseudonym;  // canonical encoding
  Bytes patient_id;
  std::int64_t issued_at = 0;
};

class PtaStore {
 public:
  static const std::vector<std::string>& columns();

  void add(PtaRecord record);
  std::optional<PtaRecord> find_by_pseudonym(ByteView pseudonym) const;
  std::size_t size() const;
  std::string serialize() const;

 private:
  mutable std::mutex mu_;
  std::vector<PtaRecord> rows_;
  std::map<Bytes, std::size_t> by_pseudonym_;
};

}  // namespace hidm
