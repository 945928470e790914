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

#include "hidm/ledgers/ati.hpp"

namespace hidm {

AtiLedger::AtiLedger(std::optional<std::filesystem::path> file) : chain_(std::move(file)) {}

AtiStatus AtiLedger::check_and_mark(const Id16& ati, std::int64_t timestamp, std::string_view writer_did) {
  std::lock_guard lock(mu_);
  if (!used_.insert(ati).second) return AtiStatus::kReplayed;
  chain_.append({{"ati", to_hex(ati)}, {"timestamp", timestamp}, {"writer", std::string(writer_did)}});
  return AtiStatus::kFresh;
}

bool AtiLedger::contains(const Id16& ati) const {
  std::lock_guard lock(mu_);
  return used_.count(ati) > 0;
}

}  // namespace hidm
