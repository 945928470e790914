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

// Appointment-token usage ledger. Answers membership for a presented ATI
// and never enumerates.

#pragma once

#include <mutex>
#include <set>

#include "hidm/common/bytes.hpp"
#include "hidm/ledgers/chain.hpp"

namespace hidm {

enum class AtiStatus { kFresh, kReplayed };

class AtiLedger {
 public:
  explicit AtiLedger(std::optional<std::filesystem::path> file = {});

  // Atomic test-and-set: exactly one caller per ATI ever sees kFresh.
  AtiStatus check_and_mark(const Id16& ati, std::int64_t timestamp, std::string_view writer_did);
  bool contains(const Id16& ati) const;

  const HashChain& chain() const { return chain_; }

 private:
  mutable std::mutex mu_;
  std::set<Id16> used_;
  HashChain chain_;
};

}  // namespace hidm
