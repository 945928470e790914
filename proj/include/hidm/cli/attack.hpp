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

// Attack simulator. Each attack runs against a fresh deployment after a
// completed baseline visit and reports what the system did.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hidm/actors/world.hpp"
#include "json.hpp"

namespace hidm {

enum class AttackKind { kReplayAti, kExpiredAt, kForgeSig, kEavesdropScan, kImpersonateHo, kUnwarrantedTrace };

std::string_view attack_kind_name(AttackKind k);
std::optional<AttackKind> parse_attack_kind(std::string_view name);
const std::vector<AttackKind>& all_attack_kinds();

struct AttackOutcome {
  std::string kind;
  std::string expected;
  std::string observed;
  bool pass = false;  // observed == expected
  nlohmann::json details;

  nlohmann::json to_json() const;
};

struct AttackOptions {
  std::optional<std::string> seed;
  std::size_t forgery_trials = 1000;  // per scheme
  std::size_t scan_patients = 3;
};

AttackOutcome run_attack(AttackKind kind, const AttackOptions& options = {});

struct ForgeryTally {
  std::size_t trials = 0;
  std::size_t accepted = 0;
};

// Random and mutated signatures against Schnorr, PBS, CL-RSA, CL-pairing and
// IBS verifiers, `trials` per scheme. Keys are drawn from `rng`.
std::map<std::string, ForgeryTally> forgery_sweep(std::size_t trials, Rng& rng);

struct ScanReport {
  std::size_t secrets = 0;  // distinct patient IDs and ATIs searched for
  std::size_t wire_bytes = 0;
  std::size_t hits = 0;
};

// Searches the concatenated channel ciphertexts for every patient ID and ATI
// the world has produced, both raw and hex-encoded.
ScanReport eavesdrop_scan(World& world);

}  // namespace hidm
