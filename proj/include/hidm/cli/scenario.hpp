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

// Scenario runner: a JSON config describes the roster and policy, and the
// run executes E1-E8 for every patient, writing ledgers and the transcript.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hidm/actors/world.hpp"
#include "json.hpp"

namespace hidm {

// Malformed or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  std::size_t patients = 3;
  std::size_t visits_per_patient = 2;
  // Scope lists of the healthcare professionals; visits use the first.
  std::vector<std::vector<std::string>> professionals = {{"read", "write"}};
  WorldConfig world;
  std::filesystem::path output_dir = "hidm-run";

  // Keys: seed, patients, visitsPerPatient, rotatePseudonyms, reverifyLvc,
  // clVariant, atValiditySeconds, clockSkewSeconds, biometricNoise,
  // professionals [{scope: [...]}], outputDir. Unknown keys are rejected.
  static ScenarioConfig from_json(const nlohmann::json& j);
  static ScenarioConfig load(const std::filesystem::path& file);
};

struct ScenarioResult {
  bool ok = false;
  std::string failed_episode;  // empty on success
  std::string error;
  std::size_t visits_completed = 0;
  std::size_t continuity_failures = 0;  // later visits that miss earlier entries
  std::map<std::string, std::size_t> events;  // audit records by event type
  std::map<std::string, std::size_t> levels;  // audit records by access level
  nlohmann::json summary() const;
};

// Ledger files go under output_dir; transcript.json and summary.json are
// written there as well.
ScenarioResult run_scenario(const ScenarioConfig& config);

// Per-event audit counts a run must produce, derived from what it executed.
std::map<std::string, std::size_t> expected_event_counts(std::size_t patients, std::size_t visits_per_patient,
                                                         bool rotate_pseudonyms);

}  // namespace hidm
