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

#include "hidm/cli/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "hidm/common/error.hpp"

namespace hidm {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

std::size_t count_field(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

bool has_scope(const std::vector<std::string>& scope, const char* s) {
  return std::find(scope.begin(), scope.end(), s) != scope.end();
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const json& j) {
  static const std::set<std::string> kKeys = {"seed",          "patients",          "visitsPerPatient",
                                              "rotatePseudonyms", "reverifyLvc",     "clVariant",
                                              "atValiditySeconds", "clockSkewSeconds", "biometricNoise",
                                              "professionals", "outputDir"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!kKeys.count(k)) throw ConfigError("unknown config key '" + k + "'");
  }
  ScenarioConfig c;
  if (j.contains("seed") && !j.at("seed").is_null()) c.world.seed = field<std::string>(j, "seed", "");
  c.patients = count_field(j, "patients", c.patients);
  c.visits_per_patient = count_field(j, "visitsPerPatient", c.visits_per_patient);
  c.world.rotate_pseudonyms = field<bool>(j, "rotatePseudonyms", c.world.rotate_pseudonyms);
  c.world.reverify_lvc = field<bool>(j, "reverifyLvc", c.world.reverify_lvc);
  c.world.at_validity = field<std::int64_t>(j, "atValiditySeconds", c.world.at_validity);
  c.world.clock_skew = field<std::int64_t>(j, "clockSkewSeconds", c.world.clock_skew);
  c.world.biometric_noise = field<double>(j, "biometricNoise", c.world.biometric_noise);
  c.output_dir = field<std::string>(j, "outputDir", c.output_dir.string());
  if (j.contains("clVariant")) {
    auto v = parse_cl_variant(field<std::string>(j, "clVariant", ""));
    if (!v) throw ConfigError("clVariant must be cl-rsa or cl-pairing");
    c.world.cl_variant = *v;
  }
  if (j.contains("professionals")) {
    const json& list = j.at("professionals");
    if (!list.is_array() || list.empty()) throw ConfigError("professionals must be a non-empty array");
    c.professionals.clear();
    for (const auto& hp : list) {
      if (!hp.is_object() || !hp.contains("scope")) throw ConfigError("each professional needs a scope");
      auto scope = field<std::vector<std::string>>(hp, "scope", {});
      for (const auto& s : scope) {
        if (s != "read" && s != "write") throw ConfigError("scope entries must be read or write");
      }
      c.professionals.push_back(std::move(scope));
    }
  }
  if (!has_scope(c.professionals.front(), "read") || !has_scope(c.professionals.front(), "write")) {
    throw ConfigError("the first professional must hold read and write scope");
  }
  if (c.patients == 0) throw ConfigError("patients must be positive");
  if (c.visits_per_patient == 0) throw ConfigError("visitsPerPatient must be positive");
  if (c.world.at_validity <= 0 || c.world.clock_skew < 0) throw ConfigError("invalid token validity or skew");
  if (c.world.biometric_noise < 0) throw ConfigError("biometricNoise must be non-negative");
  return c;
}

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

json ScenarioResult::summary() const {
  json j = {{"ok", ok},
            {"visitsCompleted", visits_completed},
            {"continuityFailures", continuity_failures},
            {"auditEvents", events},
            {"accessLevels", levels}};
  if (!ok) j["failure"] = {{"episode", failed_episode}, {"error", error}};
  return j;
}

std::map<std::string, std::size_t> expected_event_counts(std::size_t patients, std::size_t visits_per_patient,
                                                         bool rotate_pseudonyms) {
  std::size_t visits = patients * visits_per_patient;
  std::size_t pseudonyms = rotate_pseudonyms ? visits : patients;
  return {
      {std::string(events::kPatientCredentialIssuance), patients},
      {std::string(events::kPseudonymTokenIssuance), pseudonyms},
      {std::string(events::kPseudonymKeyIssuance), pseudonyms},
      {std::string(events::kAppointmentTokenIssuance), visits},
      {std::string(events::kAppointmentBooked), visits},
      {std::string(events::kIdentityVerification), visits},
      {std::string(events::kConsultationHandoff), visits},
      // Each access is logged once for the patient and once for the authority.
      {std::string(events::kHealthRecordWrite), 2 * visits},
      {std::string(events::kHealthRecordRead), 2 * visits},
  };
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  WorldConfig wc = config.world;
  wc.ledger_dir = config.output_dir;
  World world(wc);
  for (std::size_t i = 1; i < config.professionals.size(); ++i) world.add_hp(config.professionals[i]);

  ScenarioResult result;
  for (std::size_t i = 0; i < config.patients; ++i) world.add_patient();
  try {
    for (std::size_t v = 0; v < config.visits_per_patient; ++v) {
      for (auto& p : world.patients()) {
        VisitReport r = world.run_visit(*p);
        ++result.visits_completed;
        // Every earlier visit's note must be readable under the new pseudonym.
        if (r.read.size() != v + 1) ++result.continuity_failures;
      }
    }
    result.ok = result.continuity_failures == 0;
    if (!result.ok) {
      result.failed_episode = "E8";
      result.error = "record continuity lost across visits";
    }
  } catch (const EpisodeError& e) {
    result.failed_episode = e.episode();
    result.error = e.what();
  } catch (const ProtocolError& e) {
    result.failed_episode = "setup";
    result.error = e.what();
  }

  for (const auto& r : world.audit().records()) {
    ++result.events[r.event_type];
    ++result.levels[std::string(access_level_name(r.access_level))];
  }
  std::filesystem::create_directories(config.output_dir);
  std::ofstream(config.output_dir / "transcript.json") << world.wire().to_json().dump(1) << "\n";
  std::ofstream(config.output_dir / "summary.json") << result.summary().dump(2) << "\n";
  return result;
}

}  // namespace hidm
