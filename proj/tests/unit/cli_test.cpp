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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "hidm/cli/attack.hpp"
#include "hidm/cli/bench.hpp"
#include "hidm/cli/scenario.hpp"
#include "hidm/cli/vectors.hpp"
#include "hidm/ledgers/chain.hpp"
#include "test_util.hpp"

namespace hidm {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::rng_for;

// ---- scenario config -------------------------------------------------------

TEST(ScenarioConfig, ParsesKnownKeys) {
  ScenarioConfig c = ScenarioConfig::from_json(json{{"seed", "s"},
                                                    {"patients", 4},
                                                    {"visitsPerPatient", 3},
                                                    {"rotatePseudonyms", false},
                                                    {"reverifyLvc", false},
                                                    {"clVariant", "cl-rsa"},
                                                    {"atValiditySeconds", 600},
                                                    {"clockSkewSeconds", 5},
                                                    {"biometricNoise", 0.02},
                                                    {"professionals", {{{"scope", {"read", "write"}}}, {{"scope", {"read"}}}}},
                                                    {"outputDir", "out"}});
  EXPECT_EQ(c.world.seed, "s");
  EXPECT_EQ(c.patients, 4u);
  EXPECT_EQ(c.visits_per_patient, 3u);
  EXPECT_FALSE(c.world.rotate_pseudonyms);
  EXPECT_FALSE(c.world.reverify_lvc);
  EXPECT_EQ(c.world.cl_variant, ClVariant::kRsa);
  EXPECT_EQ(c.world.at_validity, 600);
  EXPECT_EQ(c.world.clock_skew, 5);
  EXPECT_DOUBLE_EQ(c.world.biometric_noise, 0.02);
  ASSERT_EQ(c.professionals.size(), 2u);
  EXPECT_EQ(c.professionals[1], std::vector<std::string>{"read"});
  EXPECT_EQ(c.output_dir, fs::path("out"));

  ScenarioConfig d = ScenarioConfig::from_json(json::object());
  EXPECT_EQ(d.patients, 3u);
  EXPECT_FALSE(d.world.seed);
}

TEST(ScenarioConfig, RejectsInvalidInput) {
  for (const json& bad : {json{{"patient", 3}},
                          json{{"patients", -1}},
                          json{{"patients", "three"}},
                          json{{"clVariant", "cl-other"}},
                          json{{"atValiditySeconds", 0}},
                          json{{"professionals", json::array()}},
                          json{{"professionals", {{{"scope", {"read"}}}}}},
                          json{{"professionals", {{{"scope", {"delete"}}}}}},
                          json::array()}) {
    EXPECT_THROW(ScenarioConfig::from_json(bad), ConfigError) << bad.dump();
  }
  EXPECT_THROW(ScenarioConfig::load("/nonexistent/hidm.json"), ConfigError);
  fs::path broken = fs::temp_directory_path() / "hidm-cli-test-broken.json";
  std::ofstream(broken) << "{ not json";
  EXPECT_THROW(ScenarioConfig::load(broken), ConfigError);
}

TEST(Scenario, ExpectedEventCounts) {
  auto rotating = expected_event_counts(3, 2, true);
  EXPECT_EQ(rotating.at("PatientCredentialIssuance"), 3u);
  EXPECT_EQ(rotating.at("PseudonymTokenIssuance"), 6u);
  EXPECT_EQ(rotating.at("HealthRecordRead"), 12u);
  auto fixed = expected_event_counts(3, 2, false);
  EXPECT_EQ(fixed.at("PseudonymTokenIssuance"), 3u);
  EXPECT_EQ(fixed.at("PseudonymKeyIssuance"), 3u);
  EXPECT_EQ(fixed.at("AppointmentTokenIssuance"), 6u);
}

TEST(Scenario, SmallRunReconcilesAndPersists) {
  ScenarioConfig c;
  c.patients = 2;
  c.visits_per_patient = 2;
  c.world.seed = "cli-test";
  c.world.authority_rsa_bits = 2048;
  c.output_dir = fs::temp_directory_path() / "hidm-cli-test-run";
  fs::remove_all(c.output_dir);
  ScenarioResult r = run_scenario(c);
  ASSERT_TRUE(r.ok) << r.failed_episode << ": " << r.error;
  EXPECT_EQ(r.visits_completed, 4u);
  EXPECT_EQ(r.continuity_failures, 0u);
  for (const auto& [event, n] : expected_event_counts(2, 2, true)) EXPECT_EQ(r.events[event], n) << event;
  EXPECT_EQ(r.summary().at("ok"), true);
  for (const char* f : {"did.jsonl", "ati.jsonl", "audit.jsonl", "transcript.json", "summary.json"}) {
    EXPECT_TRUE(fs::exists(c.output_dir / f)) << f;
  }
  for (const char* f : {"did.jsonl", "ati.jsonl", "audit.jsonl"}) {
    ChainFileReport rep = verify_chain_file(c.output_dir / f);
    EXPECT_TRUE(rep.ok) << f << ": " << rep.error;
  }
}

// ---- bench -----------------------------------------------------------------

TEST(Bench, TrimmedMean) {
  EXPECT_DOUBLE_EQ(trimmed_mean({1, 2, 3}), 2.0);
  EXPECT_DOUBLE_EQ(trimmed_mean({100, 1, 2, 3, 4, 0}), 2.5);
  std::vector<double> twelve = {50, 10, 10, 10, 10, 10, 10, 10, 10, 10, 10, 1};
  EXPECT_DOUBLE_EQ(trimmed_mean(twelve), 10.0);
  EXPECT_THROW(trimmed_mean({1, 2}), std::invalid_argument);
}

TEST(Bench, NamesAndPairs) {
  for (BenchScheme s : {BenchScheme::kRsa, BenchScheme::kClRsa, BenchScheme::kClPairing}) {
    EXPECT_EQ(parse_bench_scheme(bench_scheme_name(s)), s);
  }
  for (BenchScenario s : all_bench_scenarios()) EXPECT_EQ(parse_bench_scenario(bench_scenario_name(s)), s);
  EXPECT_EQ(all_bench_scenarios().size(), 6u);
  EXPECT_FALSE(parse_bench_scheme("DSA"));
  EXPECT_TRUE(bench_pair_valid(BenchScheme::kRsa, BenchScenario::kCredential));
  EXPECT_FALSE(bench_pair_valid(BenchScheme::kRsa, BenchScenario::kPseudonymToken));
  for (BenchScenario s : all_bench_scenarios()) {
    EXPECT_TRUE(bench_pair_valid(BenchScheme::kClRsa, s));
    EXPECT_TRUE(bench_pair_valid(BenchScheme::kClPairing, s));
  }
  EXPECT_THROW(run_bench(BenchScheme::kRsa, BenchScenario::kBooking), std::invalid_argument);
}

TEST(Bench, RowShape) {
  BenchRow row = run_bench(BenchScheme::kClPairing, BenchScenario::kCredential, kBenchRuns);
  EXPECT_EQ(row.samples_ms.size(), kBenchRuns);
  EXPECT_DOUBLE_EQ(row.avg_ms, trimmed_mean(row.samples_ms));
  EXPECT_GT(row.signature_bytes, 0u);
  EXPECT_GT(row.response_bytes, row.signature_bytes);
  json j = row.to_json();
  EXPECT_EQ(j.at("scheme"), "CL-pairing");
  EXPECT_EQ(j.at("runs"), kBenchRuns);
  EXPECT_EQ(j.at("averaged"), kBenchTrimmed);
  json report = bench_report({row});
  EXPECT_FALSE(report.dump().empty());
}

// ---- attacks ---------------------------------------------------------------

TEST(Attack, NamesRoundTrip) {
  EXPECT_EQ(all_attack_kinds().size(), 6u);
  for (AttackKind k : all_attack_kinds()) EXPECT_EQ(parse_attack_kind(attack_kind_name(k)), k);
  EXPECT_FALSE(parse_attack_kind("ddos"));
}

TEST(Attack, EveryKindIsRepelled) {
  AttackOptions opts;
  opts.seed = "cli-attack-test";
  opts.forgery_trials = 20;
  opts.scan_patients = 2;
  for (AttackKind k : all_attack_kinds()) {
    AttackOutcome o = run_attack(k, opts);
    EXPECT_TRUE(o.pass) << o.kind << ": expected " << o.expected << ", observed " << o.observed;
    EXPECT_EQ(o.kind, attack_kind_name(k));
    json j = o.to_json();
    for (const char* key : {"attackKind", "expectedResult", "observedResult", "pass", "details"}) {
      EXPECT_TRUE(j.contains(key)) << key;
    }
  }
}

TEST(Attack, ForgerySweepTalliesEveryScheme) {
  auto rng = rng_for("forgery");
  auto tally = forgery_sweep(25, *rng);
  EXPECT_EQ(tally.size(), 5u);
  for (const auto& [scheme, t] : tally) {
    EXPECT_EQ(t.trials, 25u) << scheme;
    EXPECT_EQ(t.accepted, 0u) << scheme;
  }
}

// ---- vectors ---------------------------------------------------------------

TEST(Vectors, DeterministicPerSeed) {
  json a = emit_vectors("cli-vectors");
  json b = emit_vectors("cli-vectors");
  json c = emit_vectors("cli-vectors-other");
  EXPECT_EQ(a, b);
  EXPECT_NE(a.at("digests"), c.at("digests"));
  for (const char* key : {"artifacts", "schemes", "digests", "seed"}) EXPECT_TRUE(a.contains(key)) << key;
  EXPECT_EQ(a.at("seed"), "cli-vectors");
}

}  // namespace
}  // namespace hidm
