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

// Benchmark harness. Each scenario is timed around the operations it names:
// proof generation and verification plus the issuer's signing step. A run
// takes twelve samples, drops the fastest and slowest, and averages ten.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace hidm {

enum class BenchScheme { kRsa, kClRsa, kClPairing };
enum class BenchScenario { kCredential = 1, kPseudonymToken, kPseudonymKey, kAppointmentToken, kBooking, kInPerson };

inline constexpr std::size_t kBenchRuns = 12;
inline constexpr std::size_t kBenchTrimmed = 10;

std::string_view bench_scheme_name(BenchScheme s);  // "RSA", "CL-RSA", "CL-pairing"
std::optional<BenchScheme> parse_bench_scheme(std::string_view name);
std::string_view bench_scenario_name(BenchScenario s);
// Accepts 1-6 or the scenario name.
std::optional<BenchScenario> parse_bench_scenario(std::string_view name);
const std::vector<BenchScenario>& all_bench_scenarios();
// RSA is defined only for credential issuance.
bool bench_pair_valid(BenchScheme scheme, BenchScenario scenario);

struct BenchRow {
  BenchScheme scheme = BenchScheme::kClPairing;
  BenchScenario scenario = BenchScenario::kCredential;
  std::optional<std::size_t> pre_signature_bytes;
  std::optional<std::size_t> full_request_bytes;
  std::size_t response_bytes = 0;
  std::size_t signature_bytes = 0;
  std::vector<double> samples_ms;
  double avg_ms = 0;

  nlohmann::json to_json() const;
};

// Drop one maximum and one minimum, average the rest. Needs >= 3 samples.
double trimmed_mean(std::vector<double> samples);

// Throws std::invalid_argument for an invalid (scheme, scenario) pair.
BenchRow run_bench(BenchScheme scheme, BenchScenario scenario, std::size_t runs = kBenchRuns);

nlohmann::json bench_report(const std::vector<BenchRow>& rows);

}  // namespace hidm
