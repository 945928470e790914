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

// hidm: scenario runner, benchmark harness, attack simulator, ledger
// verifier and test-vector emitter.
//
// Exit codes: 0 success, 1 protocol failure, 2 configuration error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hidm/cli/attack.hpp"
#include "hidm/cli/bench.hpp"
#include "hidm/cli/scenario.hpp"
#include "hidm/cli/vectors.hpp"
#include "hidm/common/error.hpp"
#include "hidm/ledgers/chain.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kProtocolFailure = 1;
constexpr int kConfigError = 2;

int write_json(const nlohmann::json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "hidm: cannot write " << out << "\n";
    return kConfigError;
  }
  f << j.dump(2) << "\n";
  return kOk;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  hidm::ScenarioConfig config = hidm::ScenarioConfig::load(config_path);
  if (!config.world.seed) config.world.seed = hidm::seed_from_env();
  if (!out_dir.empty()) config.output_dir = out_dir;
  hidm::ScenarioResult r = hidm::run_scenario(config);
  std::cout << r.summary().dump(2) << "\n";
  if (!r.ok) {
    std::cerr << "hidm: episode " << r.failed_episode << " failed: " << r.error << "\n";
    return kProtocolFailure;
  }
  return kOk;
}

int cmd_bench(const std::string& scheme_name, const std::string& scenario_name, const std::string& out) {
  auto scheme = hidm::parse_bench_scheme(scheme_name);
  if (!scheme) throw hidm::ConfigError("unknown scheme '" + scheme_name + "' (RSA, CL-RSA, CL-pairing)");
  std::vector<hidm::BenchScenario> scenarios;
  if (scenario_name == "all") {
    for (auto s : hidm::all_bench_scenarios()) {
      if (hidm::bench_pair_valid(*scheme, s)) scenarios.push_back(s);
    }
  } else {
    auto s = hidm::parse_bench_scenario(scenario_name);
    if (!s) throw hidm::ConfigError("unknown scenario '" + scenario_name + "' (1-6 or a scenario name)");
    if (!hidm::bench_pair_valid(*scheme, *s)) {
      throw hidm::ConfigError("RSA is benchmarked only for the credential scenario");
    }
    scenarios.push_back(*s);
  }
  std::vector<hidm::BenchRow> rows;
  for (auto s : scenarios) {
    rows.push_back(hidm::run_bench(*scheme, s));
    std::cerr << hidm::bench_scheme_name(*scheme) << " " << hidm::bench_scenario_name(s) << ": " << rows.back().avg_ms
              << " ms\n";
  }
  return write_json(hidm::bench_report(rows), out);
}

int cmd_attack(const std::string& kind_name, std::size_t trials) {
  auto kind = hidm::parse_attack_kind(kind_name);
  if (!kind) throw hidm::ConfigError("unknown attack kind '" + kind_name + "'");
  hidm::AttackOptions options;
  options.seed = hidm::seed_from_env();
  options.forgery_trials = trials;
  hidm::AttackOutcome o = hidm::run_attack(*kind, options);
  std::cout << o.to_json().dump(2) << "\n";
  return o.pass ? kOk : kProtocolFailure;
}

int cmd_ledger_verify(const std::string& file) {
  if (!std::filesystem::exists(file)) throw hidm::ConfigError("no such ledger file: " + file);
  hidm::ChainFileReport r = hidm::verify_chain_file(file);
  nlohmann::json j = {{"file", file}, {"ok", r.ok}, {"entries", r.entries}};
  if (!r.ok) j["error"] = r.error;
  std::cout << j.dump(2) << "\n";
  return r.ok ? kOk : kProtocolFailure;
}

int cmd_vectors(const std::string& out) {
  std::string seed = hidm::seed_from_env().value_or(std::string(hidm::kDefaultVectorSeed));
  return write_json(hidm::emit_vectors(seed), out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HIDM protocol simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto* run = app.add_subcommand("run", "Run a scenario config end to end");
  run->add_option("--config", config_path, "Scenario config (JSON)")->required();
  run->add_option("--out-dir", out_dir, "Override the config's output directory");

  std::string scheme, scenario, bench_out;
  auto* bench = app.add_subcommand("bench", "Benchmark one scheme on one scenario (12 runs, trimmed mean)");
  bench->add_option("--scheme", scheme, "RSA, CL-RSA or CL-pairing")->required();
  bench->add_option("--scenario", scenario, "1-6, a scenario name, or all")->required();
  bench->add_option("--out", bench_out, "Report path (default stdout)");

  std::string kind;
  std::size_t trials = 1000;
  auto* attack = app.add_subcommand("attack", "Mount an attack against a fresh run");
  attack->add_option("--kind", kind, "replay-ati, expired-at, forge-sig, eavesdrop-scan, impersonate-ho, unwarranted-trace")
      ->required();
  attack->add_option("--trials", trials, "Forgery attempts per scheme");

  std::string ledger_file;
  auto* ledger = app.add_subcommand("ledger", "Ledger tools");
  ledger->require_subcommand(1);
  auto* verify = ledger->add_subcommand("verify", "Verify a persisted hash-chain ledger");
  verify->add_option("file", ledger_file, "Ledger JSONL file")->required();

  std::string vectors_out;
  auto* vectors = app.add_subcommand("vectors", "Test vectors");
  vectors->require_subcommand(1);
  auto* emit = vectors->add_subcommand("emit", "Emit deterministic vectors (seed from HIDM_SEED)");
  emit->add_option("--out", vectors_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir);
    if (*bench) return cmd_bench(scheme, scenario, bench_out);
    if (*attack) return cmd_attack(kind, trials);
    if (*verify) return cmd_ledger_verify(ledger_file);
    if (*emit) return cmd_vectors(vectors_out);
  } catch (const hidm::ConfigError& e) {
    std::cerr << "hidm: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const hidm::ProtocolError& e) {
    std::cerr << "hidm: protocol failure: " << e.what() << "\n";
    return kProtocolFailure;
  } catch (const std::exception& e) {
    std::cerr << "hidm: error: " << e.what() << "\n";
    return kProtocolFailure;
  }
  return kConfigError;
}
