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

// The episode engine: one simulated deployment with its ledgers, entities
// and patients. Every message of every episode crosses a SecureChannel and
// lands in the wire log.
//
// Randomness is forked per (patient, operation, party) from the root
// source, so in test-vector mode transcripts depend only on the seed and
// the per-patient order of operations.

#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hidm/actors/channel.hpp"
#include "hidm/actors/entities.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

struct WorldConfig {
  ClVariant cl_variant = ClVariant::kPairing;
  std::optional<std::string> seed;  // test-vector mode when set
  std::int64_t start_time = 1767225600;  // 2026-01-01T00:00:00Z
  bool rotate_pseudonyms = true;
  bool reverify_lvc = true;
  std::int64_t at_validity = kDefaultAtValidity;
  std::int64_t clock_skew = kDefaultClockSkew;
  PbpMode pbp_mode = PbpMode::kIndependent;
  std::size_t authority_rsa_bits = 3072;
  double biometric_noise = 0.05;
  std::optional<std::filesystem::path> ledger_dir;
};

class SimClock {
 public:
  explicit SimClock(std::int64_t start) : now_(start) {}
  std::int64_t now() const { return now_.load(); }
  void advance(std::int64_t seconds) { now_ += seconds; }
  void set(std::int64_t t) { now_ = t; }

 private:
  std::atomic<std::int64_t> now_;
};

struct PatientVisit {
  std::size_t number = 0;
  PrePatientKeys pre;
  GeneratedPseudonym pseudonym;
  std::optional<PseudonymToken> pt;
  std::optional<IbsUserKey> key;
  std::optional<AppointmentToken> at;
  std::string confirmation_code;
  std::optional<PseudonymAccessInfo> hp_view;  // PAI as received by the HP

  Bytes pseudonym_bytes() const { return pseudonym.pai.pseudonym.to_bytes(); }
};

struct Patient {
  std::size_t index = 0;
  PiiBundle pii;
  std::vector<double> features;
  EntityIdentity identity;  // long-lived DID
  std::optional<PatientCredential> credential;
  std::optional<PatientVisit> visit;
  std::vector<PatientVisit> history;  // earlier visits with their keys
  std::size_t visits_started = 0;
  std::size_t ops = 0;
};

struct VisitReport {
  std::size_t visit = 0;
  Bytes pseudonym;
  std::string confirmation_code;
  RecordEntry written;
  std::vector<RecordEntry> read;
};

// A protocol failure tagged with the episode that raised it.
class EpisodeError : public ProtocolError {
 public:
  EpisodeError(std::string episode, const ProtocolError& cause)
      : ProtocolError(cause.reason(), episode + ": " + cause.what()), episode_(std::move(episode)) {}
  const std::string& episode() const { return episode_; }

 private:
  std::string episode_;
};

// What a trace returns and how the run was reconstructed.
struct TraceResult {
  Bytes patient_id;
  PiiBundle pii;
};

class World {
 public:
  explicit World(WorldConfig config = {});
  World(const World&) = delete;
  World& operator=(const World&) = delete;

  Patient& add_patient();
  Patient& add_patient(PiiBundle pii, std::vector<double> features);

  // Episodes. Each throws ProtocolError with the failing check's reason.
  void e1_issue_credential(Patient& p);
  // Fresh PRE keys and pseudonym for a new visit (local, no messages).
  void start_visit(Patient& p);
  void e2_issue_pseudonym_token(Patient& p);
  void e3_issue_pseudonym_key(Patient& p);
  void e4_issue_appointment_token(Patient& p);
  std::string e5_book(Patient& p, std::string schedule);
  std::string e5_book(Patient& p, std::string schedule, HealthcareOrganization& ho);
  void e6_verify_in_person(Patient& p, std::span<const double> live);
  PseudonymAccessInfo e7_handoff(Patient& p, std::size_t hp_index = 0);
  std::vector<RecordEntry> e8_access(const PseudonymAccessInfo& pai, AccessType type,
                                     const std::optional<RecordEntry>& entry, std::size_t hp_index = 0);

  // E1 if needed, then E2-E8 with one write and one read. Failures are
  // rethrown as EpisodeError.
  VisitReport run_visit(Patient& p);

  Warrant issue_warrant(ByteView target_pseudonym, std::string scope);
  TraceResult trace_identity(const Warrant& w);

  // Extra professionals, e.g. a read-only one.
  std::size_t add_hp(std::vector<std::string> scope);
  // A registered HO whose L-VC was not issued by the GHA.
  std::unique_ptr<HealthcareOrganization> make_rogue_ho();

  // Audit queries as the Auditor Authority, the administrator, or a
  // patient claiming every pseudonym it has used.
  QueryResult authority_query(std::string filter);
  QueryResult admin_query(std::string filter);
  QueryResult patient_query(Patient& p, std::string filter);

  Context context() const;
  std::unique_ptr<Rng> fork_rng(std::string_view label) const { return root_->fork(label); }

  const WorldConfig& config() const { return config_; }
  SimClock& clock() { return clock_; }
  DidLedger& dids() { return *dids_; }
  AtiLedger& atis() { return *atis_; }
  AuditLedger& audit() { return *audit_; }
  ChannelLog& wire() { return wire_; }
  AgencyForPatientCare& apc() { return *apc_; }
  PseudonymTokenAuthority& pta() { return *pta_; }
  HealthcareOrganization& ho() { return *ho_; }
  HealthcareProfessional& hp(std::size_t i = 0) { return *hps_.at(i); }
  HealthRecordRepository& hrr() { return *hrr_; }
  const AuthorityEntity& gha() const { return *gha_; }
  const AuthorityEntity& auditor_authority() const { return *auditor_authority_; }
  const EntityIdentity& administrator() const { return admin_; }
  const EntityIdentity& auditor() const { return auditor_; }
  std::vector<std::unique_ptr<Patient>>& patients() { return patients_; }

 private:
  struct PartyRngs {
    std::unique_ptr<Rng> patient;
    std::unique_ptr<Rng> entity;
  };
  PartyRngs op_rngs(Patient& p, std::string_view episode);
  std::unique_ptr<Rng> world_rng(std::string_view what);
  EntityIdentity session_identity(Patient& p, Rng& rng);
  SecureChannel connect(const EntityIdentity& a, const EntityIdentity& b, Rng& ra, Rng& rb);
  // The presented L-VC must verify for `role` and name the channel peer.
  void require_lvc(const nlohmann::json& msg, std::string_view role, std::string_view peer_did);
  LegitimacyCredential grant(const EntityIdentity& subject, std::string_view role, std::vector<std::string> scope);
  std::optional<std::filesystem::path> ledger_file(std::string_view name) const;

  WorldConfig config_;
  std::unique_ptr<Rng> root_;
  SimClock clock_;
  std::unique_ptr<DidLedger> dids_;
  std::unique_ptr<AtiLedger> atis_;
  std::unique_ptr<AuditLedger> audit_;
  ChannelLog wire_;

  std::unique_ptr<AuthorityEntity> gha_;
  std::unique_ptr<AuthorityEntity> auditor_authority_;
  EntityIdentity admin_;
  EntityIdentity auditor_;
  std::unique_ptr<AgencyForPatientCare> apc_;
  std::unique_ptr<PseudonymTokenAuthority> pta_;
  std::unique_ptr<HealthcareOrganization> ho_;
  std::vector<std::unique_ptr<HealthcareProfessional>> hps_;
  std::unique_ptr<HealthRecordRepository> hrr_;
  std::unique_ptr<Rng> audit_rng_;
  std::vector<std::unique_ptr<Patient>> patients_;
  std::atomic<std::size_t> world_ops_{0};
  Context base_ctx_;
};

}  // namespace hidm
