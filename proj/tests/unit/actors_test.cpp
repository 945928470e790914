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

#include "hidm/actors/world.hpp"
#include "hidm/common/error.hpp"
#include "test_util.hpp"

namespace hidm {
namespace {

using testing::flip_bit;
using testing::rng_for;

WorldConfig test_config(const std::string& seed) {
  WorldConfig c;
  c.seed = "actors-test/" + seed;
  c.authority_rsa_bits = 2048;
  return c;
}

template <typename F>
Reason reason_of(F&& f) {
  try {
    f();
  } catch (const ProtocolError& e) {
    return e.reason();
  }
  ADD_FAILURE() << "no ProtocolError raised";
  return Reason::kInvalidArgument;
}

// Runs E1 through E4 for a patient.
void prepare(World& w, Patient& p) {
  w.e1_issue_credential(p);
  w.start_visit(p);
  w.e2_issue_pseudonym_token(p);
  w.e3_issue_pseudonym_key(p);
  w.e4_issue_appointment_token(p);
}

bool contains_text(const std::string& haystack, const std::string& needle) {
  return !needle.empty() && haystack.find(needle) != std::string::npos;
}

// ---- channel ---------------------------------------------------------------

TEST(Channel, EstablishSendAndReject) {
  auto rng = rng_for("channel");
  DidLedger dids;
  EntityIdentity a = register_identity(dids, "A", {}, *rng);
  EntityIdentity b = register_identity(dids, "B", {}, *rng);
  ChannelLog log;
  SecureChannel ch = SecureChannel::establish(a.party(), b.party(), dids, *rng, *rng, &log);
  nlohmann::json msg = {{"hello", "world"}};
  EXPECT_EQ(ch.send(SecureChannel::kA, "greeting", msg), msg);
  EXPECT_EQ(ch.send(SecureChannel::kB, "reply", msg), msg);
  auto frames = log.frames();
  ASSERT_GE(frames.size(), 2u);
  EXPECT_EQ(frames.back().label, "reply");
  EXPECT_FALSE(contains_subsequence(log.wire_bytes(), to_bytes("world")));

  Frame f = ch.seal(SecureChannel::kA, "data", to_bytes("payload"));
  Frame tampered = f;
  tampered.sealed = flip_bit(tampered.sealed, 40);
  EXPECT_EQ(reason_of([&] { ch.open(SecureChannel::kB, tampered); }), Reason::kChannelIntegrity);
  EXPECT_EQ(ch.open(SecureChannel::kB, f), to_bytes("payload"));
  EXPECT_EQ(reason_of([&] { ch.open(SecureChannel::kB, f); }), Reason::kChannelReplay);

  EntityIdentity stranger = b;
  stranger.did = "did:hidm:unregistered";
  EXPECT_EQ(reason_of([&] { SecureChannel::establish(a.party(), stranger.party(), dids, *rng, *rng); }),
            Reason::kChannelRefused);
  EntityIdentity wrong_key = register_identity(dids, "C", {}, *rng);
  wrong_key.auth = SchnorrKeypair::generate(SchnorrGroup::standard(), *rng);
  EXPECT_EQ(reason_of([&] { SecureChannel::establish(a.party(), wrong_key.party(), dids, *rng, *rng); }),
            Reason::kChannelRefused);
}

TEST(Channel, RevokedPartyRefused) {
  World w(test_config("revoked"));
  auto rng = rng_for("channel-revoked");
  EntityIdentity x = register_identity(w.dids(), "X", {}, *rng);
  const EntityIdentity& root = w.gha().id;
  w.dids().revoke(x.did, DidProof{root.key_id, schnorr_sign(SchnorrGroup::standard(),
                                                             DidLedger::revocation_message(x.did), root.auth, *rng)});
  EXPECT_EQ(reason_of([&] { SecureChannel::establish(x.party(), w.ho().id.party(), w.dids(), *rng, *rng); }),
            Reason::kChannelRefused);
}

// ---- legitimacy ------------------------------------------------------------

TEST(Legitimacy, VerifyAgainstGha) {
  World w(test_config("lvc"));
  const std::string& gha = w.gha().id.did;
  EXPECT_TRUE(verify_lvc(w.ho().id.lvc, roles::kHo, w.dids(), gha));
  EXPECT_TRUE(verify_lvc(w.pta().id.lvc, roles::kPta, w.dids(), gha));
  EXPECT_TRUE(verify_lvc(w.hp().id.lvc, roles::kHp, w.dids(), gha));
  EXPECT_FALSE(verify_lvc(w.ho().id.lvc, roles::kHp, w.dids(), gha));
  auto rogue = w.make_rogue_ho();
  EXPECT_FALSE(verify_lvc(rogue->id.lvc, roles::kHo, w.dids(), gha));
  LegitimacyCredential widened = w.hp().id.lvc;
  widened.scope.push_back("admin");
  EXPECT_FALSE(verify_lvc(widened, roles::kHp, w.dids(), gha));
}

TEST(Legitimacy, RogueHoRefusedBeforeBooking) {
  World w(test_config("rogue"));
  Patient& p = w.add_patient();
  prepare(w, p);
  auto rogue = w.make_rogue_ho();
  EXPECT_EQ(reason_of([&] { w.e5_book(p, "slot-1", *rogue); }), Reason::kLegitimacyRejected);
  EXPECT_TRUE(rogue->bookings().empty());
  // The AT was not spent and still books at the genuine HO.
  EXPECT_FALSE(w.e5_book(p, "slot-1").empty());
}

// ---- enrollment and issuance -----------------------------------------------

TEST(Episodes, WalletAfterIssuance) {
  World w(test_config("wallet"));
  Patient& p = w.add_patient();
  prepare(w, p);
  Context ctx = w.context();
  ASSERT_TRUE(p.credential && p.visit && p.visit->pt && p.visit->key && p.visit->at);
  EXPECT_TRUE(pcred_verify(*p.credential, ctx.credential_issuer));
  EXPECT_EQ(p.credential->did_patient_l, p.identity.did);
  EXPECT_TRUE(pt_verify(*p.visit->pt, ctx.pta_token_key));
  EXPECT_EQ(p.visit->pt->pseudonym, p.visit->pseudonym.pai.pseudonym);
  EXPECT_TRUE(p.visit->key->check(ctx.ibs_mpk));
  EXPECT_EQ(at_check(*p.visit->at, ctx.now, ctx.apc_token_key), AtStatus::kValid);
  EXPECT_EQ(p.visit->at->exp, ctx.now + w.config().at_validity);
  EXPECT_EQ(w.apc().store.size(), 1u);
  EXPECT_EQ(w.pta().store.size(), 1u);
}

TEST(Episodes, BindingProofFailureAbortsTokenIssuance) {
  World w(test_config("pbp-abort"));
  Patient& p = w.add_patient();
  w.e1_issue_credential(p);
  w.start_visit(p);
  p.visit->pseudonym.r = p.visit->pseudonym.r + Scalar::from_u64(1);
  EXPECT_EQ(reason_of([&] { w.e2_issue_pseudonym_token(p); }), Reason::kPseudonymBindingRejected);
  EXPECT_FALSE(p.visit->pt);
  EXPECT_EQ(w.pta().store.size(), 0u);
}

TEST(Episodes, BookingReplayRejected) {
  World w(test_config("replay"));
  Patient& p = w.add_patient();
  prepare(w, p);
  w.e5_book(p, "slot-1");
  EXPECT_EQ(reason_of([&] { w.e5_book(p, "slot-2"); }), Reason::kReplayRejected);
  EXPECT_EQ(w.ho().bookings().size(), 1u);
}

TEST(Episodes, BookingScheduleBoundToSignature) {
  World w(test_config("schedule"));
  Patient& p = w.add_patient();
  prepare(w, p);
  auto rng = rng_for("schedule-forge");
  const PatientVisit& v = *p.visit;
  IbsSignature sig = ibs_sign(booking_message(v.pseudonym.pai, *v.at, "slot-1"), *v.key, *rng);
  nlohmann::json req = {{"pai", to_json(v.pseudonym.pai)},
                        {"at", to_json(*v.at)},
                        {"schedule", "slot-2"},
                        {"sig", to_hex(sig.to_bytes())}};
  Context ctx = w.context();
  EXPECT_EQ(reason_of([&] { w.ho().handle_booking(req, ctx, *rng); }), Reason::kRequesterNotBound);
  req["schedule"] = "slot-1";
  AppointmentToken later = *v.at;
  later.exp += 1;
  req["at"] = to_json(later);
  EXPECT_EQ(reason_of([&] { w.ho().handle_booking(req, ctx, *rng); }), Reason::kRequesterNotBound);
  EXPECT_FALSE(w.atis().contains(v.at->ati));
}

TEST(Episodes, ExpiredTokenRejected) {
  World w(test_config("expired"));
  Patient& p = w.add_patient();
  prepare(w, p);
  w.clock().set(p.visit->at->exp + w.config().clock_skew + 1);
  EXPECT_EQ(reason_of([&] { w.e5_book(p, "slot-1"); }), Reason::kTokenExpired);
}

TEST(Episodes, InPersonChecks) {
  World w(test_config("in-person"));
  Patient& p = w.add_patient();
  prepare(w, p);
  w.e5_book(p, "slot-1");
  auto rng = rng_for("impostor");
  std::vector<double> impostor = synthetic_features(*rng);
  EXPECT_EQ(reason_of([&] { w.e6_verify_in_person(p, impostor); }), Reason::kBiometricMismatch);

  PseudonymToken genuine = *p.visit->pt;
  SchnorrKeypair other = SchnorrKeypair::generate(SchnorrGroup::standard(), *rng);
  p.visit->pt->sig = schnorr_sign(SchnorrGroup::standard(), genuine.signed_message(), other, *rng);
  EXPECT_EQ(reason_of([&] { w.e6_verify_in_person(p, p.features); }), Reason::kPseudonymTokenInvalid);
  p.visit->pt = genuine;

  std::string code = p.visit->confirmation_code;
  p.visit->confirmation_code = "0000000000000000";
  EXPECT_NE(reason_of([&] { w.e6_verify_in_person(p, p.features); }), Reason::kBiometricMismatch);
  p.visit->confirmation_code = code;

  w.e6_verify_in_person(p, noisy_sample(p.features, 0.05, *rng));
  ASSERT_EQ(w.ho().bookings().size(), 1u);
  EXPECT_TRUE(w.ho().bookings()[0].admitted);
}

TEST(Episodes, HandoffNeedsAdmission) {
  World w(test_config("handoff"));
  Patient& p = w.add_patient();
  prepare(w, p);
  w.e5_book(p, "slot-1");
  EXPECT_EQ(reason_of([&] { w.e7_handoff(p); }), Reason::kConfirmationCodeInvalid);
  w.e6_verify_in_person(p, p.features);
  PseudonymAccessInfo pai = w.e7_handoff(p);
  EXPECT_EQ(pai, p.visit->pseudonym.pai);
}

// ---- record access ---------------------------------------------------------

TEST(Access, LongitudinalContinuity) {
  World w(test_config("continuity"));
  Patient& p = w.add_patient();
  VisitReport first = w.run_visit(p);
  VisitReport second = w.run_visit(p);
  EXPECT_NE(first.pseudonym, second.pseudonym);
  ASSERT_EQ(second.read.size(), 2u);
  EXPECT_EQ(second.read[0], first.written);
  EXPECT_EQ(second.read[1], second.written);
  EXPECT_EQ(w.hrr().records_for(p.credential->patient_id).size(), 2u);
}

TEST(Access, CrossPatientReferenceRejected) {
  World w(test_config("cross"));
  Patient& a = w.add_patient();
  Patient& b = w.add_patient();
  w.run_visit(a);
  w.run_visit(b);
  PseudonymAccessInfo mixed = *a.visit->hp_view;
  mixed.ct = b.visit->hp_view->ct;
  EXPECT_EQ(reason_of([&] { w.e8_access(mixed, AccessType::kRead, std::nullopt); }), Reason::kRecordReferenceInvalid);
  PseudonymAccessInfo bad_rk = *a.visit->hp_view;
  bad_rk.rk = bad_rk.rk + G1::generator();
  EXPECT_THROW(w.e8_access(bad_rk, AccessType::kRead, std::nullopt), ProtocolError);
}

TEST(Access, ReadOnlyProfessionalCannotWrite) {
  World w(test_config("read-only"));
  std::size_t reader = w.add_hp({"read"});
  Patient& p = w.add_patient();
  w.run_visit(p);
  PseudonymAccessInfo pai = *p.visit->hp_view;
  RecordEntry entry{0, "", "Note", "unauthorised"};
  EXPECT_EQ(reason_of([&] { w.e8_access(pai, AccessType::kWrite, entry, reader); }),
            Reason::kInsufficientAuthorization);
  EXPECT_EQ(w.e8_access(pai, AccessType::kRead, std::nullopt, reader).size(), 1u);
  EXPECT_EQ(w.hrr().records_for(p.credential->patient_id).size(), 1u);
}

// ---- tracing and separation of duties ---------------------------------------

TEST(Trace, WarrantRequired) {
  World w(test_config("trace"));
  Patient& p = w.add_patient();
  w.run_visit(p);
  Bytes pseudonym = p.visit->pseudonym_bytes();
  Warrant warrant = w.issue_warrant(pseudonym, "incident-42");
  TraceResult t = w.trace_identity(warrant);
  EXPECT_EQ(t.patient_id, p.credential->patient_id);
  EXPECT_EQ(t.pii, p.pii);
  auto disclosures = w.authority_query("eventType=IdentityDisclosure");
  ASSERT_FALSE(disclosures.auth_error) << disclosures.error;
  EXPECT_EQ(disclosures.records.size(), 2u);

  Warrant widened = warrant;
  widened.scope = "everything";
  EXPECT_EQ(reason_of([&] { w.trace_identity(widened); }), Reason::kTraceRefused);
  Warrant retargeted = warrant;
  retargeted.target_pseudonym = flip_bit(retargeted.target_pseudonym, 9);
  EXPECT_EQ(reason_of([&] { w.trace_identity(retargeted); }), Reason::kTraceRefused);
  Context ctx = w.context();
  EXPECT_EQ(reason_of([&] { w.apc().reveal_pii(widened, t.patient_id, ctx); }), Reason::kTraceRefused);
  EXPECT_EQ(w.authority_query("eventType=IdentityDisclosure").records.size(), 2u);
}

TEST(Separation, StoresHoldOnlyTheirOwnData) {
  World w(test_config("stores"));
  for (int i = 0; i < 2; ++i) w.add_patient();
  for (auto& p : w.patients()) {
    w.run_visit(*p);
    w.run_visit(*p);
  }
  std::string apc = w.apc().store.serialize();
  std::string pta = w.pta().store.serialize();
  std::string ho = w.ho().state().dump();
  std::string hrr = w.hrr().serialize();
  for (auto& p : w.patients()) {
    std::string id = to_hex(p->credential->patient_id);
    for (const std::string& pii : {p->pii.full_name, p->pii.national_id, p->pii.address}) {
      EXPECT_TRUE(contains_text(apc, pii));
      EXPECT_FALSE(contains_text(pta, pii));
      EXPECT_FALSE(contains_text(ho, pii));
      EXPECT_FALSE(contains_text(hrr, pii));
    }
    EXPECT_FALSE(contains_text(ho, id));
    EXPECT_TRUE(contains_text(pta, id));
    std::vector<const PatientVisit*> visits;
    for (const auto& v : p->history) visits.push_back(&v);
    visits.push_back(&*p->visit);
    for (const PatientVisit* v : visits) {
      std::string ps = to_hex(v->pseudonym_bytes());
      EXPECT_FALSE(contains_text(apc, ps));
      EXPECT_FALSE(contains_text(hrr, ps));
      EXPECT_TRUE(contains_text(ho, ps));
      EXPECT_FALSE(contains_text(ho, to_hex(v->pt->pti)));
    }
  }
}

TEST(Unlinkability, HoStateAcrossVisits) {
  World w(test_config("unlinkable"));
  Patient& p = w.add_patient();
  w.run_visit(p);
  w.run_visit(p);
  auto rows = w.ho().state().at("bookings");
  ASSERT_EQ(rows.size(), 2u);
  for (const char* key : {"pseudonym", "rk", "ct", "ati", "confirmationCode"}) {
    EXPECT_NE(rows[0][key], rows[1][key]) << key;
  }
  // The pseudonym key component differs as well, so no field of one row
  // appears inside the other.
  std::string b = rows[1].dump();
  for (const char* key : {"pseudonym", "rk", "ct"}) {
    std::string va = rows[0][key].get<std::string>();
    for (std::size_t off = 0; off + 64 <= va.size(); off += 64) {
      EXPECT_FALSE(contains_text(b, va.substr(off, 64))) << key << " " << off;
    }
  }
}

TEST(Unlinkability, DisabledRotationLinksVisits) {
  WorldConfig c = test_config("linked");
  c.rotate_pseudonyms = false;
  World w(c);
  Patient& p = w.add_patient();
  w.run_visit(p);
  VisitReport second = w.run_visit(p);
  auto rows = w.ho().state().at("bookings");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0]["pseudonym"], rows[1]["pseudonym"]);
  EXPECT_EQ(second.read.size(), 2u);
}

// ---- audit tiers -----------------------------------------------------------

TEST(Audit, TiersAndPatientView) {
  World w(test_config("audit"));
  Patient& a = w.add_patient();
  Patient& b = w.add_patient();
  w.run_visit(a);
  w.run_visit(a);
  w.run_visit(b);

  QueryResult authority = w.authority_query("");
  ASSERT_FALSE(authority.auth_error) << authority.error;
  EXPECT_EQ(authority.tier, AccessLevel::kAuditorAuthorityAccessible);
  for (const auto& r : authority.records) EXPECT_EQ(r.access_level, AccessLevel::kAuditorAuthorityAccessible);

  QueryResult mine = w.patient_query(a, "");
  ASSERT_FALSE(mine.auth_error) << mine.error;
  EXPECT_EQ(mine.tier, AccessLevel::kPatientAccessible);
  std::set<std::string> own;
  for (const auto& v : a.history) own.insert(patient_identifier_for_pseudonym(v.pseudonym_bytes()));
  own.insert(patient_identifier_for_pseudonym(a.visit->pseudonym_bytes()));
  EXPECT_FALSE(mine.records.empty());
  for (const auto& r : mine.records) {
    EXPECT_EQ(r.access_level, AccessLevel::kPatientAccessible);
    EXPECT_TRUE(own.count(r.patient_identifier)) << r.patient_identifier;
  }
  auto reads = w.patient_query(a, "eventType=HealthRecordRead");
  EXPECT_EQ(reads.records.size(), 2u);

  QueryResult admin = w.admin_query("");
  ASSERT_FALSE(admin.auth_error) << admin.error;
  EXPECT_EQ(admin.tier, AccessLevel::kAdministrator);
  // Every query above, including this one, is itself on the admin chain.
  EXPECT_GE(admin.records.size(), 3u);
  for (const auto& r : admin.records) EXPECT_EQ(r.event_type, events::kLedgerQuery);
  EXPECT_TRUE(w.audit().chain().verify());
  EXPECT_TRUE(w.audit().admin_chain().verify());
}

// ---- determinism -----------------------------------------------------------

TEST(Determinism, SameSeedSameTranscript) {
  auto run = [](const std::string& seed) {
    World w(test_config(seed));
    Patient& p = w.add_patient();
    w.run_visit(p);
    return std::make_pair(w.wire().wire_bytes(), w.audit().chain().head());
  };
  auto a = run("determinism");
  auto b = run("determinism");
  auto c = run("determinism-other");
  EXPECT_EQ(a, b);
  EXPECT_NE(a.first, c.first);
}

}  // namespace
}  // namespace hidm
