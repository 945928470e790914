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

#include <set>

#include "hidm/common/error.hpp"
#include "hidm/credentials/artifacts.hpp"
#include "hidm/credentials/biohash.hpp"
#include "hidm/credentials/issuance.hpp"
#include "hidm/credentials/stores.hpp"
#include "hidm/pre/pre.hpp"
#include "test_util.hpp"

namespace hidm {
namespace {

using testing::flip_bit;
using testing::rng_for;

constexpr std::int64_t kNow = 1767312000;

PiiBundle sample_pii(int n = 0) {
  return PiiBundle{"Patient " + std::to_string(n), "1980-02-1" + std::to_string(n % 10), "NID-" + std::to_string(n),
                   std::to_string(n) + " Main Street", true};
}

struct CountingSink : AuditSink {
  std::vector<AuditEvent> events;
  std::uint64_t log(const AuditEvent& e) override {
    events.push_back(e);
    return events.size();
  }
};

class CredentialTest : public ::testing::Test {
 protected:
  std::unique_ptr<Rng> rng = rng_for("credentials");
  ClKeypair apc_cl = ClKeypair::generate(ClVariant::kPairing, kPcredSlotCount, *rng);
  SchnorrKeypair apc_token = SchnorrKeypair::generate(SchnorrGroup::standard(), *rng);
  SchnorrKeypair pta_key = SchnorrKeypair::generate(SchnorrGroup::standard(), *rng);
  ApcStore apc_store;
  PtaStore pta_store;
  CountingSink sink;
  PcredIssuer issuer{"did:hidm:apc", apc_cl, apc_store, &sink, nullptr};
  BioHash biohash = biohash_enroll(synthetic_features(*rng), BioHashParams::standard());

  PatientCredential issue(int n = 0) { return pcred_issue(sample_pii(n), "did:hidm:patient", biohash, issuer, kNow, *rng); }
};

TEST_F(CredentialTest, IssueVerifyAndAudit) {
  PatientCredential c = issue();
  EXPECT_TRUE(pcred_verify(c, apc_cl.pub));
  EXPECT_EQ(c.patient_id.size(), kPatientIdSize);
  EXPECT_EQ(c.issue_date, kNow);
  ASSERT_EQ(sink.events.size(), 1u);
  EXPECT_EQ(sink.events[0].event_type, events::kPatientCredentialIssuance);
  EXPECT_EQ(sink.events[0].patient_identifier, patient_identifier_for_id(c.patient_id));
  EXPECT_EQ(apc_store.lookup(c.patient_id), sample_pii());
}

TEST_F(CredentialTest, ReEnrollmentKeepsPatientId) {
  PatientCredential a = issue(1);
  PatientCredential b = issue(1);
  PatientCredential other = issue(2);
  EXPECT_EQ(a.patient_id, b.patient_id);
  EXPECT_NE(a.credential_id, b.credential_id);
  EXPECT_NE(a.patient_id, other.patient_id);
  EXPECT_EQ(apc_store.size(), 2u);
}

TEST_F(CredentialTest, IdentityProofingFailure) {
  PiiBundle bad = sample_pii();
  bad.document_valid = false;
  EXPECT_THROW(pcred_issue(bad, "did:x", biohash, issuer, kNow, *rng), ProtocolError);
  bad = sample_pii();
  bad.date_of_birth = "1 Jan 1980";
  EXPECT_THROW(pcred_issue(bad, "did:x", biohash, issuer, kNow, *rng), ProtocolError);
  EXPECT_EQ(apc_store.size(), 0u);
}

TEST_F(CredentialTest, JsonRoundTripAndSchemaFuzz) {
  PatientCredential c = issue();
  nlohmann::json j = to_json(c);
  PatientCredential back = pcred_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back, c);
  EXPECT_TRUE(pcred_verify(back, apc_cl.pub));
  for (const auto& [key, _] : j.items()) {
    nlohmann::json missing = j;
    missing.erase(key);
    EXPECT_THROW(pcred_from_json(missing), DecodeError) << key;
  }
  std::vector<Bytes> slots = c.slots();
  ASSERT_EQ(slots.size(), static_cast<std::size_t>(kPcredSlotCount));
  std::swap(slots[kSlotPatientId], slots[kSlotBioHash]);
  EXPECT_FALSE(cl_verify(slots, c.sig, apc_cl.pub));
  slots = c.slots();
  slots.pop_back();
  EXPECT_FALSE(cl_verify(slots, c.sig, apc_cl.pub));
  PatientCredential shifted = c;
  shifted.issue_date += 1;
  EXPECT_FALSE(pcred_verify(shifted, apc_cl.pub));
}

TEST_F(CredentialTest, PseudonymTokenIssuance) {
  PatientCredential c = issue();
  PrePatientKeys keys = PrePatientKeys::generate(*rng);
  PreHrrKeys hrr = PreHrrKeys::generate(*rng);
  GeneratedPseudonym g = pseudonym_generate(c.patient_id, keys, hrr.pk, *rng);
  Bytes ctx = pok_context("E3", "did:hidm:pta", rng->bytes(16));
  ClProof pok = pok_pcred_prove(c, apc_cl.pub, {kSlotPatientId}, ctx, *rng);
  PbProof pbp = pbp_prove(g.pai.pseudonym, g.r, g.h, *rng);
  PtIssuer pta{"did:hidm:pta", pta_key, apc_cl.pub, pta_store, &sink};

  PseudonymToken pt = pt_issue(c.patient_id, pok, ctx, g.pai.pseudonym, pbp, pta, kNow, *rng);
  EXPECT_TRUE(pt_verify(pt, pta_key.y));
  EXPECT_FALSE(pt_verify(pt, apc_token.y));
  EXPECT_EQ(pt_from_json(to_json(pt)), pt);
  auto rec = pta_store.find_by_pseudonym(g.pai.pseudonym.to_bytes());
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->patient_id, c.patient_id);
  EXPECT_EQ(sink.events.back().patient_identifier, patient_identifier_for_pseudonym(g.pai.pseudonym.to_bytes()));

  // Binding proof for another PatientID.
  Bytes other_id(kPatientIdSize, 0x5a);
  GeneratedPseudonym wrong = pseudonym_generate(other_id, keys, hrr.pk, *rng);
  PbProof wrong_pbp = pbp_prove(wrong.pai.pseudonym, wrong.r, wrong.h, *rng);
  try {
    pt_issue(c.patient_id, pok, ctx, wrong.pai.pseudonym, wrong_pbp, pta, kNow, *rng);
    FAIL() << "binding for a different PatientID accepted";
  } catch (const ProtocolError& e) {
    EXPECT_EQ(e.reason(), Reason::kPseudonymBindingRejected);
  }
  // Proof bound to another context.
  try {
    pt_issue(c.patient_id, pok, pok_context("E3", "did:hidm:pta", rng->bytes(16)), g.pai.pseudonym, pbp, pta, kNow,
             *rng);
    FAIL() << "proof replayed under a new context";
  } catch (const ProtocolError& e) {
    EXPECT_EQ(e.reason(), Reason::kCredentialProofRejected);
  }
  EXPECT_EQ(pta_store.size(), 1u);
}

TEST_F(CredentialTest, PtaStoreHoldsNoPii) {
  const std::set<std::string> pii_columns(ApcStore::columns().begin(), ApcStore::columns().end());
  for (const std::string& col : PtaStore::columns()) {
    if (col == "patientId") continue;
    EXPECT_FALSE(pii_columns.count(col)) << col;
  }
  for (const char* col : {"fullName", "dateOfBirth", "nationalId", "address", "fingerprint"}) {
    EXPECT_EQ(std::count(PtaStore::columns().begin(), PtaStore::columns().end(), col), 0) << col;
  }
}

TEST_F(CredentialTest, AppointmentTokenIssuance) {
  PatientCredential c = issue();
  Bytes ctx = pok_context("E4", "did:hidm:apc", rng->bytes(16));
  ClProof pok = pok_pcred_prove(c, apc_cl.pub, {kSlotPatientId}, ctx, *rng);
  AtIssueResult r = at_issue(pok, ctx, apc_cl.pub, apc_token, kNow, kDefaultAtValidity, &sink, *rng, *rng);
  EXPECT_EQ(r.at.exp, kNow + kDefaultAtValidity);
  EXPECT_EQ(at_check(r.at, kNow, apc_token.y), AtStatus::kValid);
  EXPECT_EQ(at_from_json(to_json(r.at)), r.at);
  EXPECT_EQ(sink.events.back().event_type, events::kAppointmentTokenIssuance);
  std::string log = r.issuance_log.dump();
  std::string audit_details = nlohmann::json(sink.events.back().details).dump();
  EXPECT_FALSE(r.issuance_log.contains("ati"));
  EXPECT_EQ(log.find(to_hex(r.at.ati)), std::string::npos);
  EXPECT_EQ(audit_details.find(to_hex(r.at.ati)), std::string::npos);
  EXPECT_NE(r.signer_view.blinded_response, r.at.sig.s);

  ClProof hidden = pok_pcred_prove(c, apc_cl.pub, {}, ctx, *rng);
  std::size_t before = sink.events.size();
  EXPECT_THROW(at_issue(hidden, ctx, apc_cl.pub, apc_token, kNow, kDefaultAtValidity, &sink, *rng, *rng),
               ProtocolError);
  EXPECT_EQ(sink.events.size(), before);
}

TEST_F(CredentialTest, AtiUniqueness) {
  PatientCredential c = issue();
  Bytes ctx = pok_context("E4", "did:hidm:apc", rng->bytes(16));
  ClProof pok = pok_pcred_prove(c, apc_cl.pub, {kSlotPatientId}, ctx, *rng);
  std::set<Id16> atis;
  for (int i = 0; i < 1000; ++i) {
    atis.insert(at_issue(pok, ctx, apc_cl.pub, apc_token, kNow, kDefaultAtValidity, nullptr, *rng, *rng).at.ati);
  }
  EXPECT_EQ(atis.size(), 1000u);
}

TEST_F(CredentialTest, AtCheckBoundariesAndMutation) {
  PatientCredential c = issue();
  Bytes ctx = pok_context("E4", "did:hidm:apc", rng->bytes(16));
  ClProof pok = pok_pcred_prove(c, apc_cl.pub, {kSlotPatientId}, ctx, *rng);
  AppointmentToken at = at_issue(pok, ctx, apc_cl.pub, apc_token, kNow, 3600, nullptr, *rng, *rng).at;
  EXPECT_EQ(at_check(at, at.exp, apc_token.y, 0), AtStatus::kValid);
  EXPECT_EQ(at_check(at, at.exp + 1, apc_token.y, 0), AtStatus::kExpired);
  EXPECT_EQ(at_check(at, at.exp - 1, apc_token.y), AtStatus::kValid);
  EXPECT_EQ(at_check(at, at.exp + kDefaultClockSkew, apc_token.y), AtStatus::kValid);
  EXPECT_EQ(at_check(at, at.exp + kDefaultClockSkew + 1, apc_token.y), AtStatus::kExpired);
  EXPECT_EQ(at_status_name(AtStatus::kBadSignature), "bad-signature");

  AppointmentToken later = at;
  later.exp += 3600;
  EXPECT_EQ(at_check(later, kNow, apc_token.y), AtStatus::kBadSignature);
  const SchnorrGroup& g = SchnorrGroup::standard();
  for (int i = 0; i < 200; ++i) {
    AppointmentToken m = at;
    Bytes sig = flip_bit(m.sig.to_bytes(g), rng->next_u64() % (m.sig.to_bytes(g).size() * 8));
    try {
      m.sig = PartiallyBlindSig::from_bytes(g, sig);
    } catch (const DecodeError&) {
      continue;
    }
    ASSERT_EQ(at_check(m, kNow, apc_token.y), AtStatus::kBadSignature);
  }
  for (int i = 0; i < 16; ++i) {
    AppointmentToken m = at;
    m.ati[i] ^= 0x01;
    ASSERT_EQ(at_check(m, kNow, apc_token.y), AtStatus::kBadSignature);
  }
}

TEST(Lvc, IssueVerify) {
  auto rng = rng_for("lvc");
  RsaKeypair gha = RsaKeypair::generate(2048, *rng);
  LegitimacyCredential l = lvc_issue("did:hidm:ho", std::string(roles::kHo), {"booking"}, "did:hidm:gha", kNow, gha);
  EXPECT_TRUE(lvc_verify(l, gha.pub, roles::kHo));
  EXPECT_FALSE(lvc_verify(l, gha.pub, roles::kPta));
  EXPECT_TRUE(l.has_scope("booking"));
  EXPECT_FALSE(l.has_scope("write"));
  EXPECT_EQ(lvc_from_json(to_json(l)), l);
  LegitimacyCredential widened = l;
  widened.scope.push_back("write");
  EXPECT_FALSE(lvc_verify(widened, gha.pub, roles::kHo));
  EXPECT_FALSE(lvc_verify(l, RsaKeypair::generate(2048, *rng).pub, roles::kHo));
}

// ---- biometric hash --------------------------------------------------------

TEST(BioHash, DeterministicAndSignSymmetric) {
  auto rng = rng_for("biohash");
  const BioHashParams& p = BioHashParams::standard();
  auto f = synthetic_features(*rng);
  BioHash a = biohash_enroll(f, p);
  EXPECT_EQ(a, biohash_enroll(f, p));
  EXPECT_TRUE(biohash_match(a, f, p));
  std::vector<double> neg(f.size());
  std::transform(f.begin(), f.end(), neg.begin(), [](double v) { return -v; });
  BioHash n = biohash_enroll(neg, p);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(n[i], static_cast<std::uint8_t>(~a[i])) << i;
  EXPECT_EQ(hamming_distance(a, n), BioHashParams::kBits);
  std::vector<double> short_features(f.begin(), f.end() - 1);
  EXPECT_THROW(biohash_enroll(short_features, p), std::invalid_argument);
  EXPECT_EQ(BioHashParams(7).hyperplanes(), BioHashParams(7).hyperplanes());
  EXPECT_NE(BioHashParams(7).hyperplanes(), BioHashParams(8).hyperplanes());
}

TEST(BioHash, GenuineNoiseAccepted) {
  auto rng = rng_for("biohash-genuine");
  const BioHashParams& p = BioHashParams::standard();
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) {
    auto f = synthetic_features(*rng);
    accepted += biohash_match(biohash_enroll(f, p), noisy_sample(f, 0.05, *rng), p);
  }
  EXPECT_GE(accepted, 990);
}

TEST(BioHash, ImpostorsRejected) {
  auto rng = rng_for("biohash-impostor");
  const BioHashParams& p = BioHashParams::standard();
  int accepted = 0;
  for (int i = 0; i < 10000; ++i) {
    accepted += biohash_match(biohash_enroll(synthetic_features(*rng), p), synthetic_features(*rng), p);
  }
  EXPECT_LE(accepted, 10);
}

}  // namespace
}  // namespace hidm
