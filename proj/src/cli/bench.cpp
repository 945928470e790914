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

#include "hidm/cli/bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "hidm/actors/entities.hpp"
#include "hidm/algebra/schnorr_group.hpp"
#include "hidm/credentials/issuance.hpp"

namespace hidm {

using nlohmann::json;

std::string_view bench_scheme_name(BenchScheme s) {
  switch (s) {
    case BenchScheme::kRsa:
      return "RSA";
    case BenchScheme::kClRsa:
      return "CL-RSA";
    case BenchScheme::kClPairing:
      return "CL-pairing";
  }
  return "?";
}

std::optional<BenchScheme> parse_bench_scheme(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  if (n == "rsa") return BenchScheme::kRsa;
  if (n == "cl-rsa") return BenchScheme::kClRsa;
  if (n == "cl-pairing" || n == "cl-bilinear") return BenchScheme::kClPairing;
  return std::nullopt;
}

std::string_view bench_scenario_name(BenchScenario s) {
  switch (s) {
    case BenchScenario::kCredential:
      return "credential";
    case BenchScenario::kPseudonymToken:
      return "pseudonym-token";
    case BenchScenario::kPseudonymKey:
      return "pseudonym-key";
    case BenchScenario::kAppointmentToken:
      return "appointment-token";
    case BenchScenario::kBooking:
      return "booking";
    case BenchScenario::kInPerson:
      return "in-person";
  }
  return "?";
}

const std::vector<BenchScenario>& all_bench_scenarios() {
  static const std::vector<BenchScenario> all = {BenchScenario::kCredential,       BenchScenario::kPseudonymToken,
                                                 BenchScenario::kPseudonymKey,     BenchScenario::kAppointmentToken,
                                                 BenchScenario::kBooking,          BenchScenario::kInPerson};
  return all;
}

std::optional<BenchScenario> parse_bench_scenario(std::string_view name) {
  for (BenchScenario s : all_bench_scenarios()) {
    if (name == bench_scenario_name(s) || name == std::to_string(static_cast<int>(s))) return s;
  }
  return std::nullopt;
}

bool bench_pair_valid(BenchScheme scheme, BenchScenario scenario) {
  return scheme != BenchScheme::kRsa || scenario == BenchScenario::kCredential;
}

double trimmed_mean(std::vector<double> samples) {
  if (samples.size() < 3) throw std::invalid_argument("trimmed mean needs at least three samples");
  std::sort(samples.begin(), samples.end());
  double sum = std::accumulate(samples.begin() + 1, samples.end() - 1, 0.0);
  return sum / static_cast<double>(samples.size() - 2);
}

json BenchRow::to_json() const {
  auto opt = [](const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); };
  return {{"scheme", bench_scheme_name(scheme)},
          {"scenario", bench_scenario_name(scenario)},
          {"payloadPreSignatureBytes", opt(pre_signature_bytes)},
          {"fullRequestBytes", opt(full_request_bytes)},
          {"responseBytes", response_bytes},
          {"signatureBytes", signature_bytes},
          {"avgTimeMs", avg_ms},
          {"samplesMs", samples_ms},
          {"runs", samples_ms.size()},
          {"averaged", samples_ms.size() - 2}};
}

json bench_report(const std::vector<BenchRow>& rows) {
  json out = {{"schema", kSchemaVersion},
              {"methodology", {{"runs", kBenchRuns}, {"dropped", "max and min"}, {"averaged", kBenchTrimmed}}},
              {"rows", json::array()}};
  for (const auto& r : rows) out["rows"].push_back(r.to_json());
  return out;
}

namespace {

std::size_t json_size(const json& j) { return j.dump().size(); }

// Keys and one enrolled patient, prepared outside the timed region.
struct Fixture {
  const SchnorrGroup& group = SchnorrGroup::standard();
  std::unique_ptr<Rng> rng = make_rng(std::string("hidm-bench"));
  ClVariant variant;
  ClKeypair cl;
  SchnorrKeypair apc_token;
  SchnorrKeypair pta_token;
  IbsMasterKey ibs;
  PreHrrKeys hrr;
  ApcStore apc_store;
  PtaStore pta_store;
  PiiBundle pii{"Ada Example", "1980-04-12", "NID-0000000001", "1 Harbour Road", true};
  std::string patient_did = "did:hidm:patient:000000000000000000000001";
  std::string apc_did = "did:hidm:apc:000000000000000000000001";
  std::string pta_did = "did:hidm:pta:000000000000000000000001";
  std::string ho_did = "did:hidm:ho:000000000000000000000001";
  std::vector<double> features;
  BioHash biohash{};
  PatientCredential cred;
  GeneratedPseudonym pseudonym;
  PseudonymToken pt;
  IbsUserKey user_key;
  AppointmentToken at;
  std::int64_t now = 1767225600;

  explicit Fixture(ClVariant v)
      : variant(v),
        cl(ClKeypair::generate(v, kPcredSlotCount, *rng)),
        apc_token(SchnorrKeypair::generate(group, *rng)),
        pta_token(SchnorrKeypair::generate(group, *rng)),
        ibs(IbsMasterKey::generate(*rng)),
        hrr(PreHrrKeys::generate(*rng)) {
    features = synthetic_features(*rng);
    biohash = biohash_enroll(features, BioHashParams::standard());
    cred = pcred_issue(pii, patient_did, biohash, PcredIssuer{apc_did, cl, apc_store}, now, *rng);
    PrePatientKeys keys = PrePatientKeys::generate(*rng);
    pseudonym = pseudonym_generate(cred.patient_id, keys, hrr.pk, *rng);
    Bytes id = pseudonym.pai.pseudonym.to_bytes();
    pt.pti = rng->id16();
    pt.pseudonym = pseudonym.pai.pseudonym;
    pt.sig = schnorr_sign(group, pt.signed_message(), pta_token, *rng);
    user_key = ibs_extract(id, ibs);
    Id16 ati = rng->uuid_v4();
    auto issued = pbs_issue(group, now + kDefaultAtValidity, ati, apc_token, *rng, *rng);
    at = AppointmentToken{ati, now + kDefaultAtValidity, issued.sig};
  }

  ClProof prove(std::size_t slot, ByteView ctx) { return pok_pcred_prove(cred, cl.pub, {slot}, ctx, *rng); }
  void check(const ClProof& pok, ByteView ctx) {
    if (!pok_pcred_verify(pok, cl.pub, ctx)) throw std::runtime_error("benchmark proof rejected");
  }
};

template <typename T>
void keep(const T& v) {
  asm volatile("" : : "g"(&v) : "memory");
}

}  // namespace

BenchRow run_bench(BenchScheme scheme, BenchScenario scenario, std::size_t runs) {
  if (!bench_pair_valid(scheme, scenario)) {
    throw std::invalid_argument("RSA is benchmarked only for credential issuance");
  }
  if (runs < 3) throw std::invalid_argument("at least three runs are needed");
  BenchRow row;
  row.scheme = scheme;
  row.scenario = scenario;

  ClVariant variant = scheme == BenchScheme::kClRsa ? ClVariant::kRsa : ClVariant::kPairing;
  Fixture f(variant);
  Rng& rng = *f.rng;
  const Bytes ctx = pok_context("bench", f.apc_did, Bytes(16, 0x42));
  std::optional<RsaKeypair> rsa;
  if (scheme == BenchScheme::kRsa) rsa = RsaKeypair::generate(3072, rng);

  std::function<void()> op;
  switch (scenario) {
    case BenchScenario::kCredential: {
      PatientCredential sample = f.cred;
      std::size_t pre = 0;
      for (const auto& s : sample.slots()) pre += s.size();
      row.pre_signature_bytes = pre;
      json request = {{"pii", f.pii.to_json()}, {"did", f.patient_did}, {"biohash", to_hex(f.biohash)}};
      if (rsa) {
        Bytes msg;
        for (const auto& s : sample.slots()) msg = std::move(FieldWriter().field(msg).field(s)).bytes();
        Bytes sig = rsa_sign(msg, *rsa);
        json resp = to_json(sample);
        resp["signature"] = to_hex(sig);
        resp["clVariant"] = nullptr;
        row.response_bytes = json_size({{"credential", resp}});
        row.signature_bytes = sig.size();
        op = [&, msg] {
          Bytes s = rsa_sign(msg, *rsa);
          if (!rsa_verify(msg, s, rsa->pub)) throw std::runtime_error("rsa self-check failed");
        };
      } else {
        row.full_request_bytes = json_size(request);
        row.response_bytes = json_size({{"credential", to_json(sample)}});
        row.signature_bytes = sample.sig.payload_size();
        op = [&] {
          PatientCredential c = pcred_issue(f.pii, f.patient_did, f.biohash, PcredIssuer{f.apc_did, f.cl, f.apc_store},
                                            f.now, rng);
          if (!pcred_verify(c, f.cl.pub)) throw std::runtime_error("credential self-check failed");
        };
      }
      break;
    }
    case BenchScenario::kPseudonymToken: {
      ClProof pok = f.prove(kSlotPatientId, ctx);
      PbProof pbp = pbp_prove(f.pseudonym.pai.pseudonym, f.pseudonym.r, f.pseudonym.h, rng);
      row.full_request_bytes = json_size({{"patientId", to_hex(f.cred.patient_id)},
                                          {"pok", to_json(pok)},
                                          {"pseudonym", to_json(f.pseudonym.pai.pseudonym)},
                                          {"pbp", to_json(pbp)}});
      row.response_bytes = json_size({{"token", to_json(f.pt)}});
      row.signature_bytes = f.pt.sig.to_bytes(f.group).size();
      op = [&] {
        ClProof p = f.prove(kSlotPatientId, ctx);
        f.check(p, ctx);
        PseudonymToken t{rng.id16(), f.pseudonym.pai.pseudonym, {}};
        t.sig = schnorr_sign(f.group, t.signed_message(), f.pta_token, rng);
        if (!pt_verify(t, f.pta_token.y)) throw std::runtime_error("token self-check failed");
      };
      break;
    }
    case BenchScenario::kPseudonymKey: {
      ClProof pok = f.prove(kSlotPatientId, ctx);
      Bytes id = f.pseudonym.pai.pseudonym.to_bytes();
      IbsBlindRequest req(id, rng);
      row.full_request_bytes = json_size({{"patientId", to_hex(f.cred.patient_id)},
                                          {"pok", to_json(pok)},
                                          {"blindedIdentity", to_hex(req.blinded_identity().to_bytes())}});
      G1 issued = ibs_blind_issue(req.blinded_identity(), f.ibs);
      row.response_bytes = json_size({{"blindedKey", to_hex(issued.to_bytes())}});
      row.signature_bytes = issued.to_bytes().size();
      op = [&, id] {
        ClProof p = f.prove(kSlotPatientId, ctx);
        f.check(p, ctx);
        IbsBlindRequest r(id, rng);
        IbsUserKey k = r.finish(ibs_blind_issue(r.blinded_identity(), f.ibs), f.ibs.mpk);
        keep(k);
      };
      break;
    }
    case BenchScenario::kAppointmentToken: {
      ClProof pok = f.prove(kSlotPatientId, ctx);
      row.full_request_bytes = json_size({{"patientId", to_hex(f.cred.patient_id)},
                                          {"pok", to_json(pok)},
                                          {"blindedChallenge", bigint_to_hex(f.at.sig.c)}});
      row.response_bytes = json_size({{"blindedResponse", bigint_to_hex(f.at.sig.s)}, {"exp", f.at.exp}});
      row.signature_bytes = f.at.sig.to_bytes(f.group).size();
      op = [&] {
        ClProof p = f.prove(kSlotPatientId, ctx);
        AtIssueResult r = at_issue(p, ctx, f.cl.pub, f.apc_token, f.now, kDefaultAtValidity, nullptr, rng, rng);
        if (at_check(r.at, f.now, f.apc_token.y) != AtStatus::kValid) throw std::runtime_error("AT self-check failed");
      };
      break;
    }
    case BenchScenario::kBooking: {
      const std::string schedule = "slot-1767229200";
      Bytes msg = booking_message(f.pseudonym.pai, f.at, schedule);
      Bytes id = f.pseudonym.pai.pseudonym.to_bytes();
      IbsSignature sig = ibs_sign(msg, f.user_key, rng);
      row.full_request_bytes = json_size(
          {{"pai", to_json(f.pseudonym.pai)}, {"at", to_json(f.at)}, {"schedule", schedule}, {"sig", to_hex(sig.to_bytes())}});
      row.response_bytes = json_size({{"confirmationCode", "0123456789abcdef"}});
      row.signature_bytes = sig.to_bytes().size();
      op = [&, msg, id] {
        IbsSignature s = ibs_sign(msg, f.user_key, rng);
        if (!ibs_verify(msg, s, id, f.ibs.mpk)) throw std::runtime_error("IBS self-check failed");
        if (at_check(f.at, f.now, f.apc_token.y) != AtStatus::kValid) throw std::runtime_error("AT self-check failed");
      };
      break;
    }
    case BenchScenario::kInPerson: {
      Bytes nonce(16, 0x17);
      Bytes id = f.pseudonym.pai.pseudonym.to_bytes();
      Bytes msg = inperson_message(nonce, id, "0123456789abcdef");
      Bytes ctx6 = pok_context("E6", f.ho_did, nonce);
      ClProof pok = f.prove(kSlotBioHash, ctx6);
      IbsSignature sig = ibs_sign(msg, f.user_key, rng);
      row.full_request_bytes = json_size({{"pseudonym", to_hex(id)},
                                          {"confirmationCode", "0123456789abcdef"},
                                          {"pt", to_json(f.pt)},
                                          {"pok", to_json(pok)},
                                          {"sig", to_hex(sig.to_bytes())}});
      row.response_bytes = json_size({{"admitted", true}});
      row.signature_bytes = sig.to_bytes().size();
      op = [&, msg, id, ctx6] {
        IbsSignature s = ibs_sign(msg, f.user_key, rng);
        if (!ibs_verify(msg, s, id, f.ibs.mpk)) throw std::runtime_error("IBS self-check failed");
        ClProof p = f.prove(kSlotBioHash, ctx6);
        f.check(p, ctx6);
        if (!pt_verify(f.pt, f.pta_token.y)) throw std::runtime_error("token self-check failed");
      };
      break;
    }
  }

  for (std::size_t i = 0; i < runs; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    op();
    auto t1 = std::chrono::steady_clock::now();
    row.samples_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  row.avg_ms = trimmed_mean(row.samples_ms);
  return row;
}

}  // namespace hidm
