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

#include "hidm/cli/vectors.hpp"

#include "hidm/actors/world.hpp"
#include "hidm/algebra/hash.hpp"
#include "hidm/algebra/schnorr_group.hpp"

namespace hidm {

using nlohmann::json;

namespace {

std::string digest_hex(const Digest32& d) { return to_hex(d); }

json scheme_vectors(Rng& rng) {
  const SchnorrGroup& g = SchnorrGroup::standard();
  const Bytes msg = {'h', 'i', 'd', 'm'};
  json v;

  SchnorrKeypair sk = SchnorrKeypair::generate(g, rng);
  v["schnorr"] = {{"message", to_hex(msg)},
                  {"publicKey", bigint_to_hex(sk.y)},
                  {"signature", to_hex(schnorr_sign(g, msg, sk, rng).to_bytes(g))}};

  const std::int64_t exp = 1767312000;
  auto pbs = pbs_issue(g, exp, msg, sk, rng, rng);
  v["partiallyBlindSchnorr"] = {{"message", to_hex(msg)},
                                {"exp", exp},
                                {"publicKey", bigint_to_hex(sk.y)},
                                {"signature", to_hex(pbs.sig.to_bytes(g))}};

  IbsMasterKey master = IbsMasterKey::generate(rng);
  Bytes identity = rng.bytes(32);
  IbsUserKey uk = ibs_extract(identity, master);
  v["ibs"] = {{"masterPublicKey", to_hex(master.mpk.to_bytes())},
              {"identity", to_hex(identity)},
              {"userKey", to_hex(uk.d.to_bytes())},
              {"message", to_hex(msg)},
              {"signature", to_hex(ibs_sign(msg, uk, rng).to_bytes())}};

  Bytes salt = rng.bytes(16);
  Bytes ikm = rng.bytes(32);
  v["hkdf"] = {{"salt", to_hex(salt)},
               {"ikm", to_hex(ikm)},
               {"info", to_hex(msg)},
               {"okm", to_hex(hkdf_sha256(salt, ikm, msg, 42))}};

  PreHrrKeys hrr = PreHrrKeys::generate(rng);
  PrePatientKeys keys = PrePatientKeys::generate(rng);
  Bytes patient_id = rng.bytes(16);
  GeneratedPseudonym gp = pseudonym_generate(patient_id, keys, hrr.pk, rng);
  PbProof pbp = pbp_prove(gp.pai.pseudonym, gp.r, gp.h, rng);
  v["pseudonym"] = {{"patientId", to_hex(patient_id)},
                    {"hrrPublicKey", to_hex(hrr.pk.to_bytes())},
                    {"pai", to_json(gp.pai)},
                    {"bindingProof", to_json(pbp)}};
  return v;
}

}  // namespace

json emit_vectors(const std::string& seed) {
  WorldConfig wc;
  wc.seed = seed;
  World world(wc);
  Patient& p = world.add_patient();
  VisitReport report = world.run_visit(p);
  const PatientVisit& visit = *p.visit;

  json artifacts = {{"patientCredential", to_json(*p.credential)},
                    {"pseudonymToken", to_json(*visit.pt)},
                    {"appointmentToken", to_json(*visit.at)},
                    {"pseudonymAccessInfo", to_json(visit.pseudonym.pai)},
                    {"legitimacyCredential", to_json(world.ho().id.lvc)},
                    {"confirmationCode", report.confirmation_code}};

  auto rng = world.fork_rng("vectors/schemes");
  return {{"schema", kSchemaVersion},
          {"seed", seed},
          {"artifacts", artifacts},
          {"schemes", scheme_vectors(*rng)},
          {"digests",
           {{"transcriptSha256", digest_hex(sha256(world.wire().wire_bytes()))},
            {"didLedgerHead", digest_hex(world.dids().chain().head())},
            {"atiLedgerHead", digest_hex(world.atis().chain().head())},
            {"auditLedgerHead", digest_hex(world.audit().chain().head())}}}};
}

}  // namespace hidm
