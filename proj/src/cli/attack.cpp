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

#include "hidm/cli/attack.hpp"

#include <algorithm>
#include <functional>

#include "hidm/algebra/schnorr_group.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

using nlohmann::json;

std::string_view attack_kind_name(AttackKind k) {
  switch (k) {
    case AttackKind::kReplayAti:
      return "replay-ati";
    case AttackKind::kExpiredAt:
      return "expired-at";
    case AttackKind::kForgeSig:
      return "forge-sig";
    case AttackKind::kEavesdropScan:
      return "eavesdrop-scan";
    case AttackKind::kImpersonateHo:
      return "impersonate-ho";
    case AttackKind::kUnwarrantedTrace:
      return "unwarranted-trace";
  }
  return "?";
}

const std::vector<AttackKind>& all_attack_kinds() {
  static const std::vector<AttackKind> all = {AttackKind::kReplayAti,     AttackKind::kExpiredAt,
                                              AttackKind::kForgeSig,      AttackKind::kEavesdropScan,
                                              AttackKind::kImpersonateHo, AttackKind::kUnwarrantedTrace};
  return all;
}

std::optional<AttackKind> parse_attack_kind(std::string_view name) {
  for (AttackKind k : all_attack_kinds()) {
    if (name == attack_kind_name(k)) return k;
  }
  return std::nullopt;
}

json AttackOutcome::to_json() const {
  return {{"attackKind", kind}, {"expectedResult", expected}, {"observedResult", observed}, {"pass", pass},
          {"details", details}};
}

namespace {

Bytes mutate(Bytes b, Rng& rng) {
  if (b.empty()) return b;
  std::size_t i = rng.next_u64() % b.size();
  b[i] ^= static_cast<std::uint8_t>(1u << (rng.next_u64() % 8));
  return b;
}

// Alternates fully random encodings with single-bit mutations of a valid
// one. Undecodable candidates count as rejected.
ForgeryTally sweep(std::size_t trials, const Bytes& valid, Rng& rng, const std::function<bool(const Bytes&)>& accepts) {
  ForgeryTally t;
  for (std::size_t i = 0; i < trials; ++i) {
    Bytes candidate = i % 2 == 0 ? rng.bytes(valid.size()) : mutate(valid, rng);
    if (candidate == valid) continue;
    ++t.trials;
    bool ok = false;
    try {
      ok = accepts(candidate);
    } catch (const std::exception&) {
      ok = false;
    }
    if (ok) ++t.accepted;
  }
  return t;
}

std::string reason_of(const std::function<void()>& attempt) {
  try {
    attempt();
  } catch (const ProtocolError& e) {
    return e.what();
  }
  return "accepted";
}

std::size_t count_occurrences(const Bytes& haystack, const Bytes& needle) {
  std::size_t n = 0;
  auto it = haystack.begin();
  while ((it = std::search(it, haystack.end(), needle.begin(), needle.end())) != haystack.end()) {
    ++n;
    ++it;
  }
  return n;
}

}  // namespace

std::map<std::string, ForgeryTally> forgery_sweep(std::size_t trials, Rng& rng) {
  const SchnorrGroup& g = SchnorrGroup::standard();
  std::map<std::string, ForgeryTally> out;
  const Bytes msg = {'f', 'o', 'r', 'g', 'e', 'r', 'y'};

  SchnorrKeypair sk = SchnorrKeypair::generate(g, rng);
  Bytes schnorr = schnorr_sign(g, msg, sk, rng).to_bytes(g);
  out["Schnorr"] = sweep(trials, schnorr, rng, [&](const Bytes& b) {
    return schnorr_verify(g, msg, SchnorrSig::from_bytes(g, b), sk.y);
  });

  const std::int64_t exp = 1767225600;
  Bytes pbs = pbs_issue(g, exp, msg, sk, rng, rng).sig.to_bytes(g);
  out["PBS"] = sweep(trials, pbs, rng, [&](const Bytes& b) {
    return pbs_verify(g, msg, exp, PartiallyBlindSig::from_bytes(g, b), sk.y);
  });

  std::vector<Bytes> attrs;
  for (std::size_t i = 0; i < kPcredSlotCount; ++i) attrs.push_back(Bytes(8, static_cast<std::uint8_t>(i)));
  for (ClVariant v : {ClVariant::kRsa, ClVariant::kPairing}) {
    ClKeypair key = ClKeypair::generate(v, kPcredSlotCount, rng);
    Bytes sig = cl_sign(attrs, key, rng).to_bytes();
    std::string name = v == ClVariant::kRsa ? "CL-RSA" : "CL-pairing";
    out[name] = sweep(trials, sig, rng, [&](const Bytes& b) {
      return cl_verify(attrs, ClSignature::from_bytes(b), key.pub);
    });
  }

  IbsMasterKey master = IbsMasterKey::generate(rng);
  Bytes identity = rng.bytes(32);
  IbsUserKey uk = ibs_extract(identity, master);
  Bytes ibs = ibs_sign(msg, uk, rng).to_bytes();
  out["IBS"] = sweep(trials, ibs, rng, [&](const Bytes& b) {
    return ibs_verify(msg, IbsSignature::from_bytes(b), identity, master.mpk);
  });
  return out;
}

ScanReport eavesdrop_scan(World& world) {
  std::vector<Bytes> secrets;
  auto add = [&](ByteView raw) {
    secrets.emplace_back(raw.begin(), raw.end());
    std::string hex = to_hex(raw);
    secrets.emplace_back(hex.begin(), hex.end());
  };
  for (const auto& p : world.patients()) {
    if (p->credential) add(p->credential->patient_id);
    auto visit_secrets = [&](const PatientVisit& v) {
      if (v.at) add(v.at->ati);
    };
    for (const auto& v : p->history) visit_secrets(v);
    if (p->visit) visit_secrets(*p->visit);
  }
  ScanReport r;
  Bytes wire = world.wire().wire_bytes();
  r.secrets = secrets.size() / 2;
  r.wire_bytes = wire.size();
  for (const auto& s : secrets) r.hits += count_occurrences(wire, s);
  return r;
}

AttackOutcome run_attack(AttackKind kind, const AttackOptions& options) {
  AttackOutcome out;
  out.kind = std::string(attack_kind_name(kind));
  WorldConfig wc;
  wc.seed = options.seed;
  World world(wc);
  Patient& victim = world.add_patient();
  world.run_visit(victim);  // baseline

  switch (kind) {
    case AttackKind::kReplayAti: {
      out.expected = reason_text(Reason::kReplayRejected);
      // Redeem a fresh token, then present it again.
      world.e4_issue_appointment_token(victim);
      world.e5_book(victim, "slot-first");
      out.observed = reason_of([&] { world.e5_book(victim, "slot-replay"); });
      out.details = {{"ati", to_hex(victim.visit->at->ati)}};
      break;
    }
    case AttackKind::kExpiredAt: {
      out.expected = reason_text(Reason::kTokenExpired);
      world.e4_issue_appointment_token(victim);
      std::int64_t exp = victim.visit->at->exp;
      world.clock().set(exp + world.config().clock_skew + 1);
      out.observed = reason_of([&] { world.e5_book(victim, "slot-late"); });
      out.details = {{"exp", exp}, {"presentedAt", world.clock().now()}};
      break;
    }
    case AttackKind::kForgeSig: {
      out.expected = "0 accepted";
      auto rng = world.fork_rng("attack/forgery");
      auto tallies = forgery_sweep(options.forgery_trials, *rng);
      std::size_t trials = 0, accepted = 0;
      for (const auto& [scheme, t] : tallies) {
        trials += t.trials;
        accepted += t.accepted;
        out.details[scheme] = {{"trials", t.trials}, {"accepted", t.accepted}};
      }
      out.observed = std::to_string(accepted) + " accepted";
      out.details["totalTrials"] = trials;
      break;
    }
    case AttackKind::kEavesdropScan: {
      out.expected = "0 hits";
      for (std::size_t i = 1; i < options.scan_patients; ++i) world.run_visit(world.add_patient());
      world.run_visit(victim);
      ScanReport r = eavesdrop_scan(world);
      out.observed = std::to_string(r.hits) + " hits";
      out.details = {{"secrets", r.secrets}, {"wireBytes", r.wire_bytes}};
      break;
    }
    case AttackKind::kImpersonateHo: {
      out.expected = reason_text(Reason::kLegitimacyRejected);
      auto rogue = world.make_rogue_ho();
      world.e4_issue_appointment_token(victim);
      out.observed = reason_of([&] { world.e5_book(victim, "slot-rogue", *rogue); });
      out.details = {{"rogueDid", rogue->id.did}};
      break;
    }
    case AttackKind::kUnwarrantedTrace: {
      out.expected = reason_text(Reason::kTraceRefused);
      // A warrant in the authority's name signed with a key it never held.
      auto rng = world.fork_rng("attack/forged-warrant");
      RsaKeypair forger = RsaKeypair::generate(2048, *rng);
      Warrant forged = warrant_issue(victim.visit->pseudonym_bytes(), "curiosity", world.clock().now(),
                                     world.auditor_authority().id, forger, *rng);
      std::size_t before = world.audit().records().size();
      out.observed = reason_of([&] { world.trace_identity(forged); });
      out.details = {{"auditRecordsAdded", world.audit().records().size() - before}};
      break;
    }
  }
  // Error texts may carry a detail suffix after the canonical reason.
  out.pass = out.observed.rfind(out.expected, 0) == 0;
  if (out.pass) out.observed = out.expected;
  return out;
}

}  // namespace hidm
