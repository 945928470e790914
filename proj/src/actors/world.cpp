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

#include "hidm/actors/world.hpp"

#include <array>

#include "hidm/algebra/schnorr_group.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

using nlohmann::json;
using Side = SecureChannel::Side;

namespace {

constexpr std::array<std::string_view, 8> kGivenNames = {"Amira", "Bao", "Carmen", "Dmitri",
                                                         "Esi",   "Farid", "Greta", "Hiroshi"};
constexpr std::array<std::string_view, 8> kFamilyNames = {"Okafor", "Lindqvist", "Moreau", "Tanaka",
                                                          "Haddad", "Novak",     "Silva",  "Kowalski"};

std::uint64_t pick(Rng& rng, std::uint64_t n) { return rng.next_u64() % n; }

PiiBundle synthetic_pii(std::size_t index, Rng& rng) {
  PiiBundle pii;
  pii.full_name = std::string(kGivenNames[pick(rng, kGivenNames.size())]) + " " +
                  std::string(kFamilyNames[pick(rng, kFamilyNames.size())]) + " #" + std::to_string(index);
  char dob[16];
  std::snprintf(dob, sizeof dob, "%04u-%02u-%02u", static_cast<unsigned>(1940 + pick(rng, 66)),
                static_cast<unsigned>(1 + pick(rng, 12)), static_cast<unsigned>(1 + pick(rng, 28)));
  pii.date_of_birth = dob;
  std::string nid = "NID-";
  for (int i = 0; i < 10; ++i) nid += static_cast<char>('0' + pick(rng, 10));
  pii.national_id = nid;
  pii.address = std::to_string(1 + pick(rng, 999)) + " Harbour Road, Unit " + std::to_string(index);
  return pii;
}

DidKey key_entry(std::string id, std::string_view purpose, std::string_view type, Bytes key) {
  return DidKey{std::move(id), std::string(purpose), std::string(type), std::move(key)};
}

}  // namespace

World::World(WorldConfig config)
    : config_(std::move(config)), root_(make_rng(config_.seed)), clock_(config_.start_time) {
  const SchnorrGroup& g = SchnorrGroup::standard();
  dids_ = std::make_unique<DidLedger>(ledger_file("did.jsonl"));
  atis_ = std::make_unique<AtiLedger>(ledger_file("ati.jsonl"));

  auto r = root_->fork("setup/gha");
  gha_ = std::make_unique<AuthorityEntity>();
  gha_->key = RsaKeypair::generate(config_.authority_rsa_bits, *r);
  gha_->id = register_identity(*dids_, "GHA", {key_entry("#lvc-1", did_keys::kLvcIssuer, did_keys::kRsa,
                                                         gha_->key.pub.to_bytes())},
                               *r);
  dids_->set_root(gha_->id.did);

  r = root_->fork("setup/auditor-authority");
  auditor_authority_ = std::make_unique<AuthorityEntity>();
  auditor_authority_->key = RsaKeypair::generate(config_.authority_rsa_bits, *r);
  auditor_authority_->id =
      register_identity(*dids_, "AuditorAuthority",
                        {key_entry("#warrant-1", did_keys::kWarrantIssuer, did_keys::kRsa,
                                   auditor_authority_->key.pub.to_bytes())},
                        *r);
  auditor_authority_->id.lvc = grant(auditor_authority_->id, roles::kAuditorAuthority, {});

  r = root_->fork("setup/administrator");
  admin_ = register_identity(*dids_, "Administrator", {}, *r);
  admin_.lvc = grant(admin_, roles::kAdministrator, {});

  r = root_->fork("setup/apc");
  apc_ = std::make_unique<AgencyForPatientCare>();
  apc_->cl = ClKeypair::generate(config_.cl_variant, kPcredSlotCount, *r);
  apc_->token_key = SchnorrKeypair::generate(g, *r);
  apc_->ibs = IbsMasterKey::generate(*r);
  std::string_view cl_type = config_.cl_variant == ClVariant::kRsa ? did_keys::kClRsa : did_keys::kClPairing;
  apc_->id = register_identity(
      *dids_, "APC",
      {key_entry("#credential-1", did_keys::kCredentialIssuer, cl_type, apc_->cl.pub.to_bytes()),
       key_entry("#token-1", did_keys::kTokenSigner, did_keys::kSchnorr,
                 bigint_to_bytes(apc_->token_key.y, g.element_size())),
       key_entry("#ibs-1", did_keys::kPseudonymKeyIssuer, did_keys::kBlsG2, apc_->ibs.mpk.to_bytes())},
      *r);
  apc_->id.lvc = grant(apc_->id, roles::kApc, {});

  r = root_->fork("setup/pta");
  pta_ = std::make_unique<PseudonymTokenAuthority>();
  pta_->token_key = SchnorrKeypair::generate(g, *r);
  pta_->id = register_identity(*dids_, "PTA",
                               {key_entry("#token-1", did_keys::kTokenSigner, did_keys::kSchnorr,
                                          bigint_to_bytes(pta_->token_key.y, g.element_size()))},
                               *r);
  pta_->id.lvc = grant(pta_->id, roles::kPta, {});

  r = root_->fork("setup/hrr");
  hrr_ = std::make_unique<HealthRecordRepository>();
  hrr_->pre = PreHrrKeys::generate(*r);
  hrr_->id = register_identity(
      *dids_, "HRR",
      {key_entry("#record-1", did_keys::kRecordEncryption, did_keys::kBlsG1, hrr_->pre.pk.to_bytes())}, *r);
  hrr_->id.lvc = grant(hrr_->id, roles::kHrr, {});

  r = root_->fork("setup/ho");
  ho_ = std::make_unique<HealthcareOrganization>();
  ho_->id = register_identity(*dids_, "HO", {}, *r);
  ho_->id.lvc = grant(ho_->id, roles::kHo, {});

  add_hp({"read", "write"});

  r = root_->fork("setup/auditor");
  auditor_ = register_identity(*dids_, "Auditor", {}, *r);

  // Everyone else learns public keys from the DID ledger.
  base_ctx_.dids = dids_.get();
  base_ctx_.atis = atis_.get();
  base_ctx_.gha_did = gha_->id.did;
  base_ctx_.clock_skew = config_.clock_skew;
  base_ctx_.at_validity = config_.at_validity;
  base_ctx_.pbp_mode = config_.pbp_mode;
  base_ctx_.credential_issuer =
      ClPublicKey::from_bytes(*resolve_key(*dids_, apc_->id.did, did_keys::kCredentialIssuer));
  base_ctx_.apc_token_key = bigint_from_bytes(*resolve_key(*dids_, apc_->id.did, did_keys::kTokenSigner));
  base_ctx_.ibs_mpk = G2::from_bytes(*resolve_key(*dids_, apc_->id.did, did_keys::kPseudonymKeyIssuer));
  base_ctx_.pta_token_key = bigint_from_bytes(*resolve_key(*dids_, pta_->id.did, did_keys::kTokenSigner));
  base_ctx_.hrr_key = G1::from_bytes(*resolve_key(*dids_, hrr_->id.did, did_keys::kRecordEncryption));

  AuditTrustAnchors anchors{dids_.get(), RsaPublicKey::from_bytes(*resolve_key(*dids_, gha_->id.did, did_keys::kLvcIssuer)),
                            base_ctx_.credential_issuer, base_ctx_.ibs_mpk};
  audit_ = std::make_unique<AuditLedger>(auditor_.did, std::move(anchors), ledger_file("audit.jsonl"),
                                         [this] { return clock_.now(); });
  audit_rng_ = root_->fork("setup/audit-writers");
  auto writer = [&](std::string_view module, const EntityIdentity& id) {
    audit_->register_origin(std::string(module), id.did);
    return std::make_unique<AuditWriter>(*audit_, std::string(module), id.key_id, id.auth, *audit_rng_);
  };
  apc_->audit = writer(modules::kApc, apc_->id);
  pta_->audit = writer(modules::kPta, pta_->id);
  ho_->audit = writer(modules::kHo, ho_->id);
  hrr_->audit = writer(modules::kHrr, hrr_->id);
}

std::optional<std::filesystem::path> World::ledger_file(std::string_view name) const {
  if (!config_.ledger_dir) return std::nullopt;
  std::filesystem::create_directories(*config_.ledger_dir);
  return *config_.ledger_dir / name;
}

LegitimacyCredential World::grant(const EntityIdentity& subject, std::string_view role,
                                  std::vector<std::string> scope) {
  return lvc_issue(subject.did, std::string(role), std::move(scope), gha_->id.did, clock_.now(), gha_->key);
}

std::size_t World::add_hp(std::vector<std::string> scope) {
  auto r = root_->fork("setup/hp-" + std::to_string(hps_.size()));
  auto hp = std::make_unique<HealthcareProfessional>();
  hp->id = register_identity(*dids_, "HP", {}, *r);
  hp->id.lvc = grant(hp->id, roles::kHp, std::move(scope));
  hps_.push_back(std::move(hp));
  return hps_.size() - 1;
}

std::unique_ptr<HealthcareOrganization> World::make_rogue_ho() {
  auto r = world_rng("rogue-ho");
  auto ho = std::make_unique<HealthcareOrganization>();
  ho->id = register_identity(*dids_, "HO", {}, *r);
  // Claims GHA issuance but is signed by a key the GHA never held.
  RsaKeypair forger = RsaKeypair::generate(2048, *r);
  ho->id.lvc = lvc_issue(ho->id.did, std::string(roles::kHo), {}, gha_->id.did, clock_.now(), forger);
  return ho;
}

Context World::context() const {
  Context c = base_ctx_;
  c.now = clock_.now();
  return c;
}

std::unique_ptr<Rng> World::world_rng(std::string_view what) {
  return root_->fork("world/op-" + std::to_string(world_ops_++) + "/" + std::string(what));
}

World::PartyRngs World::op_rngs(Patient& p, std::string_view episode) {
  std::string label = "patient-" + std::to_string(p.index) + "/op-" + std::to_string(p.ops++) + "/" +
                      std::string(episode);
  return PartyRngs{root_->fork(label + "/patient"), root_->fork(label + "/entity")};
}

EntityIdentity World::session_identity(Patient& p, Rng& rng) {
  return register_identity(*dids_, "Patient", {}, rng);
}

SecureChannel World::connect(const EntityIdentity& a, const EntityIdentity& b, Rng& ra, Rng& rb) {
  return SecureChannel::establish(a.party(), b.party(), *dids_, ra, rb, &wire_);
}

void World::require_lvc(const json& msg, std::string_view role, std::string_view peer_did) {
  LegitimacyCredential lvc;
  try {
    lvc = lvc_from_json(msg.at("lvc"));
  } catch (const std::exception& e) {
    throw ProtocolError(Reason::kLegitimacyRejected, e.what());
  }
  if (lvc.subject_did != peer_did) throw ProtocolError(Reason::kLegitimacyRejected, "credential names another DID");
  if (!verify_lvc(lvc, role, *dids_, gha_->id.did)) {
    throw ProtocolError(Reason::kLegitimacyRejected, std::string(role) + " credential rejected");
  }
}

// ---- patients --------------------------------------------------------------

Patient& World::add_patient() {
  std::size_t index = patients_.size();
  auto r = root_->fork("patient-" + std::to_string(index) + "/profile");
  PiiBundle pii = synthetic_pii(index, *r);
  return add_patient(std::move(pii), synthetic_features(*r));
}

Patient& World::add_patient(PiiBundle pii, std::vector<double> features) {
  auto p = std::make_unique<Patient>();
  p->index = patients_.size();
  p->pii = std::move(pii);
  p->features = std::move(features);
  auto r = root_->fork("patient-" + std::to_string(p->index) + "/identity");
  p->identity = register_identity(*dids_, "Patient", {}, *r);
  patients_.push_back(std::move(p));
  return *patients_.back();
}

// ---- E1 --------------------------------------------------------------------

void World::e1_issue_credential(Patient& p) {
  auto [rp, re] = op_rngs(p, "e1");
  Context ctx = context();
  SecureChannel ch = connect(p.identity, apc_->id, *rp, *re);
  require_lvc(ch.send(Side::kB, "legitimacy", {{"lvc", to_json(apc_->id.lvc)}}), roles::kApc, apc_->id.did);

  BioHash bh = biohash_enroll(p.features, BioHashParams::standard());
  json req = ch.send(Side::kA, "enrollment-request",
                     {{"pii", p.pii.to_json()}, {"did", p.identity.did}, {"biohash", to_hex(bh)}});
  json resp = ch.send(Side::kB, "credential", apc_->handle_enrollment(req, ctx, *re));

  PatientCredential cred = pcred_from_json(resp.at("credential"));
  if (!pcred_verify(cred, ctx.credential_issuer) || cred.biohash != bh) {
    throw ProtocolError(Reason::kCredentialProofRejected, "issued credential does not verify");
  }
  p.credential = std::move(cred);
}

void World::start_visit(Patient& p) {
  if (!p.credential) throw std::logic_error("patient has no credential");
  auto [rp, unused] = op_rngs(p, "start-visit");
  if (p.visit) p.history.push_back(std::move(*p.visit));
  PatientVisit v;
  v.number = p.visits_started++;
  v.pre = PrePatientKeys::generate(*rp);
  v.pseudonym = pseudonym_generate(p.credential->patient_id, v.pre, base_ctx_.hrr_key, *rp);
  p.visit = std::move(v);
}

// ---- E2 --------------------------------------------------------------------

void World::e2_issue_pseudonym_token(Patient& p) {
  if (!p.credential || !p.visit) throw std::logic_error("E2 needs a credential and a pseudonym");
  PatientVisit& v = *p.visit;
  auto [rp, re] = op_rngs(p, "e2");
  Context ctx = context();
  EntityIdentity sid = session_identity(p, *rp);
  SecureChannel ch = connect(sid, pta_->id, *rp, *re);

  Bytes nonce = re->bytes(16);
  json hello = ch.send(Side::kB, "legitimacy", {{"lvc", to_json(pta_->id.lvc)}, {"nonce", to_hex(nonce)}});
  require_lvc(hello, roles::kPta, pta_->id.did);

  Bytes ctx_p = pok_context("E2", pta_->id.did, from_hex(hello.at("nonce").get<std::string>()));
  ClProof pok = pok_pcred_prove(*p.credential, ctx.credential_issuer, {kSlotPatientId}, ctx_p, *rp);
  const Pseudonym& pseudonym = v.pseudonym.pai.pseudonym;
  PbProof pbp = pbp_prove(pseudonym, v.pseudonym.r, v.pseudonym.h, *rp, config_.pbp_mode);
  json req = ch.send(Side::kA, "pt-request",
                     {{"patientId", to_hex(p.credential->patient_id)},
                      {"pok", to_json(pok)},
                      {"pseudonym", to_json(pseudonym)},
                      {"pbp", to_json(pbp)}});
  json resp =
      ch.send(Side::kB, "pseudonym-token", pta_->handle_issue(req, pok_context("E2", pta_->id.did, nonce), ctx, *re));

  PseudonymToken pt = pt_from_json(resp.at("token"));
  if (pt.pseudonym != pseudonym || !pt_verify(pt, ctx.pta_token_key)) throw ProtocolError(Reason::kPseudonymTokenInvalid);
  v.pt = std::move(pt);
}

// ---- E3 --------------------------------------------------------------------

void World::e3_issue_pseudonym_key(Patient& p) {
  if (!p.credential || !p.visit) throw std::logic_error("E3 needs a credential and a pseudonym");
  PatientVisit& v = *p.visit;
  auto [rp, re] = op_rngs(p, "e3");
  Context ctx = context();
  EntityIdentity sid = session_identity(p, *rp);
  SecureChannel ch = connect(sid, apc_->id, *rp, *re);

  Bytes nonce = re->bytes(16);
  json hello = ch.send(Side::kB, "legitimacy", {{"lvc", to_json(apc_->id.lvc)}, {"nonce", to_hex(nonce)}});
  if (config_.reverify_lvc) require_lvc(hello, roles::kApc, apc_->id.did);

  IbsBlindRequest blind(v.pseudonym_bytes(), *rp);
  Bytes ctx_p = pok_context("E3", apc_->id.did, from_hex(hello.at("nonce").get<std::string>()));
  ClProof pok = pok_pcred_prove(*p.credential, ctx.credential_issuer, {kSlotPatientId}, ctx_p, *rp);
  json req = ch.send(Side::kA, "key-request",
                     {{"patientId", to_hex(p.credential->patient_id)},
                      {"pok", to_json(pok)},
                      {"blindedIdentity", to_hex(blind.blinded_identity().to_bytes())}});
  json resp = ch.send(Side::kB, "blinded-key",
                      apc_->handle_key_request(req, pok_context("E3", apc_->id.did, nonce), ctx));

  v.key = blind.finish(G1::from_bytes(from_hex(resp.at("blindedKey").get<std::string>())), ctx.ibs_mpk);
}

// ---- E4 --------------------------------------------------------------------

void World::e4_issue_appointment_token(Patient& p) {
  if (!p.credential || !p.visit) throw std::logic_error("E4 needs a credential");
  PatientVisit& v = *p.visit;
  auto [rp, re] = op_rngs(p, "e4");
  Context ctx = context();
  const SchnorrGroup& g = SchnorrGroup::standard();
  EntityIdentity sid = session_identity(p, *rp);
  SecureChannel ch = connect(sid, apc_->id, *rp, *re);

  AtIssuerSession session(apc_->token_key, *re);
  Bytes nonce = re->bytes(16);
  json offer = ch.send(Side::kB, "at-offer",
                       {{"lvc", to_json(apc_->id.lvc)},
                        {"nonce", to_hex(nonce)},
                        {"commitment", bigint_to_hex(session.commitment())}});
  if (config_.reverify_lvc) require_lvc(offer, roles::kApc, apc_->id.did);

  Id16 ati = rp->uuid_v4();
  PbsUserSession user(g, ctx.apc_token_key, ati, *rp);
  BigInt cu = user.blind(bigint_from_hex(offer.at("commitment").get<std::string>()));
  Bytes ctx_p = pok_context("E4", apc_->id.did, from_hex(offer.at("nonce").get<std::string>()));
  ClProof pok = pok_pcred_prove(*p.credential, ctx.credential_issuer, {kSlotPatientId}, ctx_p, *rp);
  json req = ch.send(Side::kA, "at-request",
                     {{"patientId", to_hex(p.credential->patient_id)},
                      {"pok", to_json(pok)},
                      {"blindedChallenge", bigint_to_hex(cu)}});

  ClProof received;
  try {
    received = pok_from_json(req.at("pok"));
  } catch (const std::exception& e) {
    throw ProtocolError(Reason::kCredentialProofRejected, e.what());
  }
  PbsSignerResponse signed_part =
      session.respond(received, pok_context("E4", apc_->id.did, nonce), ctx.credential_issuer,
                      bigint_from_hex(req.at("blindedChallenge").get<std::string>()), ctx.now, ctx.at_validity,
                      apc_->audit.get());
  json resp = ch.send(Side::kB, "at-response",
                      {{"blindedResponse", bigint_to_hex(signed_part.blinded_response)}, {"exp", signed_part.exp}});

  PbsSignerResponse got{bigint_from_hex(resp.at("blindedResponse").get<std::string>()),
                        resp.at("exp").get<std::int64_t>()};
  PartiallyBlindSig sig = user.finish(got);
  v.at = AppointmentToken{ati, got.exp, std::move(sig)};
}

// ---- E5 / E6 ---------------------------------------------------------------

std::string World::e5_book(Patient& p, std::string schedule) { return e5_book(p, std::move(schedule), *ho_); }

std::string World::e5_book(Patient& p, std::string schedule, HealthcareOrganization& ho) {
  if (!p.visit || !p.visit->at || !p.visit->key) throw std::logic_error("E5 needs an AT and a pseudonym key");
  PatientVisit& v = *p.visit;
  auto [rp, re] = op_rngs(p, "e5");
  Context ctx = context();
  EntityIdentity sid = session_identity(p, *rp);
  SecureChannel ch = connect(sid, ho.id, *rp, *re);
  require_lvc(ch.send(Side::kB, "legitimacy", {{"lvc", to_json(ho.id.lvc)}}), roles::kHo, ho.id.did);

  const PseudonymAccessInfo& pai = v.pseudonym.pai;
  IbsSignature sig = ibs_sign(booking_message(pai, *v.at, schedule), *v.key, *rp);
  json req = ch.send(Side::kA, "booking-request",
                     {{"pai", to_json(pai)}, {"at", to_json(*v.at)}, {"schedule", schedule}, {"sig", to_hex(sig.to_bytes())}});
  json resp = ch.send(Side::kB, "booking-confirmation", ho.handle_booking(req, ctx, *re));
  v.confirmation_code = resp.at("confirmationCode").get<std::string>();
  return v.confirmation_code;
}

void World::e6_verify_in_person(Patient& p, std::span<const double> live) {
  if (!p.visit || !p.visit->pt || !p.visit->key) throw std::logic_error("E6 needs a booking");
  PatientVisit& v = *p.visit;
  auto [rp, re] = op_rngs(p, "e6");
  Context ctx = context();
  EntityIdentity sid = session_identity(p, *rp);
  SecureChannel ch = connect(sid, ho_->id, *rp, *re);

  Bytes nonce = re->bytes(16);
  json hello = ch.send(Side::kB, "legitimacy", {{"lvc", to_json(ho_->id.lvc)}, {"nonce", to_hex(nonce)}});
  if (config_.reverify_lvc) require_lvc(hello, roles::kHo, ho_->id.did);

  Bytes nonce_p = from_hex(hello.at("nonce").get<std::string>());
  Bytes pseudonym = v.pseudonym_bytes();
  ClProof pok = pok_pcred_prove(*p.credential, ctx.credential_issuer, {kSlotBioHash},
                                pok_context("E6", ho_->id.did, nonce_p), *rp);
  IbsSignature sig = ibs_sign(inperson_message(nonce_p, pseudonym, v.confirmation_code), *v.key, *rp);
  json req = ch.send(Side::kA, "identity-verification",
                     {{"pseudonym", to_hex(pseudonym)},
                      {"confirmationCode", v.confirmation_code},
                      {"pt", to_json(*v.pt)},
                      {"pok", to_json(pok)},
                      {"sig", to_hex(sig.to_bytes())}});
  ch.send(Side::kB, "admission", ho_->handle_inperson(req, nonce, live, ctx));
}

// ---- E7 / E8 ---------------------------------------------------------------

PseudonymAccessInfo World::e7_handoff(Patient& p, std::size_t hp_index) {
  if (!p.visit) throw std::logic_error("E7 needs a visit");
  PatientVisit& v = *p.visit;
  HealthcareProfessional& hp = *hps_.at(hp_index);
  auto [rho, rhp] = op_rngs(p, "e7");
  Context ctx = context();
  SecureChannel ch = connect(ho_->id, hp.id, *rho, *rhp);

  json from_hp = ch.send(Side::kB, "legitimacy", {{"lvc", to_json(hp.id.lvc)}});
  require_lvc(from_hp, roles::kHp, hp.id.did);
  json from_ho = ch.send(Side::kA, "legitimacy", {{"lvc", to_json(ho_->id.lvc)}});
  require_lvc(from_ho, roles::kHo, ho_->id.did);

  PseudonymAccessInfo pai = ho_->handoff(v.pseudonym_bytes(), lvc_from_json(from_hp.at("lvc")), ctx);
  json msg = ch.send(Side::kA, "pai", {{"pai", to_json(pai)}});
  v.hp_view = pai_from_json(msg.at("pai"));
  return *v.hp_view;
}

std::vector<RecordEntry> World::e8_access(const PseudonymAccessInfo& pai, AccessType type,
                                          const std::optional<RecordEntry>& entry, std::size_t hp_index) {
  HealthcareProfessional& hp = *hps_.at(hp_index);
  auto rhp = world_rng("e8/hp");
  auto rhrr = world_rng("e8/hrr");
  Context ctx = context();
  SecureChannel ch = connect(hp.id, hrr_->id, *rhp, *rhrr);
  require_lvc(ch.send(Side::kB, "legitimacy", {{"lvc", to_json(hrr_->id.lvc)}}), roles::kHrr, hrr_->id.did);

  json req = ch.send(Side::kA, "access-request", hp.access_request(pai, type, entry, ctx, *rhp));
  json resp = ch.send(Side::kB, "access-response", hrr_->handle_access(req, ctx));
  std::vector<RecordEntry> out;
  for (const auto& e : resp.at("entries")) out.push_back(RecordEntry::from_json(e));
  return out;
}

VisitReport World::run_visit(Patient& p) {
  auto step = [](const char* episode, auto&& fn) {
    try {
      return fn();
    } catch (const EpisodeError&) {
      throw;
    } catch (const ProtocolError& e) {
      throw EpisodeError(episode, e);
    }
  };
  if (!p.credential) step("E1", [&] { e1_issue_credential(p); });
  bool fresh = !p.visit || config_.rotate_pseudonyms;
  if (fresh) {
    start_visit(p);
    step("E2", [&] { e2_issue_pseudonym_token(p); });
    step("E3", [&] { e3_issue_pseudonym_key(p); });
  }
  std::size_t visit_no = fresh ? p.visit->number : p.visits_started++;
  step("E4", [&] { e4_issue_appointment_token(p); });
  clock_.advance(60);
  std::string code = step("E5", [&] { return e5_book(p, "slot-" + std::to_string(clock_.now() + 3600)); });
  clock_.advance(3600);

  auto noise = op_rngs(p, "live-capture");
  std::vector<double> live = noisy_sample(p.features, config_.biometric_noise, *noise.patient);
  step("E6", [&] { e6_verify_in_person(p, live); });
  PseudonymAccessInfo pai = step("E7", [&] { return e7_handoff(p); });

  RecordEntry entry{0, "", "Observation", "visit " + std::to_string(visit_no) + " consultation note " + code};
  RecordEntry written = step("E8", [&] { return e8_access(pai, AccessType::kWrite, entry).at(0); });
  std::vector<RecordEntry> read = step("E8", [&] { return e8_access(pai, AccessType::kRead, std::nullopt); });
  clock_.advance(24 * 3600);
  return VisitReport{visit_no, p.visit->pseudonym_bytes(), code, written, read};
}

// ---- traceability ----------------------------------------------------------

Warrant World::issue_warrant(ByteView target_pseudonym, std::string scope) {
  auto r = world_rng("warrant");
  return warrant_issue(target_pseudonym, std::move(scope), clock_.now(), auditor_authority_->id,
                       auditor_authority_->key, *r);
}

TraceResult World::trace_identity(const Warrant& w) {
  Context ctx = context();
  Bytes patient_id = pta_->reveal_patient_id(w, ctx);
  PiiBundle pii = apc_->reveal_pii(w, patient_id, ctx);
  return TraceResult{std::move(patient_id), std::move(pii)};
}

// ---- audit queries ---------------------------------------------------------

namespace {

QueryResult signed_query(AuditLedger& ledger, const EntityIdentity& who, std::string filter, Rng& rng) {
  Bytes nonce = ledger.issue_nonce(rng);
  Bytes msg = audit_query_message(ledger.did(), nonce, filter);
  SchnorrSig sig = schnorr_sign(SchnorrGroup::standard(), msg, who.auth, rng);
  return ledger.query(QueryRequest{nonce, std::move(filter), AuthorityQueryAuth{who.lvc, who.key_id, sig}});
}

}  // namespace

QueryResult World::authority_query(std::string filter) {
  auto r = world_rng("authority-query");
  return signed_query(*audit_, auditor_authority_->id, std::move(filter), *r);
}

QueryResult World::admin_query(std::string filter) {
  auto r = world_rng("admin-query");
  return signed_query(*audit_, admin_, std::move(filter), *r);
}

QueryResult World::patient_query(Patient& p, std::string filter) {
  if (!p.credential) throw std::logic_error("patient has no credential");
  auto [rp, unused] = op_rngs(p, "audit-query");
  Bytes nonce = audit_->issue_nonce(*rp);
  Bytes msg = audit_query_message(audit_->did(), nonce, filter);
  PatientQueryAuth auth;
  auth.credential_proof =
      pok_pcred_prove(*p.credential, base_ctx_.credential_issuer, {}, audit_query_context(audit_->did(), nonce), *rp);
  std::set<Bytes> seen;
  auto claim = [&](const PatientVisit& v) {
    if (!v.key || !seen.insert(v.pseudonym_bytes()).second) return;
    auth.pseudonyms.push_back(PseudonymClaim{v.pseudonym_bytes(), ibs_sign(msg, *v.key, *rp)});
  };
  for (const auto& v : p.history) claim(v);
  if (p.visit) claim(*p.visit);
  return audit_->query(QueryRequest{nonce, std::move(filter), std::move(auth)});
}

}  // namespace hidm
