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

#include "hidm/actors/channel.hpp"

#include "hidm/algebra/hash.hpp"
#include "hidm/algebra/schnorr_group.hpp"
#include "hidm/common/aead.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

void ChannelLog::append(FrameRecord r) {
  std::lock_guard lock(mu_);
  frames_.push_back(std::move(r));
}

std::vector<FrameRecord> ChannelLog::frames() const {
  std::lock_guard lock(mu_);
  return frames_;
}

Bytes ChannelLog::wire_bytes() const {
  std::lock_guard lock(mu_);
  Bytes out;
  for (const auto& f : frames_) hidm::append(out, f.wire);
  return out;
}

nlohmann::json ChannelLog::to_json() const {
  std::lock_guard lock(mu_);
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : frames_) {
    out.push_back({{"from", f.from_role}, {"to", f.to_role}, {"label", f.label}, {"seq", f.seq}, {"wire", to_hex(f.wire)}});
  }
  return out;
}

namespace {

Bytes handshake_auth_message(std::string_view side, const Digest32& th) {
  return FieldWriter().field("HIDM/channel-auth").field(side).field(th).bytes();
}

void verify_party(const ChannelParty& p, const DidLedger& dids, ByteView msg, const SchnorrSig& sig) {
  auto doc = dids.resolve(p.did);
  if (!doc) throw ProtocolError(Reason::kChannelRefused, "DID does not resolve: " + p.did);
  if (dids.is_revoked(p.did)) throw ProtocolError(Reason::kChannelRefused, "DID revoked: " + p.did);
  if (!did_key_verify(*doc, p.key_id, msg, sig)) {
    throw ProtocolError(Reason::kChannelRefused, "key proof failed for " + p.did);
  }
}

}  // namespace

SecureChannel SecureChannel::establish(const ChannelParty& a, const ChannelParty& b, const DidLedger& dids,
                                       Rng& rng_a, Rng& rng_b, ChannelLog* log) {
  if (!a.auth || !b.auth) throw std::invalid_argument("channel party without an authentication key");
  const SchnorrGroup& g = SchnorrGroup::standard();
  const std::size_t w = g.element_size();

  BigInt ea = random_nonzero_below(rng_a, g.q);
  BigInt eb = random_nonzero_below(rng_b, g.q);
  BigInt pub_a = powm(g.g, ea, g.p);
  BigInt pub_b = powm(g.g, eb, g.p);
  if (!g.is_element(pub_a) || !g.is_element(pub_b)) throw ProtocolError(Reason::kChannelRefused, "bad ephemeral key");

  Digest32 th = sha256(FieldWriter()
                           .field("HIDM/channel-handshake")
                           .field(a.did)
                           .field(b.did)
                           .field(bigint_to_bytes(pub_a, w))
                           .field(bigint_to_bytes(pub_b, w))
                           .bytes());
  Bytes msg_a = handshake_auth_message("initiator", th);
  Bytes msg_b = handshake_auth_message("responder", th);
  SchnorrSig sig_a = schnorr_sign(g, msg_a, *a.auth, rng_a);
  SchnorrSig sig_b = schnorr_sign(g, msg_b, *b.auth, rng_b);

  if (log) {
    Bytes hello_a = FieldWriter().field(a.did).field(bigint_to_bytes(pub_a, w)).field(sig_a.to_bytes(g)).bytes();
    Bytes hello_b = FieldWriter().field(b.did).field(bigint_to_bytes(pub_b, w)).field(sig_b.to_bytes(g)).bytes();
    log->append(FrameRecord{a.role, b.role, "handshake", 0, std::move(hello_a)});
    log->append(FrameRecord{b.role, a.role, "handshake", 0, std::move(hello_b)});
  }
  verify_party(b, dids, msg_b, sig_b);  // checked by a
  verify_party(a, dids, msg_a, sig_a);  // checked by b

  Bytes shared = bigint_to_bytes(powm(pub_b, ea, g.p), w);
  if (shared != bigint_to_bytes(powm(pub_a, eb, g.p), w)) throw std::logic_error("channel key agreement mismatch");

  SecureChannel ch;
  ch.parties_ = {a, b};
  ch.session_ = th;
  ch.keys_[kA] = hkdf_sha256(th, shared, to_bytes(std::string_view("HIDM/channel a->b")), kAeadKeySize);
  ch.keys_[kB] = hkdf_sha256(th, shared, to_bytes(std::string_view("HIDM/channel b->a")), kAeadKeySize);
  ch.log_ = log;
  return ch;
}

Bytes SecureChannel::aad(Side from, std::uint64_t seq) const {
  Side to = from == kA ? kB : kA;
  return FieldWriter().field(session_).field(parties_[from].did).field(parties_[to].did).u64(seq).bytes();
}

Frame SecureChannel::seal(Side from, std::string_view label, ByteView plaintext) {
  std::uint64_t seq = next_send_[from]++;
  Bytes nonce(4, 0);
  append_u64be(nonce, seq);
  Frame f{seq, aead_seal_with_nonce(keys_[from], nonce, plaintext, aad(from, seq))};
  if (log_) {
    Side to = from == kA ? kB : kA;
    Bytes wire;
    append_u64be(wire, seq);
    hidm::append(wire, f.sealed);
    log_->append(FrameRecord{parties_[from].role, parties_[to].role, std::string(label), seq, std::move(wire)});
  }
  return f;
}

Bytes SecureChannel::open(Side to, const Frame& frame) {
  Side from = to == kA ? kB : kA;
  if (frame.seq != next_recv_[to]) throw ProtocolError(Reason::kChannelReplay);
  auto pt = aead_open(keys_[from], frame.sealed, aad(from, frame.seq));
  if (!pt) throw ProtocolError(Reason::kChannelIntegrity);
  ++next_recv_[to];
  return *pt;
}

nlohmann::json SecureChannel::send(Side from, std::string_view label, const nlohmann::json& message) {
  Frame f = seal(from, label, to_bytes(message.dump()));
  Bytes pt = open(from == kA ? kB : kA, f);
  return nlohmann::json::parse(pt.begin(), pt.end());
}

}  // namespace hidm
