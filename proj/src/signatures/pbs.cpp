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

#include "hidm/signatures/pbs.hpp"

#include <stdexcept>

#include "hidm/algebra/hash.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

Bytes PartiallyBlindSig::to_bytes(const SchnorrGroup& group) const {
  Bytes out = bigint_to_bytes(c, group.scalar_size());
  append(out, bigint_to_bytes(s, group.scalar_size()));
  append(out, t);
  return out;
}

PartiallyBlindSig PartiallyBlindSig::from_bytes(const SchnorrGroup& group, ByteView b) {
  std::size_t w = group.scalar_size();
  if (b.size() != 2 * w + kPbsNonceSize) throw DecodeError("partially blind signature has wrong length");
  PartiallyBlindSig sig{bigint_from_bytes(b.first(w)), bigint_from_bytes(b.subspan(w, w)),
                        Bytes(b.begin() + 2 * w, b.end())};
  if (sig.c >= group.q || sig.s >= group.q) throw DecodeError("partially blind signature scalar out of range");
  return sig;
}

BigInt pbs_info_challenge(const SchnorrGroup& group, const BigInt& signer_public, std::int64_t exp) {
  Bytes input =
      FieldWriter().field(bigint_to_bytes(signer_public, group.element_size())).u64(static_cast<std::uint64_t>(exp)).bytes();
  return hash_to_field(tags::kPbsInfo, input, group.q);
}

Bytes pbs_message_commitment(ByteView message, ByteView t) {
  Bytes input = FieldWriter().field(tags::kPbsCommit).field(message).field(t).bytes();
  return to_bytes(sha256(input));
}

BigInt pbs_user_challenge(const SchnorrGroup& group, const BigInt& blinded_commitment, ByteView message_commitment) {
  Bytes input =
      FieldWriter().field(bigint_to_bytes(blinded_commitment, group.element_size())).field(message_commitment).bytes();
  return hash_to_field(tags::kPbs, input, group.q);
}

// ---- signer ----------------------------------------------------------------

PbsSignerSession::PbsSignerSession(const SchnorrGroup& group, const SchnorrKeypair& key, Rng& rng)
    : PbsSignerSession(group, key, random_nonzero_below(rng, group.q)) {}

PbsSignerSession::PbsSignerSession(const SchnorrGroup& group, const SchnorrKeypair& key, const BigInt& nonce)
    : group_(group), key_(key), nonce_(nonce) {
  transcript_.commitment = powm(group_.g, nonce_, group_.p);
}

PbsSignerResponse PbsSignerSession::respond(const BigInt& blinded_challenge, std::int64_t exp) {
  if (responded_) throw std::logic_error("partially blind signer session already used");
  responded_ = true;
  BigInt cu = mod(blinded_challenge, group_.q);
  BigInt cs = pbs_info_challenge(group_, key_.y, exp);
  BigInt combined = mod(cu + cs, group_.q);
  BigInt s_prime = schnorr_respond(group_, nonce_, combined, key_.x);
  nonce_ = 0;
  transcript_.blinded_challenge = cu;
  transcript_.exp = exp;
  transcript_.blinded_response = s_prime;
  return PbsSignerResponse{s_prime, exp};
}

// ---- user ------------------------------------------------------------------

PbsUserSession::PbsUserSession(const SchnorrGroup& group, const BigInt& signer_public, ByteView message, Rng& rng)
    : PbsUserSession(group, signer_public, message, random_below(rng, group.q), random_below(rng, group.q),
                     rng.bytes(kPbsNonceSize)) {}

PbsUserSession::PbsUserSession(const SchnorrGroup& group, const BigInt& signer_public, ByteView message,
                               const BigInt& alpha, const BigInt& beta, Bytes t)
    : group_(group),
      signer_public_(signer_public),
      message_(message.begin(), message.end()),
      alpha_(alpha),
      beta_(beta),
      t_(std::move(t)) {
  if (t_.size() != kPbsNonceSize) throw std::invalid_argument("commitment nonce must be 32 bytes");
}

BigInt PbsUserSession::blind(const BigInt& signer_commitment) {
  if (!group_.is_element(signer_commitment)) {
    throw ProtocolError(Reason::kInvalidArgument, "signer commitment outside the subgroup");
  }
  BigInt g_alpha = powm(group_.g, alpha_, group_.p);
  BigInt y_beta = powm(signer_public_, beta_, group_.p);
  blinded_commitment_ = mod(signer_commitment * g_alpha * y_beta, group_.p);
  user_challenge_ = pbs_user_challenge(group_, blinded_commitment_, pbs_message_commitment(message_, t_));
  blinded_ = true;
  return mod(user_challenge_ + beta_, group_.q);
}

PartiallyBlindSig PbsUserSession::finish(const PbsSignerResponse& response, std::optional<std::int64_t> expected_exp) {
  if (!blinded_) throw std::logic_error("blind() must precede finish()");
  if (expected_exp && *expected_exp != response.exp) {
    throw ProtocolError(Reason::kTokenSignatureInvalid, "signer changed the common information");
  }
  BigInt cs = pbs_info_challenge(group_, signer_public_, response.exp);
  PartiallyBlindSig sig{mod(user_challenge_ + cs, group_.q), mod(response.blinded_response + alpha_, group_.q), t_};
  if (!pbs_verify(group_, message_, response.exp, sig, signer_public_)) {
    throw ProtocolError(Reason::kTokenSignatureInvalid, "signer response does not unblind to a valid signature");
  }
  return sig;
}

PbsIssueResult pbs_issue(const SchnorrGroup& group, std::int64_t exp, ByteView message, const SchnorrKeypair& signer,
                         Rng& user_rng, Rng& signer_rng) {
  PbsSignerSession signer_session(group, signer, signer_rng);
  PbsUserSession user(group, signer.y, message, user_rng);
  BigInt cu = user.blind(signer_session.commitment());
  PbsSignerResponse response = signer_session.respond(cu, exp);
  PartiallyBlindSig sig = user.finish(response, exp);
  return PbsIssueResult{std::move(sig), signer_session.transcript()};
}

bool pbs_verify(const SchnorrGroup& group, ByteView message, std::int64_t exp, const PartiallyBlindSig& sig,
                const BigInt& signer_public) {
  if (sig.c < 0 || sig.c >= group.q || sig.s < 0 || sig.s >= group.q) return false;
  if (sig.t.size() != kPbsNonceSize) return false;
  if (!group.is_element(signer_public)) return false;
  BigInt recommitted = schnorr_recommit(group, sig.c, sig.s, signer_public);
  BigInt cu_prime = pbs_user_challenge(group, recommitted, pbs_message_commitment(message, sig.t));
  BigInt cs = pbs_info_challenge(group, signer_public, exp);
  return mod(cu_prime + cs, group.q) == sig.c;
}

}  // namespace hidm
