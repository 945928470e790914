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

// Partially blind Schnorr signatures. The signer fixes the public info
// `exp`; the user's message (an ATI) stays hidden behind a commitment and
// the blinding factors alpha, beta.
//
//   signer -> user : R = g^r
//   user           : commit = H(ATI || t), R' = R g^alpha Y^beta,
//                    cu' = H(R' || commit), cu = cu' + beta
//   user -> signer : cu
//   signer         : cs = H(Y || exp), s' = r + (cu + cs) x
//   signer -> user : s', exp
//   user           : s = s' + alpha, c = cu' + cs; signature (c, s, t)
//
// Verification recomputes R^ = g^s Y^-c, which equals R', and accepts iff
// c == H(R^ || H(ATI || t)) + H(Y || exp)  (mod q).

#pragma once

#include <cstdint>
#include <optional>

#include "hidm/algebra/schnorr_group.hpp"
#include "hidm/common/bigint.hpp"
#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"
#include "hidm/signatures/schnorr.hpp"

namespace hidm {

inline constexpr std::size_t kPbsNonceSize = 32;

struct PartiallyBlindSig {
  BigInt c;
  BigInt s;
  Bytes t;  // commitment nonce for the hidden message

  Bytes to_bytes(const SchnorrGroup& group) const;
  static PartiallyBlindSig from_bytes(const SchnorrGroup& group, ByteView b);
  bool operator==(const PartiallyBlindSig&) const = default;
};

// Everything the signer observes during one issuance.
struct PbsSignerTranscript {
  BigInt commitment;  // R
  BigInt blinded_challenge;  // cu
  std::int64_t exp = 0;
  BigInt blinded_response;  // s'
};

struct PbsSignerResponse {
  BigInt blinded_response;  // s'
  std::int64_t exp = 0;
};

class PbsSignerSession {
 public:
  PbsSignerSession(const SchnorrGroup& group, const SchnorrKeypair& key, Rng& rng);
  // Fixed nonce, for hand-checked vectors.
  PbsSignerSession(const SchnorrGroup& group, const SchnorrKeypair& key, const BigInt& nonce);

  const BigInt& commitment() const { return transcript_.commitment; }
  // Single use; throws std::logic_error on a second call.
  PbsSignerResponse respond(const BigInt& blinded_challenge, std::int64_t exp);
  const PbsSignerTranscript& transcript() const { return transcript_; }

 private:
  const SchnorrGroup& group_;
  const SchnorrKeypair& key_;
  BigInt nonce_;
  bool responded_ = false;
  PbsSignerTranscript transcript_;
};

class PbsUserSession {
 public:
  PbsUserSession(const SchnorrGroup& group, const BigInt& signer_public, ByteView message, Rng& rng);
  // Fixed blinding values, for hand-checked vectors.
  PbsUserSession(const SchnorrGroup& group, const BigInt& signer_public, ByteView message, const BigInt& alpha,
                 const BigInt& beta, Bytes t);

  // Returns cu. Throws ProtocolError when R is not a subgroup element.
  BigInt blind(const BigInt& signer_commitment);
  // Unblinds and checks the result; throws ProtocolError if the signer's
  // response does not yield a valid signature for `expected_exp`.
  PartiallyBlindSig finish(const PbsSignerResponse& response, std::optional<std::int64_t> expected_exp = {});

  const BigInt& blinded_commitment() const { return blinded_commitment_; }  // R'

 private:
  const SchnorrGroup& group_;
  BigInt signer_public_;
  Bytes message_;
  BigInt alpha_;
  BigInt beta_;
  Bytes t_;
  BigInt blinded_commitment_;
  BigInt user_challenge_;  // cu'
  bool blinded_ = false;
};

struct PbsIssueResult {
  PartiallyBlindSig sig;
  PbsSignerTranscript transcript;
};

// Runs the four-message flow in-process.
PbsIssueResult pbs_issue(const SchnorrGroup& group, std::int64_t exp, ByteView message, const SchnorrKeypair& signer,
                         Rng& user_rng, Rng& signer_rng);

bool pbs_verify(const SchnorrGroup& group, ByteView message, std::int64_t exp, const PartiallyBlindSig& sig,
                const BigInt& signer_public);

BigInt pbs_info_challenge(const SchnorrGroup& group, const BigInt& signer_public, std::int64_t exp);
Bytes pbs_message_commitment(ByteView message, ByteView t);
BigInt pbs_user_challenge(const SchnorrGroup& group, const BigInt& blinded_commitment, ByteView message_commitment);

}  // namespace hidm
