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

// Non-interactive proofs of possession of a CL signature with selective
// disclosure. The challenge binds the issuer key, the caller's context
// string and every disclosed (slot, value) pair.
//
// CL-RSA: A' = A S^rA and a Schnorr-style proof of (e, v', hidden m) for
//   Z * prod_D R^-m * A'^-2^(le-1) = A'^(e - 2^(le-1)) S^v' prod_H R^m.
// CL-pairing: the signature is re-randomized by r', its c component is
// further blinded by r, and the prover shows knowledge of 1/r and the
// hidden messages in
//   e(c^, g2)^(1/r) e(-sum_H m_i B~_i, X) = e(a~ + sum_D m_i B~_i, X).

#pragma once

#include <map>
#include <set>
#include <span>
#include <variant>

#include "hidm/algebra/curve.hpp"
#include "hidm/common/bigint.hpp"
#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"
#include "hidm/signatures/cl.hpp"

namespace hidm {

struct ClRsaProof {
  BigInt a_prime;
  BigInt c;
  BigInt e_hat;
  BigInt v_hat;
  std::map<std::size_t, BigInt> m_hat;  // hidden slots only

  bool operator==(const ClRsaProof&) const = default;
};

struct ClPairingProof {
  cl_pairing::Signature randomized;  // c field holds the blinded c^
  Scalar c;
  Scalar s_rho;
  std::map<std::size_t, Scalar> s_m;  // hidden slots only

  bool operator==(const ClPairingProof&) const = default;
};

struct ClProof {
  std::map<std::size_t, Bytes> disclosed;
  std::variant<ClRsaProof, ClPairingProof> body;

  ClVariant variant() const {
    return std::holds_alternative<ClRsaProof>(body) ? ClVariant::kRsa : ClVariant::kPairing;
  }
  Bytes to_bytes() const;
  static ClProof from_bytes(ByteView b);
  bool operator==(const ClProof&) const = default;
};

// Throws ProtocolError(kCredentialProofRejected) if `sig` does not verify on
// `attrs`, or std::invalid_argument for an out-of-range slot.
ClProof cl_prove(const ClPublicKey& pub, std::span<const Bytes> attrs, const ClSignature& sig,
                 const std::set<std::size_t>& disclose, ByteView context, Rng& rng);

bool cl_proof_verify(const ClProof& proof, const ClPublicKey& pub, ByteView context);

}  // namespace hidm
