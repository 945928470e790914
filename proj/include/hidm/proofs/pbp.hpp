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

// Pseudonym binding proof: shows that (P1, P2) = (z^(r+h), r pk) for the
// identifier hash h the verifier computed itself, without revealing r.
//
//   T1 = z^t1, T2 = t2 pk, c = H(P1, P2, T1, T2, pk, h)
//   s1 = t1 + c r, s2 = t2 + c r
//   verify: z^s1 == T1 (P1 / z^h)^c and s2 pk == T2 + c P2
//
// In strict mode t1 = t2 and the verifier also requires s1 == s2, which
// forces the same r in both components.

#pragma once

#include "hidm/algebra/curve.hpp"
#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"
#include "hidm/pre/pre.hpp"

namespace hidm {

enum class PbpMode { kIndependent, kStrict };

struct PbProof {
  GT t1;
  G2 t2;
  Scalar c;
  Scalar s1;
  Scalar s2;

  static constexpr std::size_t kEncodedSize = GT::kEncodedSize + G2::kEncodedSize + 3 * Scalar::kEncodedSize;
  Bytes to_bytes() const;
  static PbProof from_bytes(ByteView b);
  bool operator==(const PbProof&) const = default;
};

Scalar pbp_challenge(const Pseudonym& pseudonym, const GT& t1, const G2& t2, const Scalar& h);

PbProof pbp_prove(const Pseudonym& pseudonym, const Scalar& r, const Scalar& h, Rng& rng,
                  PbpMode mode = PbpMode::kIndependent);
// Injected nonces; strict mode requires t1 == t2.
PbProof pbp_prove_with(const Pseudonym& pseudonym, const Scalar& r, const Scalar& h, const Scalar& t1,
                       const Scalar& t2);

bool pbp_verify(const Pseudonym& pseudonym, const PbProof& proof, const Scalar& h, PbpMode mode = PbpMode::kIndependent);

}  // namespace hidm
