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

#include "hidm/common/error.hpp"

namespace hidm {

const char* reason_text(Reason r) {
  switch (r) {
    case Reason::kIdentityProofingFailed: return "identity proofing failed";
    case Reason::kCredentialProofRejected: return "credential proof rejected";
    case Reason::kPseudonymBindingRejected: return "pseudonym binding rejected";
    case Reason::kInvalidReEncryptionKey: return "invalid re-encryption key";
    case Reason::kCiphertextPseudonymMismatch: return "ciphertext/pseudonym mismatch";
    case Reason::kReplayRejected: return "replay rejected";
    case Reason::kTokenExpired: return "token expired";
    case Reason::kTokenSignatureInvalid: return "appointment token signature invalid";
    case Reason::kRequesterNotBound: return "requester not bound to pseudonym";
    case Reason::kMalformedPai: return "malformed PAI";
    case Reason::kInvalidSchedule: return "invalid schedule";
    case Reason::kConfirmationCodeInvalid: return "confirmation code invalid";
    case Reason::kBiometricMismatch: return "biometric verification failed";
    case Reason::kPseudonymTokenInvalid: return "pseudonym token invalid";
    case Reason::kInsufficientAuthorization: return "insufficient authorization";
    case Reason::kRecordReferenceInvalid: return "record reference invalid";
    case Reason::kLegitimacyRejected: return "legitimacy credential rejected";
    case Reason::kChannelRefused: return "channel refused";
    case Reason::kChannelReplay: return "stale channel frame";
    case Reason::kChannelIntegrity: return "channel frame authentication failed";
    case Reason::kTraceRefused: return "trace refused";
    case Reason::kUnknownPseudonym: return "unknown pseudonym";
    case Reason::kOriginMismatch: return "origin mismatch";
    case Reason::kUnauthorizedUpdate: return "unauthorized update";
    case Reason::kInvalidArgument: return "invalid argument";
  }
  return "unknown error";
}

}  // namespace hidm
