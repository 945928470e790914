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

#pragma once

#include <stdexcept>
#include <string>

namespace hidm {

// Malformed byte or JSON encodings.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Stable rejection reasons surfaced by protocol steps. The message text of a
// ProtocolError is the canonical human-readable reason for each code.
enum class Reason {
  kIdentityProofingFailed,
  kCredentialProofRejected,
  kPseudonymBindingRejected,
  kInvalidReEncryptionKey,
  kCiphertextPseudonymMismatch,
  kReplayRejected,
  kTokenExpired,
  kTokenSignatureInvalid,
  kRequesterNotBound,
  kMalformedPai,
  kInvalidSchedule,
  kConfirmationCodeInvalid,
  kBiometricMismatch,
  kPseudonymTokenInvalid,
  kInsufficientAuthorization,
  kRecordReferenceInvalid,
  kLegitimacyRejected,
  kChannelRefused,
  kChannelReplay,
  kChannelIntegrity,
  kTraceRefused,
  kUnknownPseudonym,
  kOriginMismatch,
  kUnauthorizedUpdate,
  kInvalidArgument,
};

const char* reason_text(Reason r);

class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(Reason reason) : std::runtime_error(reason_text(reason)), reason_(reason) {}
  ProtocolError(Reason reason, const std::string& detail)
      : std::runtime_error(std::string(reason_text(reason)) + ": " + detail), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

}  // namespace hidm
