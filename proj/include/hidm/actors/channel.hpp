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

// Mutually authenticated channel between two DID holders.
//
//   handshake: ephemeral DH over the Schnorr group; each side signs
//              H(did_a, did_b, E_a, E_b) with an authentication key listed
//              in its DID document
//   keys:      one HKDF-derived AES-256-GCM key per direction
//   frames:    nonce = 0^4 || seq; AAD binds session, sender, receiver, seq;
//              receivers accept only the next expected seq
//
// Every frame, handshake included, is appended to an optional ChannelLog,
// which is what a network eavesdropper would see.

#pragma once

#include <array>
#include <mutex>
#include <string>
#include <vector>

#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"
#include "hidm/ledgers/did.hpp"
#include "hidm/signatures/schnorr.hpp"
#include "json.hpp"

namespace hidm {

struct ChannelParty {
  std::string role;
  std::string did;
  std::string key_id;
  const SchnorrKeypair* auth = nullptr;
};

struct Frame {
  std::uint64_t seq = 0;
  Bytes sealed;
};

struct FrameRecord {
  std::string from_role;
  std::string to_role;
  std::string label;
  std::uint64_t seq = 0;
  Bytes wire;
};

class ChannelLog {
 public:
  void append(FrameRecord r);
  std::vector<FrameRecord> frames() const;
  // All wire bytes, concatenated in order.
  Bytes wire_bytes() const;
  nlohmann::json to_json() const;

 private:
  mutable std::mutex mu_;
  std::vector<FrameRecord> frames_;
};

class SecureChannel {
 public:
  enum Side { kA = 0, kB = 1 };

  // Throws ProtocolError(kChannelRefused) when a DID does not resolve, is
  // revoked, or a handshake signature fails.
  static SecureChannel establish(const ChannelParty& a, const ChannelParty& b, const DidLedger& dids, Rng& rng_a,
                                 Rng& rng_b, ChannelLog* log = nullptr);

  Frame seal(Side from, std::string_view label, ByteView plaintext);
  // Throws ProtocolError(kChannelReplay) for an unexpected seq and
  // ProtocolError(kChannelIntegrity) for a failed tag.
  Bytes open(Side to, const Frame& frame);
  // seal + open at the peer; the receiver's view of a JSON message.
  nlohmann::json send(Side from, std::string_view label, const nlohmann::json& message);

  const ChannelParty& party(Side s) const { return parties_[s]; }
  const Digest32& session_id() const { return session_; }

 private:
  SecureChannel() = default;
  Bytes aad(Side from, std::uint64_t seq) const;

  std::array<ChannelParty, 2> parties_;
  std::array<Bytes, 2> keys_;  // indexed by sender
  std::array<std::uint64_t, 2> next_send_{0, 0};
  std::array<std::uint64_t, 2> next_recv_{0, 0};  // indexed by receiver
  Digest32 session_{};
  ChannelLog* log_ = nullptr;
};

}  // namespace hidm
