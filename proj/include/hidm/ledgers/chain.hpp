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

// Append-only hash chain with optional JSON-lines persistence.
//
// Each entry stores a canonical JSON payload and
//   entry_hash = SHA-256(prev_hash || payload), prev_hash of entry 0 = 0^32.
// A persisted chain writes one entry per line and keeps the entry count and
// head hash in a "<file>.head" sidecar, so truncating the tail is detected.

#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "hidm/common/bytes.hpp"
#include "json.hpp"

namespace hidm {

struct LedgerEntry {
  std::uint64_t index = 0;
  std::string payload;  // canonical JSON text
  Digest32 prev_hash{};
  Digest32 entry_hash{};

  std::string to_line() const;
  // Strict parse: the line must be exactly the canonical rendering.
  static std::optional<LedgerEntry> from_line(std::string_view line);
};

Digest32 chain_entry_hash(const Digest32& prev, std::string_view payload);

class HashChain {
 public:
  // With a path, the file and its sidecar are created (or truncated).
  explicit HashChain(std::optional<std::filesystem::path> file = {});
  HashChain(const HashChain&) = delete;
  HashChain& operator=(const HashChain&) = delete;

  std::uint64_t append(const nlohmann::json& payload);

  std::vector<LedgerEntry> entries() const;
  std::size_t size() const;
  Digest32 head() const;
  bool verify() const;
  const std::optional<std::filesystem::path>& file() const { return file_; }

 private:
  void persist(const LedgerEntry& e);

  mutable std::shared_mutex mu_;
  std::vector<LedgerEntry> entries_;
  std::optional<std::filesystem::path> file_;
};

bool chain_verify(std::span<const LedgerEntry> entries);

struct ChainFileReport {
  bool ok = false;
  std::size_t entries = 0;
  std::string error;
};

std::filesystem::path chain_head_path(const std::filesystem::path& file);
ChainFileReport verify_chain_file(const std::filesystem::path& file);

}  // namespace hidm
