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

#include "hidm/ledgers/chain.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hidm/algebra/hash.hpp"
#include "hidm/common/error.hpp"

namespace hidm {

namespace {

std::string head_text(std::size_t count, const Digest32& head) {
  nlohmann::json j{{"count", count}, {"head", to_hex(head)}};
  return j.dump() + "\n";
}

bool parse_digest(const nlohmann::json& j, Digest32& out) {
  if (!j.is_string()) return false;
  const auto& s = j.get_ref<const std::string&>();
  if (s.size() != 64) return false;
  try {
    Bytes b = from_hex(s);
    std::copy(b.begin(), b.end(), out.begin());
  } catch (const DecodeError&) {
    return false;
  }
  return true;
}

}  // namespace

Digest32 chain_entry_hash(const Digest32& prev, std::string_view payload) {
  Bytes input(prev.begin(), prev.end());
  append(input, to_bytes(payload));
  return sha256(input);
}

std::string LedgerEntry::to_line() const {
  nlohmann::json j;
  j["index"] = index;
  j["payload"] = nlohmann::json::parse(payload);
  j["prev"] = to_hex(prev_hash);
  j["hash"] = to_hex(entry_hash);
  return j.dump();
}

std::optional<LedgerEntry> LedgerEntry::from_line(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.size() != 4) return std::nullopt;
  if (!j.contains("index") || !j["index"].is_number_unsigned() || !j.contains("payload")) return std::nullopt;
  LedgerEntry e;
  e.index = j["index"].get<std::uint64_t>();
  e.payload = j["payload"].dump();
  if (!j.contains("prev") || !parse_digest(j["prev"], e.prev_hash)) return std::nullopt;
  if (!j.contains("hash") || !parse_digest(j["hash"], e.entry_hash)) return std::nullopt;
  if (e.to_line() != line) return std::nullopt;
  return e;
}

bool chain_verify(std::span<const LedgerEntry> entries) {
  Digest32 prev{};
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const LedgerEntry& e = entries[i];
    if (e.index != i || e.prev_hash != prev) return false;
    if (chain_entry_hash(prev, e.payload) != e.entry_hash) return false;
    prev = e.entry_hash;
  }
  return true;
}

HashChain::HashChain(std::optional<std::filesystem::path> file) : file_(std::move(file)) {
  if (file_) {
    if (file_->has_parent_path()) std::filesystem::create_directories(file_->parent_path());
    std::ofstream(*file_, std::ios::trunc);
    std::ofstream(chain_head_path(*file_), std::ios::trunc) << head_text(0, Digest32{});
  }
}

std::uint64_t HashChain::append(const nlohmann::json& payload) {
  std::unique_lock lock(mu_);
  LedgerEntry e;
  e.index = entries_.size();
  e.payload = payload.dump();
  e.prev_hash = entries_.empty() ? Digest32{} : entries_.back().entry_hash;
  e.entry_hash = chain_entry_hash(e.prev_hash, e.payload);
  if (file_) persist(e);
  entries_.push_back(std::move(e));
  return entries_.back().index;
}

void HashChain::persist(const LedgerEntry& e) {
  {
    std::ofstream out(*file_, std::ios::app);
    out << e.to_line() << '\n';
    if (!out) throw std::runtime_error("ledger write failed: " + file_->string());
  }
  std::filesystem::path head = chain_head_path(*file_);
  std::filesystem::path tmp = head;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << head_text(e.index + 1, e.entry_hash);
    if (!out) throw std::runtime_error("ledger head write failed: " + head.string());
  }
  std::filesystem::rename(tmp, head);
}

std::vector<LedgerEntry> HashChain::entries() const {
  std::shared_lock lock(mu_);
  return entries_;
}

std::size_t HashChain::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

Digest32 HashChain::head() const {
  std::shared_lock lock(mu_);
  return entries_.empty() ? Digest32{} : entries_.back().entry_hash;
}

bool HashChain::verify() const {
  std::shared_lock lock(mu_);
  return chain_verify(entries_);
}

std::filesystem::path chain_head_path(const std::filesystem::path& file) {
  std::filesystem::path p = file;
  p += ".head";
  return p;
}

ChainFileReport verify_chain_file(const std::filesystem::path& file) {
  ChainFileReport report;
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    report.error = "cannot open " + file.string();
    return report;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (!text.empty() && text.back() != '\n') {
    report.error = "ledger file does not end with a newline";
    return report;
  }
  std::vector<LedgerEntry> entries;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    auto e = LedgerEntry::from_line(std::string_view(text).substr(pos, nl - pos));
    if (!e) {
      report.error = "malformed entry at line " + std::to_string(entries.size() + 1);
      return report;
    }
    entries.push_back(std::move(*e));
    pos = nl + 1;
  }
  report.entries = entries.size();
  if (!chain_verify(entries)) {
    report.error = "hash chain does not verify";
    return report;
  }
  std::ifstream head_in(chain_head_path(file), std::ios::binary);
  std::stringstream head_buf;
  head_buf << head_in.rdbuf();
  Digest32 head = entries.empty() ? Digest32{} : entries.back().entry_hash;
  if (!head_in || head_buf.str() != head_text(entries.size(), head)) {
    report.error = "head pointer does not match the chain (truncated or altered)";
    return report;
  }
  report.ok = true;
  return report;
}

}  // namespace hidm
