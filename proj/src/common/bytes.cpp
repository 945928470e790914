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

#include "hidm/common/bytes.hpp"

#include <algorithm>
#include <cstring>

#include "hidm/common/error.hpp"

namespace hidm {

namespace {
int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw DecodeError("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw DecodeError("invalid hex character");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

Id16 to_id16(ByteView b) {
  if (b.size() != 16) throw DecodeError("expected 16-byte identifier");
  Id16 id{};
  std::copy(b.begin(), b.end(), id.begin());
  return id;
}

void append(Bytes& out, ByteView data) { out.insert(out.end(), data.begin(), data.end()); }

void append_u32be(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void append_u64be(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint64_t read_u64be(ByteView b) {
  if (b.size() != 8) throw DecodeError("expected 8-byte integer");
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

FieldWriter& FieldWriter::field(ByteView data) {
  append_u32be(buf_, static_cast<std::uint32_t>(data.size()));
  append(buf_, data);
  return *this;
}

FieldWriter& FieldWriter::field(std::string_view s) {
  return field(ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

FieldWriter& FieldWriter::u64(std::uint64_t v) {
  Bytes tmp;
  append_u64be(tmp, v);
  return field(tmp);
}

Bytes FieldReader::field() {
  if (data_.size() - pos_ < 4) throw DecodeError("truncated field length");
  std::uint32_t len = 0;
  for (int i = 0; i < 4; ++i) len = (len << 8) | data_[pos_ + i];
  pos_ += 4;
  if (data_.size() - pos_ < len) throw DecodeError("truncated field body");
  Bytes out(data_.begin() + pos_, data_.begin() + pos_ + len);
  pos_ += len;
  return out;
}

std::uint64_t FieldReader::u64() { return read_u64be(field()); }

bool contains_subsequence(ByteView haystack, ByteView needle) {
  if (needle.empty()) return true;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

}  // namespace hidm
