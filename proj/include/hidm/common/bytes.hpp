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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hidm {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using Id16 = std::array<std::uint8_t, 16>;
using Digest32 = std::array<std::uint8_t, 32>;

std::string to_hex(ByteView data);
// Throws DecodeError on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }
inline std::string to_string(ByteView b) { return std::string(b.begin(), b.end()); }

template <std::size_t N>
Bytes to_bytes(const std::array<std::uint8_t, N>& a) {
  return Bytes(a.begin(), a.end());
}

// Throws DecodeError when the size differs.
Id16 to_id16(ByteView b);

void append(Bytes& out, ByteView data);
void append_u32be(Bytes& out, std::uint32_t v);
void append_u64be(Bytes& out, std::uint64_t v);
std::uint64_t read_u64be(ByteView b);

// Length-prefixed concatenation: each field is preceded by its u32 big-endian
// length, so distinct field tuples never encode to the same byte string.
class FieldWriter {
 public:
  FieldWriter& field(ByteView data);
  FieldWriter& field(std::string_view s);
  FieldWriter& u64(std::uint64_t v);
  const Bytes& bytes() const& { return buf_; }
  Bytes bytes() && { return std::move(buf_); }

 private:
  Bytes buf_;
};

// Inverse of FieldWriter; throws DecodeError on truncated input.
class FieldReader {
 public:
  explicit FieldReader(ByteView data) : data_(data) {}
  Bytes field();
  std::uint64_t u64();
  bool done() const { return pos_ == data_.size(); }

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

// True when `needle` occurs anywhere in `haystack`.
bool contains_subsequence(ByteView haystack, ByteView needle);

}  // namespace hidm
