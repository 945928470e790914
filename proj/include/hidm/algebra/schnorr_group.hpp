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

#include "hidm/common/bigint.hpp"

namespace hidm {

// Prime-order subgroup of Z_p^*: q | p - 1 and g generates the order-q
// subgroup. Elements encode as fixed-width big-endian integers of
// byte_length(p) bytes.
struct SchnorrGroup {
  BigInt p;
  BigInt q;
  BigInt g;

  std::size_t element_size() const { return byte_length(p); }
  std::size_t scalar_size() const { return byte_length(q); }
  // 1 < y < p and y^q = 1 (mod p).
  bool is_element(const BigInt& y) const;
  // Throws std::invalid_argument unless p, q prime, q | p-1 and g valid.
  void validate() const;

  // 3072-bit modulus with a 256-bit prime-order subgroup (128-bit security).
  static const SchnorrGroup& standard();
};

}  // namespace hidm
