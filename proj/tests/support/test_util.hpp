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

// Shared helpers for the unit suites.

#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "hidm/common/rng.hpp"

namespace hidm::testing {

// Deterministic stream per test label, so failures reproduce.
inline std::unique_ptr<Rng> rng_for(std::string_view label) {
  return make_rng(std::string("hidm-unit-tests/") + std::string(label));
}

inline Bytes flip_bit(Bytes b, std::size_t bit) {
  b[(bit / 8) % b.size()] ^= static_cast<std::uint8_t>(1u << (bit % 8));
  return b;
}

}  // namespace hidm::testing
