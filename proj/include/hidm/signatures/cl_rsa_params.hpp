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

namespace hidm::cl_rsa {

struct SafePrimePair {
  BigInt p;
  BigInt q;
};

// Frozen 1536-bit safe primes backing the default 3072-bit modulus.
const SafePrimePair& standard_safe_primes();

}  // namespace hidm::cl_rsa
