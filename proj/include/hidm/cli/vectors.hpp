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

// Test-vector emission: a seeded deployment runs one full visit and dumps
// the artifacts, standalone scheme vectors and digests of the transcript
// and ledgers, so other implementations can check byte-level agreement.

#pragma once

#include <string>

#include "json.hpp"

namespace hidm {

inline constexpr std::string_view kDefaultVectorSeed = "hidm-test-vectors";

nlohmann::json emit_vectors(const std::string& seed);

}  // namespace hidm
