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

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hidm/common/bytes.hpp"

namespace hidm {

// Randomness source injected into every scheme. Instances are not
// thread-safe; give each thread its own stream (see fork()).
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;
  // Independent child stream. For deterministic sources the child depends
  // only on (parent seed, label), never on how much the parent has produced.
  virtual std::unique_ptr<Rng> fork(std::string_view label) = 0;

  Bytes bytes(std::size_t n);
  Id16 id16();
  // RFC 9562 version-4 layout: version nibble 4, variant bits 10.
  Id16 uuid_v4();
  std::uint64_t next_u64();
  // Uniform double in [0, 1).
  double uniform();
};

// Operating-system entropy.
class SystemRng final : public Rng {
 public:
  void fill(std::span<std::uint8_t> out) override;
  std::unique_ptr<Rng> fork(std::string_view label) override;
};

// ChaCha20 keystream keyed by SHA-256(seed); used in test-vector mode so
// that complete protocol transcripts are reproducible.
class DeterministicRng final : public Rng {
 public:
  explicit DeterministicRng(std::string_view seed);
  ~DeterministicRng() override;
  DeterministicRng(const DeterministicRng&) = delete;
  DeterministicRng& operator=(const DeterministicRng&) = delete;

  void fill(std::span<std::uint8_t> out) override;
  std::unique_ptr<Rng> fork(std::string_view label) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Seed from HIDM_SEED when set (test-vector mode), otherwise nullopt.
std::optional<std::string> seed_from_env();
std::unique_ptr<Rng> make_rng(const std::optional<std::string>& seed);

}  // namespace hidm
