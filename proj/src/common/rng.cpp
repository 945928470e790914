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

#include "hidm/common/rng.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <cstdlib>
#include <stdexcept>

namespace hidm {

Bytes Rng::bytes(std::size_t n) {
  Bytes out(n);
  fill(out);
  return out;
}

Id16 Rng::id16() {
  Id16 id{};
  fill(id);
  return id;
}

Id16 Rng::uuid_v4() {
  Id16 id = id16();
  id[6] = static_cast<std::uint8_t>((id[6] & 0x0f) | 0x40);
  id[8] = static_cast<std::uint8_t>((id[8] & 0x3f) | 0x80);
  return id;
}

std::uint64_t Rng::next_u64() {
  std::array<std::uint8_t, 8> buf{};
  fill(buf);
  std::uint64_t v = 0;
  for (auto b : buf) v = (v << 8) | b;
  return v;
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

void SystemRng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
}

std::unique_ptr<Rng> SystemRng::fork(std::string_view) { return std::make_unique<SystemRng>(); }

struct DeterministicRng::Impl {
  std::string seed;
  EVP_CIPHER_CTX* ctx = nullptr;
};

DeterministicRng::DeterministicRng(std::string_view seed) : impl_(std::make_unique<Impl>()) {
  impl_->seed = std::string(seed);
  std::array<std::uint8_t, SHA256_DIGEST_LENGTH> key{};
  SHA256(reinterpret_cast<const unsigned char*>(seed.data()), seed.size(), key.data());
  std::array<std::uint8_t, 16> iv{};
  impl_->ctx = EVP_CIPHER_CTX_new();
  if (impl_->ctx == nullptr ||
      EVP_EncryptInit_ex(impl_->ctx, EVP_chacha20(), nullptr, key.data(), iv.data()) != 1) {
    throw std::runtime_error("chacha20 init failed");
  }
}

DeterministicRng::~DeterministicRng() {
  if (impl_ && impl_->ctx) EVP_CIPHER_CTX_free(impl_->ctx);
}

void DeterministicRng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  std::fill(out.begin(), out.end(), 0);
  int len = 0;
  if (EVP_EncryptUpdate(impl_->ctx, out.data(), &len, out.data(), static_cast<int>(out.size())) != 1) {
    throw std::runtime_error("chacha20 keystream failed");
  }
}

std::unique_ptr<Rng> DeterministicRng::fork(std::string_view label) {
  std::string child = impl_->seed;
  child += '/';
  child += label;
  return std::make_unique<DeterministicRng>(child);
}

std::optional<std::string> seed_from_env() {
  const char* s = std::getenv("HIDM_SEED");
  if (s == nullptr || *s == '\0') return std::nullopt;
  return std::string(s);
}

std::unique_ptr<Rng> make_rng(const std::optional<std::string>& seed) {
  if (seed) return std::make_unique<DeterministicRng>(*seed);
  return std::make_unique<SystemRng>();
}

}  // namespace hidm
