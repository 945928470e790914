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

#include "hidm/common/aead.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace hidm {

namespace {

struct CtxDeleter {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};
using CtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter>;

void check_key(ByteView key) {
  if (key.size() != kAeadKeySize) throw std::invalid_argument("AEAD key must be 32 bytes");
}

}  // namespace

Bytes aead_seal(ByteView key, ByteView plaintext, ByteView aad, Rng& rng) {
  Bytes nonce = rng.bytes(kAeadNonceSize);
  return aead_seal_with_nonce(key, nonce, plaintext, aad);
}

Bytes aead_seal_with_nonce(ByteView key, ByteView nonce, ByteView plaintext, ByteView aad) {
  check_key(key);
  if (nonce.size() != kAeadNonceSize) throw std::invalid_argument("AEAD nonce must be 12 bytes");
  CtxPtr ctx(EVP_CIPHER_CTX_new());
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), nonce.data()) != 1) {
    throw std::runtime_error("AES-GCM init failed");
  }
  Bytes out(nonce.begin(), nonce.end());
  out.resize(kAeadNonceSize + plaintext.size() + kAeadTagSize);
  int len = 0;
  if (!aad.empty() && EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) != 1) {
    throw std::runtime_error("AES-GCM aad failed");
  }
  if (EVP_EncryptUpdate(ctx.get(), out.data() + kAeadNonceSize, &len, plaintext.data(),
                        static_cast<int>(plaintext.size())) != 1) {
    throw std::runtime_error("AES-GCM encrypt failed");
  }
  int tail = 0;
  if (EVP_EncryptFinal_ex(ctx.get(), out.data() + kAeadNonceSize + len, &tail) != 1) {
    throw std::runtime_error("AES-GCM final failed");
  }
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kAeadTagSize,
                          out.data() + kAeadNonceSize + plaintext.size()) != 1) {
    throw std::runtime_error("AES-GCM tag failed");
  }
  return out;
}

std::optional<Bytes> aead_open(ByteView key, ByteView sealed, ByteView aad) {
  if (key.size() != kAeadKeySize || sealed.size() < kAeadNonceSize + kAeadTagSize) return std::nullopt;
  std::size_t body_len = sealed.size() - kAeadNonceSize - kAeadTagSize;
  CtxPtr ctx(EVP_CIPHER_CTX_new());
  if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), sealed.data()) != 1) {
    return std::nullopt;
  }
  int len = 0;
  if (!aad.empty() && EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) != 1) {
    return std::nullopt;
  }
  Bytes out(body_len);
  if (EVP_DecryptUpdate(ctx.get(), out.data(), &len, sealed.data() + kAeadNonceSize, static_cast<int>(body_len)) !=
      1) {
    return std::nullopt;
  }
  Bytes tag(sealed.end() - kAeadTagSize, sealed.end());
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kAeadTagSize, tag.data()) != 1) return std::nullopt;
  int tail = 0;
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + len, &tail) != 1) return std::nullopt;
  return out;
}

}  // namespace hidm
