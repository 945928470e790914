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

#include "hidm/algebra/hash.hpp"

#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/kdf.h>
#include <openssl/params.h>
#include <openssl/sha.h>

#include <memory>
#include <stdexcept>

namespace hidm {

namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};

}  // namespace

Digest32 sha256(ByteView data) {
  Digest32 out{};
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Bytes shake256(ByteView data, std::size_t out_len) {
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  Bytes out(out_len);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinalXOF(ctx.get(), out.data(), out.size()) != 1) {
    throw std::runtime_error("SHAKE256 failed");
  }
  return out;
}

Bytes hmac_sha256(ByteView key, ByteView data) {
  Bytes out(32);
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(), out.data(),
           &len) == nullptr) {
    throw std::runtime_error("HMAC-SHA256 failed");
  }
  return out;
}

Bytes hkdf_sha256(ByteView salt, ByteView ikm, ByteView info, std::size_t out_len) {
  EVP_KDF* kdf = EVP_KDF_fetch(nullptr, "HKDF", nullptr);
  if (kdf == nullptr) throw std::runtime_error("HKDF unavailable");
  EVP_KDF_CTX* kctx = EVP_KDF_CTX_new(kdf);
  EVP_KDF_free(kdf);
  if (kctx == nullptr) throw std::runtime_error("HKDF context allocation failed");

  char digest[] = "SHA256";
  OSSL_PARAM params[] = {
      OSSL_PARAM_construct_utf8_string(OSSL_KDF_PARAM_DIGEST, digest, 0),
      OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_SALT, const_cast<std::uint8_t*>(salt.data()), salt.size()),
      OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_KEY, const_cast<std::uint8_t*>(ikm.data()), ikm.size()),
      OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_INFO, const_cast<std::uint8_t*>(info.data()), info.size()),
      OSSL_PARAM_construct_end(),
  };
  Bytes out(out_len);
  int ok = EVP_KDF_derive(kctx, out.data(), out.size(), params);
  EVP_KDF_CTX_free(kctx);
  if (ok != 1) throw std::runtime_error("HKDF derivation failed");
  return out;
}

BigInt hash_to_field(std::string_view tag, ByteView input, const BigInt& modulus) {
  if (tag.empty()) throw std::invalid_argument("hash_to_field requires a domain tag");
  if (modulus < 2) throw std::invalid_argument("hash_to_field modulus must be >= 2");
  std::size_t out_bits = bit_length(modulus) + 128;
  Bytes msg = FieldWriter().field(tag).field(input).u64(out_bits).bytes();
  Bytes xof = shake256(msg, (out_bits + 7) / 8);
  return mod(bigint_from_bytes(xof), modulus);
}

Scalar hash_to_scalar(std::string_view tag, ByteView input) {
  // 255-bit order plus 128 bits of surplus, as in hash_to_field.
  if (tag.empty()) throw std::invalid_argument("hash_to_field requires a domain tag");
  std::size_t out_bits = bit_length(Scalar::order()) + 128;
  Bytes msg = FieldWriter().field(tag).field(input).u64(out_bits).bytes();
  return Scalar::reduce(shake256(msg, (out_bits + 7) / 8));
}

G1 hash_to_g1(std::string_view tag, ByteView input) {
  blst_p1 out;
  blst_hash_to_g1(&out, input.data(), input.size(), reinterpret_cast<const std::uint8_t*>(tag.data()), tag.size(),
                  nullptr, 0);
  return G1(out);
}

}  // namespace hidm
