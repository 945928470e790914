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

#include "hidm/signatures/cl_rsa_params.hpp"

namespace hidm::cl_rsa {

namespace {

// Two 1536-bit safe primes (p = 2p' + 1 with p' prime), generated offline.
// The factorisation is public in this repository: the fixed modulus is a
// simulation parameter, not a production secret.
constexpr char kSafePrime1[] =
    "ceae9eb57b3a92883d7ad51339ab588e36a18d7eff456cd1367d43076bbdad64"
    "3ff739bd00fc923a90861505af179e7c541ae3e9e13419a67b518ca413c95970"
    "bbd8230eb2856b085678fed3eb4594db0c6d1dc2d8dfb02883fb4348c35e8557"
    "582544b80456f719350985bba52812ed5d3de66600de0b860be7c02601a3b96d"
    "5e73870add28f3c8e2e0b3791b376e520dbb54729d3ca405efc909a442065c15"
    "1290610e1a2997243b5e92564765cd6555a0f3e3aaeae81cfd747ac432e8cc93";
constexpr char kSafePrime2[] =
    "ce0144444d5cb0f2245f8a4cc3ec94588f33c8b462b5233ee56e4e2dfe0101e1"
    "f1c96a1308d8315e24c777fe3088e10d7efd02da7ff5e755f5ff0c44e5ad4b75"
    "83398e7d905bc85f6fd986aeafdecc2c3b05392711dc9ce61ce5f2ab0123d835"
    "b6051e9a19df4671ded2a1d2b4a7f0034c77bdc5de13c56e1cd7856dd9a4ecfc"
    "94ece526f2a546b8e00625cf623bf07a5df81f8af21079a61a82730e3bdba88c"
    "c901e3c760ddb5e8c62f9c55f6ad1b62a826fb391849b1567a9243ca050923a7";

}  // namespace

const SafePrimePair& standard_safe_primes() {
  static const SafePrimePair pair{bigint_from_hex(kSafePrime1), bigint_from_hex(kSafePrime2)};
  return pair;
}

}  // namespace hidm::cl_rsa
