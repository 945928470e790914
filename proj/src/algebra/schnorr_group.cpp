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

#include "hidm/algebra/schnorr_group.hpp"

#include <stdexcept>

namespace hidm {

namespace {

// Generated offline: q is a random 256-bit prime, p = k*q + 1 a 3072-bit
// prime, g = 2^((p-1)/q) mod p.
constexpr char kP[] =
    "a24be8fd3c11dbe66b0ee41db3ea3e183e8fd7d88cf703373e0ce2d52e4ce0d1"
    "61aaa38ce57ff2ba8178ff32e617332d38d9ff3201d65fb7a899dcc859bf4279"
    "9f071e0ce32413d7566510aeb8d94bc458fbc55e6fc49d6121e22c052d8f81c2"
    "aa1bdd0f9bb34818f8489038a431fbf01573d29bd7384504b4070eff3c67ed70"
    "bf9f5f8b964db3aa8875ee663f2e0a1ffb8983c9986d92516039725fb34771ce"
    "d07b5177c9aa5669bc66b6be6a40665b04e20b40e3c7a7025edf1d60374a54d2"
    "ffc3894adf4efa3b831f0f0a63e3d84d6ab3ff260bd2a163d4b418ab1c1d0819"
    "ea25f81fff4e4948b17f520f9501d8c98d2565368cb8d4cd272058d83329fd06"
    "2b30d8c11c6aa976bbc87eefd646e938befba56ef696156b17377cb1a8234133"
    "0d729d9d728da16410e00fc56a988afd68b1f31c18519713fefae27db10bd7b4"
    "b602ef32cf87cf492ba8055b3c4680ae950b21a5fc0011f908b37e1265ba2c7b"
    "19cb1e93ba857cd3b7ddbbd79c0f3ea611503e4e134f7c047d8a801561cee029";
constexpr char kQ[] =
    "b9d26aef1343a4dee36ba9405194c68a316ec08e0b8fc8d8e4264b403702a4d3";
constexpr char kG[] =
    "3f28dca14214a8e09aa1288ea0ef6122db987f9fb979dd8ac6be12b8a1d155f4"
    "b8ede725188495aacb0dce7f491fa5dfa0e8cf3bf9a8b72712fd8a449f059195"
    "c1471287cd51bdca532fb4face041e3d28b11c5486a50ee105e2f5002e14d41c"
    "b6bce99cfae43390304d389283c5fbb7e3855de4f075bb137e777e18c3930ec4"
    "e907b43fc0b4d1c7a542aedad17bef34a42cbd5bc6b21c31ff5592160cc1251b"
    "b8cf236e412751724446c3c2696479bbac7838b4fac0606629250283f6fb23b7"
    "7be49ac6a34b7ce2ca2677a97402f459b36c1b8865be2311d1c4d18a915eb4da"
    "3c059cc6fa43ad87b460570130fbf89779ccabaee278454b69df1e40034c92f0"
    "fcf827909648eb4b3b08a7325a384248525dfe97baa36b9f08b01232c1da7f39"
    "c5233dca1df755b38df5d4d1cfeae49dddc8aed068dfc60a37598ad454f431f1"
    "211a60f5fe78884a5ea5977db3489ea055e6625fbf6b8fe701d3fe777d6966d3"
    "b9503be6f7a62abc8c0386d93d5c58366a47587a35e7313e6dd6c06be9300b49";

}  // namespace

bool SchnorrGroup::is_element(const BigInt& y) const {
  if (y <= 1 || y >= p) return false;
  return powm(y, q, p) == 1;
}

void SchnorrGroup::validate() const {
  if (!probably_prime(p) || !probably_prime(q)) throw std::invalid_argument("Schnorr group moduli must be prime");
  if (mod(p - 1, q) != 0) throw std::invalid_argument("q must divide p - 1");
  if (!is_element(g)) throw std::invalid_argument("g must generate the order-q subgroup");
}

const SchnorrGroup& SchnorrGroup::standard() {
  static const SchnorrGroup group{bigint_from_hex(kP), bigint_from_hex(kQ), bigint_from_hex(kG)};
  return group;
}

}  // namespace hidm
