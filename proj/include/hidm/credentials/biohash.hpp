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

// Random-hyperplane biometric hash: bit i is the sign of <w_i, features>.
// Hyperplanes come from a seeded mt19937_64 with Box-Muller normals, so
// every party with the same parameters derives the same projection.
// Simulation grade only.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hidm/common/bytes.hpp"
#include "hidm/common/rng.hpp"

namespace hidm {

using BioHash = std::array<std::uint8_t, 32>;

class BioHashParams {
 public:
  static constexpr std::size_t kDefaultDimension = 128;
  static constexpr std::size_t kBits = 256;
  static constexpr std::size_t kDefaultThreshold = 32;
  static constexpr std::uint64_t kDefaultSeed = 0x4849444d42494f31ULL;

  explicit BioHashParams(std::uint64_t seed = kDefaultSeed, std::size_t dimension = kDefaultDimension,
                         std::size_t threshold = kDefaultThreshold);

  static const BioHashParams& standard();

  std::uint64_t seed() const { return seed_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t threshold() const { return threshold_; }
  // Row-major kBits x dimension.
  const std::vector<double>& hyperplanes() const { return planes_; }

 private:
  std::uint64_t seed_;
  std::size_t dimension_;
  std::size_t threshold_;
  std::vector<double> planes_;
};

// Throws std::invalid_argument on a dimension mismatch.
BioHash biohash_enroll(std::span<const double> features, const BioHashParams& params);
bool biohash_match(const BioHash& enrolled, std::span<const double> live, const BioHashParams& params);
std::size_t hamming_distance(const BioHash& a, const BioHash& b);

// Synthetic feature vectors for the simulator.
double gaussian(Rng& rng);
std::vector<double> synthetic_features(Rng& rng, std::size_t dimension = BioHashParams::kDefaultDimension);
std::vector<double> noisy_sample(std::span<const double> features, double sigma, Rng& rng);

}  // namespace hidm
