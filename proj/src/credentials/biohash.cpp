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

#include "hidm/credentials/biohash.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hidm {

namespace {

double unit_open(std::mt19937_64& gen) {
  // (0, 1]: never zero, so the logarithm below is finite.
  return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

BioHashParams::BioHashParams(std::uint64_t seed, std::size_t dimension, std::size_t threshold)
    : seed_(seed), dimension_(dimension), threshold_(threshold), planes_(kBits * dimension) {
  if (dimension == 0) throw std::invalid_argument("BioHash dimension must be positive");
  std::mt19937_64 gen(seed);
  for (std::size_t i = 0; i < planes_.size(); i += 2) {
    double u1 = unit_open(gen);
    double u2 = unit_open(gen);
    double r = std::sqrt(-2.0 * std::log(u1));
    planes_[i] = r * std::cos(2.0 * std::numbers::pi * u2);
    if (i + 1 < planes_.size()) planes_[i + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
  }
}

const BioHashParams& BioHashParams::standard() {
  static const BioHashParams params;
  return params;
}

BioHash biohash_enroll(std::span<const double> features, const BioHashParams& params) {
  if (features.size() != params.dimension()) throw std::invalid_argument("feature vector has the wrong dimension");
  BioHash out{};
  const std::vector<double>& w = params.hyperplanes();
  for (std::size_t bit = 0; bit < BioHashParams::kBits; ++bit) {
    const double* row = w.data() + bit * params.dimension();
    double dot = 0.0;
    for (std::size_t j = 0; j < params.dimension(); ++j) dot += row[j] * features[j];
    if (dot >= 0.0) out[bit / 8] |= static_cast<std::uint8_t>(0x80u >> (bit % 8));
  }
  return out;
}

std::size_t hamming_distance(const BioHash& a, const BioHash& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::popcount(static_cast<unsigned>(a[i] ^ b[i]));
  return d;
}

bool biohash_match(const BioHash& enrolled, std::span<const double> live, const BioHashParams& params) {
  return hamming_distance(enrolled, biohash_enroll(live, params)) <= params.threshold();
}

double gaussian(Rng& rng) {
  double u1 = 1.0 - rng.uniform();  // (0, 1]
  double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> synthetic_features(Rng& rng, std::size_t dimension) {
  std::vector<double> f(dimension);
  for (auto& v : f) v = gaussian(rng);
  return f;
}

std::vector<double> noisy_sample(std::span<const double> features, double sigma, Rng& rng) {
  std::vector<double> out(features.begin(), features.end());
  for (auto& v : out) v += sigma * gaussian(rng);
  return out;
}

}  // namespace hidm
