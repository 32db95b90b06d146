// Copyright 2026 The ecoorc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ECOORC_RNG_HPP_
#define ECOORC_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <string_view>

namespace ecoorc {

// SplitMix64 (Steele, Lea, Vigna 2014). Chosen over the std:: engines and
// distributions because the standard does not pin down distribution
// algorithms, and simulation traces must be bit-reproducible across
// toolchains. All draws below are defined purely in terms of the sequence
// of 64-bit outputs.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1): top 53 bits scaled by 2^-53.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + next_double() * (hi - lo);
  }

  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(next_u64() % n);
  }

  /// Poisson-distributed count via Knuth's product-of-uniforms method.
  /// One uniform per increment; fine for the small rates used here.
  int poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    double limit = std::exp(-lambda);
    double p = 1.0;
    int k = 0;
    do {
      ++k;
      p *= next_double();
    } while (p > limit);
    return k - 1;
  }

 private:
  std::uint64_t state_;
};

/// FNV-1a hash of a stream label, folded into the seed below.
inline constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Derives an independent named stream from a master seed. Each purpose
/// (arrival counts, powers, lifetimes, owners) gets its own stream so a
/// change in one draw sequence never perturbs another.
inline SplitMix64 derive_stream(std::uint64_t seed, std::string_view label) {
  SplitMix64 mix(seed ^ fnv1a(label));
  // burn the mixer once so label and seed diffuse together
  return SplitMix64(mix.next_u64());
}

}  // namespace ecoorc

#endif  // ECOORC_RNG_HPP_
