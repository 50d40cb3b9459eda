// Copyright 2026 The Fairlink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRLINK_RNG_HPP
#define FAIRLINK_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace fairlink::rng {

// splitmix64 step (Steele, Lea, Flood). All randomness in the library goes
// through this generator so that seeded runs are bit-identical across
// platforms; the standard <random> distributions are implementation-defined
// and cannot give that guarantee.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 64-bit FNV-1a, used to fold strings into stream tags.
inline std::uint64_t hash64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Deterministic random stream. Distinct (seed, tag...) tuples give
/// statistically independent substreams.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {
    // One warm-up step decorrelates low-entropy seeds (0, 1, 2, ...).
    splitmix64(state_);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_unit() < p; }

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t uniform_below(std::uint64_t n) {
    // Rejection sampling on the top range keeps the draw exactly uniform.
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  /// Centered Laplace draw with the given scale, via inverse CDF:
  /// density (1/2s)·exp(-|x|/s).
  double laplace(double scale) {
    const double v = next_unit() - 0.5;
    const double sign = v < 0.0 ? -1.0 : 1.0;
    return -scale * sign * std::log1p(-2.0 * std::fabs(v));
  }

 private:
  std::uint64_t state_;
};

/// Derives a substream from a master seed and a list of integer tags.
inline Stream derive(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t s = master;
  splitmix64(s);
  for (std::uint64_t t : tags) {
    s ^= t + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    splitmix64(s);
  }
  return Stream(s);
}

inline Stream derive(std::uint64_t master, std::string_view label,
                     std::initializer_list<std::uint64_t> tags = {}) {
  std::uint64_t s = master;
  splitmix64(s);
  s ^= hash64(label) + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
  splitmix64(s);
  for (std::uint64_t t : tags) {
    s ^= t + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    splitmix64(s);
  }
  return Stream(s);
}

}  // namespace fairlink::rng

#endif  // FAIRLINK_RNG_HPP
