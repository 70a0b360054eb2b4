// Copyright 2026 The Authors.
//
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

#ifndef PSM_RANDOM_H_
#define PSM_RANDOM_H_

#include <cstdint>
#include <initializer_list>

namespace psm {

// Counter-based randomness. Every random draw in the library is a pure
// function of (seed, stream indices), so results never depend on the order
// in which batch entries are executed.

inline uint64_t Mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t DeriveSeed(uint64_t seed, std::initializer_list<uint64_t> keys) {
  uint64_t h = Mix64(seed);
  for (uint64_t k : keys) h = Mix64(h ^ Mix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

inline uint64_t DeriveSeed(uint64_t seed, uint64_t key) {
  return DeriveSeed(seed, {key});
}

// Uniform in [0, 1) with 53 bits of precision.
inline double ToUnit(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double Uniform01(uint64_t seed, uint64_t a, uint64_t b) {
  return ToUnit(Mix64(Mix64(seed ^ Mix64(a)) ^ (b * 0xd1342543de82ef95ULL)));
}

// Uniform integer in [0, bound).
inline uint64_t UniformIndex(uint64_t seed, uint64_t a, uint64_t b,
                             uint64_t bound) {
  return static_cast<uint64_t>(Uniform01(seed, a, b) *
                               static_cast<double>(bound)) %
         bound;
}

// Small sequential generator for sequential plumbing (rounding, generators).
class SplitMix64 {
 public:
  using result_type = uint64_t;
  explicit SplitMix64(uint64_t seed) : state_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }
  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double Unit() { return ToUnit((*this)()); }
  uint64_t Below(uint64_t bound) {
    return static_cast<uint64_t>(Unit() * static_cast<double>(bound)) % bound;
  }

 private:
  uint64_t state_;
};

}  // namespace psm

#endif  // PSM_RANDOM_H_
