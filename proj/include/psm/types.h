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

#ifndef PSM_TYPES_H_
#define PSM_TYPES_H_

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace psm {

// Elements are dense ids 0..n-1 of a ground set.
using Element = int32_t;

// A set of elements, kept sorted and duplicate-free.
using ElementSet = std::vector<Element>;

// Rejected input: malformed specs, out-of-range parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An algorithm was asked to run on a function class it does not support.
class IncompatibleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sorts and deduplicates in place.
inline ElementSet Normalize(ElementSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool Contains(std::span<const Element> s, Element e) {
  return std::binary_search(s.begin(), s.end(), e);
}

inline ElementSet Union(std::span<const Element> a, std::span<const Element> b) {
  ElementSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ElementSet Intersect(std::span<const Element> a,
                            std::span<const Element> b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline ElementSet Difference(std::span<const Element> a,
                             std::span<const Element> b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline ElementSet With(std::span<const Element> s, Element e) {
  ElementSet out(s.begin(), s.end());
  auto it = std::lower_bound(out.begin(), out.end(), e);
  if (it == out.end() || *it != e) out.insert(it, e);
  return out;
}

inline ElementSet Without(std::span<const Element> s, Element e) {
  ElementSet out;
  out.reserve(s.size());
  for (Element x : s) {
    if (x != e) out.push_back(x);
  }
  return out;
}

inline bool IsSubset(std::span<const Element> a, std::span<const Element> b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline ElementSet Range(int n) {
  ElementSet out(static_cast<size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) out[i] = i;
  return out;
}

// Set with the bits of `mask` over elements 0..63.
inline ElementSet FromMask(uint64_t mask) {
  ElementSet out;
  for (Element e = 0; mask != 0; ++e, mask >>= 1) {
    if (mask & 1) out.push_back(e);
  }
  return out;
}

// Subset of `ground` selected by the bits of `mask`.
inline ElementSet FromMask(uint64_t mask, std::span<const Element> ground) {
  ElementSet out;
  for (size_t i = 0; i < ground.size() && (mask >> i) != 0; ++i) {
    if ((mask >> i) & 1) out.push_back(ground[i]);
  }
  return out;
}

std::string ToString(std::span<const Element> s);

}  // namespace psm

#endif  // PSM_TYPES_H_
