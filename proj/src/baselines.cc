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

#include "psm/baselines.h"

#include <stdexcept>
#include <utility>
#include <vector>

#include "psm/random.h"

namespace psm {

GreedyRun SequentialGreedy(const IndependenceSystem& m,
                           const SubmodularOracle& f, Engine& engine,
                           std::string_view phase) {
  GreedyRun out;
  const int rank = m.is_matroid() ? m.max_cardinality() : -1;
  for (;;) {
    if (rank >= 0 && static_cast<int>(out.S.size()) >= rank) break;
    ElementSet candidates = Difference(m.ground(), out.S);
    if (candidates.empty()) break;
    std::vector<ElementSet> extended;
    extended.reserve(candidates.size());
    for (Element d : candidates) extended.push_back(With(out.S, d));

    std::vector<uint8_t> feasible;
    {
      Round round = engine.BeginRound(phase);
      feasible = round.IsIndependent(m, extended);
    }
    std::vector<ElementSet> options;
    std::vector<Element> option_ids;
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (feasible[i]) {
        options.push_back(std::move(extended[i]));
        option_ids.push_back(candidates[i]);
      }
    }
    if (options.empty()) break;

    std::vector<double> values;
    {
      Round round = engine.BeginRound(phase);
      values = round.Eval(f, options);
    }
    size_t best = 0;
    for (size_t i = 1; i < values.size(); ++i) {
      if (values[i] > values[best]) best = i;
    }
    if (out.steps == 0) out.best_singleton = values[best];
    if (!(values[best] - out.value > 0.0)) break;
    out.S = std::move(options[best]);
    out.value = values[best];
    ++out.steps;
  }
  return out;
}

OptCertificate BruteForceOpt(const IndependenceSystem& m,
                             const SubmodularOracle& f) {
  const ElementSet& ground = m.ground();
  if (ground.size() > 20) {
    throw ConfigError("brute_force_opt needs at most 20 elements, got " +
                      std::to_string(ground.size()));
  }
  OptCertificate out;
  const uint64_t count = uint64_t{1} << ground.size();
  int best_size = 0;
  bool have = false;
  for (uint64_t mask = 0; mask < count; ++mask) {
    ElementSet s = FromMask(mask, ground);
    if (!m.IsIndependent(s)) continue;
    ++out.enumerated_count;
    double v = f.Eval(s);
    int size = static_cast<int>(s.size());
    if (!have || v > out.opt_value ||
        (v == out.opt_value && size < best_size)) {
      have = true;
      out.opt_value = v;
      out.best_set = std::move(s);
      best_size = size;
    }
  }
  return out;
}

namespace {

// The matroid M ⊕ (r free dummies) truncated to rank r, where dummies use
// ids from M's universe upward. Independent sets of M extend to bases.
class PaddedMatroid {
 public:
  explicit PaddedMatroid(const IndependenceSystem& m)
      : m_(m), rank_(m.max_cardinality()), first_dummy_(m.universe()) {}

  bool IsIndependent(const ElementSet& s) const {
    if (static_cast<int>(s.size()) > rank_) return false;
    ElementSet real;
    for (Element e : s) {
      if (e < first_dummy_) real.push_back(e);
    }
    return m_.IsIndependent(real);
  }

  ElementSet Extend(const ElementSet& s) const {
    ElementSet out = s;
    for (int i = 0; static_cast<int>(out.size()) < rank_; ++i) {
      out.push_back(first_dummy_ + i);
    }
    return out;
  }

  ElementSet Real(const ElementSet& s) const {
    ElementSet out;
    for (Element e : s) {
      if (e < first_dummy_) out.push_back(e);
    }
    return out;
  }

 private:
  const IndependenceSystem& m_;
  int rank_;
  Element first_dummy_;
};

// Moves bases c and b together by random symmetric exchanges until equal.
void Merge(const PaddedMatroid& padded, ElementSet& c, double wc, ElementSet b,
           double wb, SplitMix64& rng) {
  while (c != b) {
    ElementSet c_only = Difference(c, b);
    ElementSet b_only = Difference(b, c);
    const Element i = c_only.front();
    ElementSet c_minus = Without(c, i);
    ElementSet b_plus = With(b, i);
    std::vector<Element> swaps;
    for (Element j : b_only) {
      if (padded.IsIndependent(With(c_minus, j)) &&
          padded.IsIndependent(Without(b_plus, j))) {
        swaps.push_back(j);
      }
    }
    if (swaps.empty()) {
      throw std::logic_error("swap rounding found no symmetric exchange");
    }
    const Element j = swaps[rng.Below(swaps.size())];
    if (rng.Unit() * (wc + wb) < wc) {
      b = Without(b_plus, j);
    } else {
      c = With(c_minus, j);
    }
  }
}

}  // namespace

ElementSet SwapRound(const IndependenceSystem& m, const FractionalSolution& x,
                     uint64_t seed) {
  if (!m.is_matroid()) {
    throw IncompatibleError("swap rounding needs a single matroid");
  }
  if (x.parts.size() != x.weights.size()) {
    throw ConfigError("fractional solution needs one weight per part");
  }
  double total = 0.0;
  for (size_t i = 0; i < x.parts.size(); ++i) {
    if (!(x.weights[i] >= 0.0)) {
      throw ConfigError("fractional solution weights must be >= 0");
    }
    if (!m.IsIndependent(Normalize(x.parts[i]))) {
      throw ConfigError("fractional solution part is not independent");
    }
    total += x.weights[i];
  }
  if (total > 1.0 + 1e-9) {
    throw ConfigError("fractional solution weights must sum to at most 1");
  }

  PaddedMatroid padded(m);
  std::vector<std::pair<ElementSet, double>> bases;
  for (size_t i = 0; i < x.parts.size(); ++i) {
    if (x.weights[i] > 0.0) {
      bases.emplace_back(padded.Extend(Normalize(x.parts[i])), x.weights[i]);
    }
  }
  if (1.0 - total > 1e-12) bases.emplace_back(padded.Extend({}), 1.0 - total);
  if (bases.empty()) return {};

  SplitMix64 rng(seed);
  ElementSet current = bases[0].first;
  double weight = bases[0].second;
  for (size_t k = 1; k < bases.size(); ++k) {
    Merge(padded, current, weight, bases[k].first, bases[k].second, rng);
    weight += bases[k].second;
  }
  return padded.Real(current);
}

ElementSet SampleScaled(const ElementSet& set, double q, uint64_t seed) {
  if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("q must lie in [0, 1]");
  ElementSet out;
  for (Element e : set) {
    if (Uniform01(seed, 0, e) < q) out.push_back(e);
  }
  return Normalize(std::move(out));
}

}  // namespace psm
