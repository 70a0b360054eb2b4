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

#ifndef PSM_BASELINES_H_
#define PSM_BASELINES_H_

#include <cstdint>
#include <string_view>

#include "psm/amplification.h"
#include "psm/engine.h"
#include "psm/matroid.h"
#include "psm/submodular.h"

namespace psm {

struct GreedyRun {
  ElementSet S;
  double value = 0.0;
  // max_e f(e) over the ground set (the first step's best margin).
  double best_singleton = 0.0;
  int steps = 0;
};

// The classical greedy: repeatedly adds argmax f_S(d) over feasible d
// (smallest id on ties) until S is a base, nothing is feasible, or the
// best margin is ≤ 0. Each step is two rounds: feasibility, then margins.
GreedyRun SequentialGreedy(const IndependenceSystem& m,
                           const SubmodularOracle& f, Engine& engine,
                           std::string_view phase = "sequential");

struct OptCertificate {
  ElementSet best_set;
  double opt_value = 0.0;
  int64_t enumerated_count = 0;
};

// Exhaustive maximum over independent sets; ties go to the smaller set,
// then to the smaller bitmask. Throws ConfigError for more than 20
// elements.
OptCertificate BruteForceOpt(const IndependenceSystem& m,
                             const SubmodularOracle& f);

// Randomized swap rounding of x into a single independent set. Parts must
// be independent in the matroid m and weights must sum to at most 1; the
// remaining weight rounds to the empty set. Throws IncompatibleError for
// matchoids.
ElementSet SwapRound(const IndependenceSystem& m, const FractionalSolution& x,
                     uint64_t seed);

// Keeps each element of `set` independently with probability q.
ElementSet SampleScaled(const ElementSet& set, double q, uint64_t seed);

}  // namespace psm

#endif  // PSM_BASELINES_H_
