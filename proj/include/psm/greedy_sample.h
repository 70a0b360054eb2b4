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

#ifndef PSM_GREEDY_SAMPLE_H_
#define PSM_GREEDY_SAMPLE_H_

#include <cstdint>

#include "psm/engine.h"
#include "psm/estimator.h"
#include "psm/matroid.h"
#include "psm/submodular.h"
#include "psm/types.h"

namespace psm {

// A random pair (I, S) with I ⊆ S independent.
struct GreedyBlock {
  ElementSet I;
  ElementSet S;
  double lambda = 0.0;
  double eps = 0.0;
};

struct ResidualReport {
  // N' = {e ∉ span(S) : f_S(e) ≥ (1−ε)λ + 2·band}.
  ElementSet survivors;
  int64_t before = 0;
  int64_t after = 0;
};

struct GreedySampleOptions {
  // Checks f(e) ≤ λ (up to the band) for every ground element as part of
  // the prune round. Callers that already know the margins may skip it.
  bool check_precondition = true;
};

struct GreedySampleResult {
  GreedyBlock block;
  ResidualReport residual;
  DeltaSearch search;
  // Adaptive rounds this call used (at most 3).
  int64_t rounds = 0;
};

// Comparison band for margins of f: ε·λ/8 for estimated functions, else 0.
double MarginBand(const SubmodularOracle& f, double lambda, double eps);

// Draws S ∼ δN for the δ found by FindDelta, keeps
// I = {e ∈ S : f_{S−e}(e) ≥ (1−ε)λ − 2·band, e ∉ span(S−e)} and reports
// the surviving residual ground set. Uses three rounds: δ-search, prune
// and residual. Throws ConfigError if the precondition check finds an
// element with f(e) above λ.
GreedySampleResult GreedySample(const IndependenceSystem& m,
                                const SubmodularOracle& f, double lambda,
                                double eps, const EstimatorConfig& cfg,
                                uint64_t seed, Engine& engine,
                                const GreedySampleOptions& options = {});

// The prune step on a given S, as one round.
ElementSet Prune(const IndependenceSystem& m, const SubmodularOracle& f,
                 const ElementSet& s, double lambda, double eps,
                 Engine& engine);

// The residual step on a given S, as one round.
ResidualReport Residual(const IndependenceSystem& m, const SubmodularOracle& f,
                        const ElementSet& s, double lambda, double eps,
                        Engine& engine);

}  // namespace psm

#endif  // PSM_GREEDY_SAMPLE_H_
