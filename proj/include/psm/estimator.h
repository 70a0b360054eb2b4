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

#ifndef PSM_ESTIMATOR_H_
#define PSM_ESTIMATOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "psm/engine.h"
#include "psm/matroid.h"
#include "psm/submodular.h"

namespace psm {

struct EstimatorConfig {
  // Tail bound shape c·exp(−d·ε·γ·m/n).
  double chernoff_c = 2.0;
  double chernoff_d = 1.0 / 3.0;
  // Target failure probability 1/n^fail_poly_exp for the whole search.
  int fail_poly_exp = 3;
  // Grid spacing and acceptance band constant.
  double grid_constant = 0.25;
  // Upper limit on samples per search; 0 means the full Chernoff budget.
  int64_t max_samples = 0;

  void Validate() const;
};

// Smallest m with c·exp(−d·ε·γ·m/n) ≤ fail_prob, at least 1.
int64_t ChernoffSamples(int64_t n, double eps, double gamma, double fail_prob,
                        const EstimatorConfig& cfg = {});

// (n/m)·#{i : e_i ∈ span(S_i)} over m pairs S_i ∼ δN, e_i uniform in N,
// where N is the ground set of `m`. One round.
double EstimateSpanFraction(const IndependenceSystem& m, double delta,
                            int64_t samples, uint64_t seed, Engine& engine);

// (n/m)·#{i : f_{S_i}(e_i) ≤ (1−ε)λ} over m pairs drawn from `ground`.
// One round of 2m evaluations.
double EstimateLowMarginFraction(const SubmodularOracle& f,
                                 std::span<const Element> ground,
                                 double lambda, double eps, double delta,
                                 int64_t samples, uint64_t seed,
                                 Engine& engine);

struct DeltaSearch {
  double delta = 0.0;
  // Chosen grid index (1-based); 0 for an empty ground set.
  int index = 0;
  int grid_size = 0;
  double step = 0.0;
  int64_t samples = 0;
  // Estimates per grid index 1..grid_size (entry 0 unused).
  std::vector<double> span_estimates;
  std::vector<double> low_margin_estimates;
};

// Searches δ_i = i·c·ε/(4n), i = 1..min(⌈16k/(cε)⌉, ⌊4n/(cε)⌋), for the
// largest i whose estimates of E|span(S)| and E|{e : f_S(e) < (1−ε)λ − band}|
// are both at most (3ε/4)·n, falling back to i = 1. All grid points
// share one coupled sample set and are evaluated in a single round.
DeltaSearch FindDelta(const IndependenceSystem& m, const SubmodularOracle& f,
                      double lambda, double eps, const EstimatorConfig& cfg,
                      uint64_t seed, Engine& engine, double band = 0.0);

// Samples the search uses: relative error c, additive c·ε·n, failure
// n^{-fail_poly_exp} split over both estimates of every grid point.
int64_t DeltaSearchSamples(int n, int grid_size, double eps,
                           const EstimatorConfig& cfg);

}  // namespace psm

#endif  // PSM_ESTIMATOR_H_
