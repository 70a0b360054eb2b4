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

#ifndef PSM_AMPLIFICATION_H_
#define PSM_AMPLIFICATION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "psm/block_greedy.h"
#include "psm/engine.h"
#include "psm/matroid.h"
#include "psm/multilinear.h"
#include "psm/submodular.h"

namespace psm {

// x = Σ_i weights[i]·1_{parts[i]}.
struct FractionalSolution {
  std::vector<ElementSet> parts;
  std::vector<double> weights;
  FractionalPoint x;
};

// Builds the auxiliary function for one amplification round from its
// layout and round seed.
using AuxFactory =
    std::function<OraclePtr(const AuxLayout& layout, uint64_t seed)>;

struct AmplifyConfig {
  // Number of rounds ℓ; 0 means ⌈4/ε⌉.
  int ell = 0;
  double alpha = 0.5;
  // Samples for each Monte Carlo auxiliary function.
  SampleBudget budget;
  EstimatorConfig estimator;
  // Overrides the Monte Carlo auxiliary functions (for example with
  // exact models in tests).
  AuxFactory aux_factory;
};

struct MatchoidConstants {
  int p = 1;
  double beta = 0.0;
  double ratio = 0.0;
};

// β = √(p(p+1)) − p and ratio = 2p + 1 − 2√(p(p+1)). Throws for p < 1.
MatchoidConstants ComputeMatchoidConstants(int p);

int DefaultEll(double eps);

struct MonotoneAmplification {
  FractionalSolution solution;
  double opt_estimate = 0.0;
  std::vector<BlockGreedyResult> inner;
};

// ℓ rounds of block_greedy on g_i(S) = F(x_{i−1} + 1_S/ℓ) − F(x_{i−1}),
// with x_i = x_{i−1} + I_i/ℓ. Throws IncompatibleError for non-monotone f.
MonotoneAmplification AmplifyMonotone(const SystemPtr& m, const OraclePtr& f,
                                      double eps, const AmplifyConfig& cfg,
                                      uint64_t seed, Engine& engine);

struct NonnegativeAmplification {
  std::vector<ElementSet> sets;
  double opt_estimate = 0.0;
  std::vector<BlockGreedyResult> inner;
};

// ℓ rounds of block_greedy on g_i(S) = E[f_{∪J}(S')] for J_j ∼ αI_j/ℓ,
// S' ∼ S/ℓ. Throws IncompatibleError unless f is nonnegative.
NonnegativeAmplification AmplifyNonnegative(const SystemPtr& m,
                                            const OraclePtr& f, double eps,
                                            const AmplifyConfig& cfg,
                                            uint64_t seed, Engine& engine);

struct SampleUnionResult {
  ElementSet J;
  // Set when a system was supplied to check J against.
  std::optional<bool> independent;
};

// J = ∪ J_i with every element of I_i kept independently with probability
// α/ℓ.
SampleUnionResult SampleUnion(const std::vector<ElementSet>& sets,
                              double alpha, int ell, uint64_t seed,
                              const IndependenceSystem* m = nullptr);

struct BetaScaledResult {
  ElementSet J;
  ElementSet I;
  MatchoidConstants constants;
  BlockGreedyResult inner;
};

// block_greedy on g(S) = F(β·1_S), then J ∼ β·I.
BetaScaledResult BetaScaledSolve(const SystemPtr& m, const OraclePtr& f, int p,
                                 double eps, const AmplifyConfig& cfg,
                                 uint64_t seed, Engine& engine);

// Threshold floor (1/8)·ε²·OPT̂/k̂ used by the amplified runs.
double AmplifiedLambdaFloor(double eps, double opt_estimate, int k);

}  // namespace psm

#endif  // PSM_AMPLIFICATION_H_
