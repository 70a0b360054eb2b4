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

#ifndef PSM_BLOCK_GREEDY_H_
#define PSM_BLOCK_GREEDY_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "psm/engine.h"
#include "psm/estimator.h"
#include "psm/greedy_sample.h"
#include "psm/matroid.h"
#include "psm/submodular.h"

namespace psm {

struct BlockGreedyOptions {
  EstimatorConfig estimator;
  // Absolute lower end of the threshold schedule. When unset the schedule
  // stops at ε·λ_max/k̂, with k̂ the rank (or greedy max-cardinality).
  std::optional<double> lambda_min;
};

// One greedy_sample call.
struct TraceEntry {
  int threshold = 0;  // index into the schedule
  double lambda = 0.0;
  int64_t residual = 0;  // |N'| the call ran on
  double delta = 0.0;
  int64_t sampled = 0;   // |S'|
  int64_t selected = 0;  // |I'|
  int64_t rounds = 0;
};

struct BlockGreedyResult {
  ElementSet I;
  // Nonempty blocks (I_i, S_i) in order.
  std::vector<GreedyBlock> blocks;
  std::vector<TraceEntry> trace;
  std::vector<double> schedule;
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  // ∪ S_i.
  ElementSet S;
  int64_t greedy_sample_calls = 0;
  // Rounds outside greedy_sample: the λ_max batch and one residual batch
  // per threshold.
  int64_t boundary_rounds = 0;
  int64_t rounds = 0;
};

// λ_max·(1−ε)^j for j = 0, 1, ... while the value is at least λ_min.
// Empty if λ_max < λ_min. Throws ConfigError unless λ_min > 0 and
// ε ∈ (0, 1).
std::vector<double> ThresholdSchedule(double lambda_max, double lambda_min,
                                      double eps);

// Descending-threshold greedy over greedy blocks. For each λ, greedy_sample
// runs on (M/S restricted to N', f_S) until N' is empty, where S is the
// union of all sampled sets so far.
BlockGreedyResult BlockGreedy(const SystemPtr& m, const OraclePtr& f,
                              double eps, const BlockGreedyOptions& options,
                              uint64_t seed, Engine& engine);

}  // namespace psm

#endif  // PSM_BLOCK_GREEDY_H_
