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

#ifndef PSM_EXPERIMENT_H_
#define PSM_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "psm/amplification.h"
#include "psm/engine.h"
#include "psm/estimator.h"
#include "psm/matroid.h"
#include "psm/submodular.h"

namespace psm {

enum class Algorithm {
  kSequential,
  kBlockGreedy,
  kAmplifyMonotone,
  kAmplifyNonnegative,
  kBetaScaled,
};

const char* AlgorithmName(Algorithm a);
Algorithm ParseAlgorithm(const std::string& name);

inline constexpr int64_t kDefaultAuxSamples = 100;

struct ExperimentConfig {
  ExperimentConfig() { amplify.budget.m = kDefaultAuxSamples; }

  std::string name = "instance";
  MatroidSpec matroid;
  FunctionSpec function;
  Algorithm algorithm = Algorithm::kBlockGreedy;
  double eps = 0.1;
  uint64_t seed = 0;
  int reps = 1;
  EstimatorConfig estimator;
  // ell, alpha and budget.m are read from the "amplify" object. The
  // estimator field is replaced by the estimator above at run time.
  AmplifyConfig amplify;
  // Matchoid width for beta_scaled; 0 takes it from the matroid.
  int p = 0;
};

// Parses the experiment schema; throws ConfigError.
ExperimentConfig ParseExperimentConfig(const nlohmann::json& j);
nlohmann::json ExperimentConfigToJson(const ExperimentConfig& config);

struct RunOptions {
  int workers = 1;
  bool compute_opt = true;
  // Adds wall time to the JSON report (which then stops being
  // reproducible byte for byte).
  bool timing = false;
};

struct Repetition {
  uint64_t seed = 0;
  double value = 0.0;
  bool feasible = true;
  int64_t rounds = 0;
  int64_t f_calls = 0;
  int64_t matroid_calls = 0;
  double wall_ms = 0.0;
  std::map<std::string, PhaseStats> phases;
  nlohmann::json detail;
};

struct RunReport {
  ExperimentConfig config;
  int n = 0;
  std::optional<double> opt;
  std::vector<Repetition> reps;
  bool timing = false;

  double MeanValue() const;
  std::string ToJson() const;
  // One row per repetition in the fixed column order.
  std::string ToCsv(bool header = true) const;
};

inline constexpr const char* kCsvHeader =
    "instance,algorithm,eps,seed,value,rounds,f_calls,matroid_calls,opt,ratio";

// Runs config.reps repetitions with seeds seed, seed+1, ... Throws
// ConfigError or IncompatibleError before any work when the algorithm does
// not support the function.
RunReport RunExperiment(const ExperimentConfig& config,
                        const RunOptions& options = {});

// One repetition on prebuilt oracles with a fresh engine. Only the
// algorithm fields of config are used.
Repetition RunRepetition(const ExperimentConfig& config, const SystemPtr& m,
                         const OraclePtr& f, uint64_t seed, int workers = 1);

// A runnable config around GenerateInstance output: block_greedy, eps 0.2,
// one repetition.
nlohmann::json GeneratedConfig(const std::string& kind,
                               const nlohmann::json& params, uint64_t seed);

// Shortest round-trip decimal form.
std::string FormatDouble(double v);

}  // namespace psm

#endif  // PSM_EXPERIMENT_H_
