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

#ifndef PSM_INSTANCE_H_
#define PSM_INSTANCE_H_

#include <cstdint>
#include <string>

#include "json.hpp"
#include "psm/matroid.h"
#include "psm/submodular.h"

namespace psm {

// JSON forms of the specs. Parsing throws ConfigError on any schema
// violation, including unknown keys.
MatroidSpec ParseMatroidSpec(const nlohmann::json& j);
FunctionSpec ParseFunctionSpec(const nlohmann::json& j);
nlohmann::json MatroidSpecToJson(const MatroidSpec& spec);
nlohmann::json FunctionSpecToJson(const FunctionSpec& spec);

// Generates {"name", "matroid", "function"} for a generator kind:
//   fat_path {legs, k}            graphic, legs of k parallel edges, f ≡ 1
//   fat_tail {n, k}               one leg of k parallel edges, n−k single legs
//   random_coverage {n, universe, density}   uniform(n, ⌈√n⌉)
//   random_partition {n, blocks, universe, density}   coverage f
//   random_cut {n, edge_prob}     cut f, uniform(n, ⌊n/2⌋)
//   bipartite_matchoid {a, b, edges}   two partition matroids, modular f
// Output is a pure function of (kind, params, seed).
nlohmann::json GenerateInstance(const std::string& kind,
                                const nlohmann::json& params, uint64_t seed);

}  // namespace psm

#endif  // PSM_INSTANCE_H_
