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

#include "psm/instance.h"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json_util.h"
#include "psm/random.h"

namespace psm {

using nlohmann::json;

MatroidSpec ParseMatroidSpec(const json& j) {
  RequireObject(j, "matroid");
  const std::string kind = GetString(j, "kind");
  MatroidSpec spec;
  if (kind == "uniform") {
    CheckKeys(j, {"kind", "n", "k"}, "uniform matroid");
    spec.kind = MatroidKind::kUniform;
    spec.n = GetInt(j, "n");
    spec.k = GetInt(j, "k");
    if (spec.n < 0) throw ConfigError("uniform matroid needs n >= 0");
  } else if (kind == "partition") {
    CheckKeys(j, {"kind", "blocks", "capacities"}, "partition matroid");
    spec.kind = MatroidKind::kPartition;
    spec.blocks = GetIntLists(j, "blocks");
    spec.capacities = GetIntList(j, "capacities");
  } else if (kind == "graphic") {
    CheckKeys(j, {"kind", "vertices", "edges"}, "graphic matroid");
    spec.kind = MatroidKind::kGraphic;
    spec.vertices = GetInt(j, "vertices");
    for (const auto& edge : GetIntLists(j, "edges")) {
      if (edge.size() != 2) throw ConfigError("graphic edges are [u, v] pairs");
      spec.edges.emplace_back(edge[0], edge[1]);
    }
  } else if (kind == "matchoid") {
    CheckKeys(j, {"kind", "n", "parts"}, "matchoid");
    spec.kind = MatroidKind::kMatchoid;
    spec.n = GetInt(j, "n");
    const json& parts = Get(j, "parts");
    if (!parts.is_array()) throw ConfigError("matchoid parts must be an array");
    for (const json& part : parts) {
      RequireObject(part, "matchoid part");
      CheckKeys(part, {"matroid", "scope"}, "matchoid part");
      MatchoidPart p;
      p.matroid = ParseMatroidSpec(Get(part, "matroid"));
      if (p.matroid.kind == MatroidKind::kMatchoid) {
        throw ConfigError("matchoid parts cannot be matchoids");
      }
      for (int e : GetIntList(part, "scope")) p.scope.push_back(e);
      spec.parts.push_back(std::move(p));
    }
  } else {
    throw ConfigError("unknown matroid kind '" + kind + "'");
  }
  return spec;
}

FunctionSpec ParseFunctionSpec(const json& j) {
  RequireObject(j, "function");
  const std::string kind = GetString(j, "kind");
  FunctionSpec spec;
  if (kind == "coverage") {
    CheckKeys(j, {"kind", "weights", "sets"}, "coverage function");
    spec.kind = FunctionKind::kCoverage;
    spec.item_weights = GetDoubleList(j, "weights");
    spec.sets = GetIntLists(j, "sets");
  } else if (kind == "cut") {
    CheckKeys(j, {"kind", "vertices", "edges"}, "cut function");
    spec.kind = FunctionKind::kCut;
    spec.vertices = GetInt(j, "vertices");
    const json& edges = Get(j, "edges");
    if (!edges.is_array()) throw ConfigError("cut edges must be an array");
    for (const json& edge : edges) {
      if (!edge.is_array() || edge.size() < 2 || edge.size() > 3) {
        throw ConfigError("cut edges are [u, v] or [u, v, w]");
      }
      WeightedEdge e;
      e.u = AsInt(edge[0], "cut edge endpoint");
      e.v = AsInt(edge[1], "cut edge endpoint");
      e.w = edge.size() == 3 ? AsDouble(edge[2], "cut edge weight") : 1.0;
      spec.edges.push_back(e);
    }
  } else if (kind == "modular") {
    CheckKeys(j, {"kind", "weights"}, "modular function");
    spec.kind = FunctionKind::kModular;
    spec.weights = GetDoubleList(j, "weights");
  } else if (kind == "concave_of_modular") {
    CheckKeys(j, {"kind", "weights", "exponent"}, "concave_of_modular function");
    spec.kind = FunctionKind::kConcaveOfModular;
    spec.weights = GetDoubleList(j, "weights");
    spec.exponent = GetDouble(j, "exponent");
  } else {
    throw ConfigError("unknown function kind '" + kind + "'");
  }
  return spec;
}

json MatroidSpecToJson(const MatroidSpec& spec) {
  switch (spec.kind) {
    case MatroidKind::kUniform:
      return {{"kind", "uniform"}, {"n", spec.n}, {"k", spec.k}};
    case MatroidKind::kPartition:
      return {{"kind", "partition"},
              {"blocks", spec.blocks},
              {"capacities", spec.capacities}};
    case MatroidKind::kGraphic: {
      json edges = json::array();
      for (const auto& [u, v] : spec.edges) edges.push_back({u, v});
      return {{"kind", "graphic"}, {"vertices", spec.vertices}, {"edges", edges}};
    }
    case MatroidKind::kMatchoid: {
      json parts = json::array();
      for (const MatchoidPart& part : spec.parts) {
        parts.push_back({{"matroid", MatroidSpecToJson(part.matroid)},
                         {"scope", part.scope}});
      }
      return {{"kind", "matchoid"}, {"n", spec.n}, {"parts", parts}};
    }
  }
  return {};
}

json FunctionSpecToJson(const FunctionSpec& spec) {
  switch (spec.kind) {
    case FunctionKind::kCoverage:
      return {{"kind", "coverage"},
              {"weights", spec.item_weights},
              {"sets", spec.sets}};
    case FunctionKind::kCut: {
      json edges = json::array();
      for (const WeightedEdge& e : spec.edges) edges.push_back({e.u, e.v, e.w});
      return {{"kind", "cut"}, {"vertices", spec.vertices}, {"edges", edges}};
    }
    case FunctionKind::kModular:
      return {{"kind", "modular"}, {"weights", spec.weights}};
    case FunctionKind::kConcaveOfModular:
      return {{"kind", "concave_of_modular"},
              {"weights", spec.weights},
              {"exponent", spec.exponent}};
  }
  return {};
}

// ---------------------------------------------------------------------------

namespace {

std::string InstanceName(const std::string& kind, const json& params,
                         uint64_t seed) {
  std::ostringstream name;
  name << kind;
  for (auto it = params.begin(); it != params.end(); ++it) {
    name << '_' << it.key() << '=' << it.value().dump();
  }
  name << "_seed=" << seed;
  return name.str();
}

int Param(const json& params, const char* key, int lo, int hi) {
  int v = GetInt(params, key);
  if (v < lo || v > hi) {
    throw ConfigError(std::string("generator parameter '") + key +
                      "' must lie in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  return v;
}

double Probability(const json& params, const char* key, double fallback) {
  double v = params.contains(key) ? GetDouble(params, key) : fallback;
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ConfigError(std::string("generator parameter '") + key +
                      "' must lie in [0, 1]");
  }
  return v;
}

constexpr int kMaxElements = 1 << 20;

// Graphic matroid on a path of legs; leg i has mult[i] parallel edges.
MatroidSpec LegGraph(const std::vector<int>& mult) {
  MatroidSpec spec;
  spec.kind = MatroidKind::kGraphic;
  spec.vertices = static_cast<int>(mult.size()) + 1;
  for (size_t leg = 0; leg < mult.size(); ++leg) {
    for (int c = 0; c < mult[leg]; ++c) {
      spec.edges.emplace_back(static_cast<int>(leg), static_cast<int>(leg) + 1);
    }
  }
  return spec;
}

FunctionSpec UnitModular(int n) {
  FunctionSpec spec;
  spec.kind = FunctionKind::kModular;
  spec.weights.assign(static_cast<size_t>(n), 1.0);
  return spec;
}

FunctionSpec RandomCoverage(int n, int universe, double density,
                            SplitMix64& rng) {
  FunctionSpec spec;
  spec.kind = FunctionKind::kCoverage;
  spec.item_weights.assign(static_cast<size_t>(universe), 1.0);
  spec.sets.resize(static_cast<size_t>(n));
  for (int e = 0; e < n; ++e) {
    for (int item = 0; item < universe; ++item) {
      if (rng.Unit() < density) spec.sets[e].push_back(item);
    }
  }
  return spec;
}

}  // namespace

json GenerateInstance(const std::string& kind, const json& params,
                      uint64_t seed) {
  RequireObject(params, "generator parameters");
  SplitMix64 rng(DeriveSeed(seed, 0x67656eULL));
  MatroidSpec matroid;
  FunctionSpec function;
  if (kind == "fat_path") {
    CheckKeys(params, {"legs", "k"}, "fat_path");
    const int legs = Param(params, "legs", 1, kMaxElements);
    const int k = Param(params, "k", 1, kMaxElements / legs);
    matroid = LegGraph(std::vector<int>(static_cast<size_t>(legs), k));
    function = UnitModular(legs * k);
  } else if (kind == "fat_tail") {
    CheckKeys(params, {"n", "k"}, "fat_tail");
    const int n = Param(params, "n", 1, kMaxElements);
    const int k = Param(params, "k", 1, n);
    std::vector<int> mult(static_cast<size_t>(1 + n - k), 1);
    mult[0] = k;
    matroid = LegGraph(mult);
    function = UnitModular(n);
  } else if (kind == "random_coverage") {
    CheckKeys(params, {"n", "universe", "density"}, "random_coverage");
    const int n = Param(params, "n", 1, kMaxElements);
    const int universe = Param(params, "universe", 1, kMaxElements);
    const double density = Probability(params, "density", 0.3);
    matroid.kind = MatroidKind::kUniform;
    matroid.n = n;
    matroid.k = std::min(n, static_cast<int>(std::ceil(std::sqrt(n))));
    function = RandomCoverage(n, universe, density, rng);
  } else if (kind == "random_partition") {
    CheckKeys(params, {"n", "blocks", "universe", "density"},
              "random_partition");
    const int n = Param(params, "n", 1, kMaxElements);
    const int blocks = Param(params, "blocks", 1, n);
    const int universe = params.contains("universe")
                             ? Param(params, "universe", 1, kMaxElements)
                             : n;
    const double density = Probability(params, "density", 0.3);
    matroid.kind = MatroidKind::kPartition;
    matroid.blocks.resize(static_cast<size_t>(blocks));
    for (int e = 0; e < n; ++e) {
      // The first `blocks` elements seed one block each.
      int b = e < blocks ? e : static_cast<int>(rng.Below(blocks));
      matroid.blocks[b].push_back(e);
    }
    for (const auto& block : matroid.blocks) {
      const int size = static_cast<int>(block.size());
      matroid.capacities.push_back(1 + static_cast<int>(rng.Below(size)));
    }
    function = RandomCoverage(n, universe, density, rng);
  } else if (kind == "random_cut") {
    CheckKeys(params, {"n", "edge_prob"}, "random_cut");
    const int n = Param(params, "n", 1, 1 << 14);
    const double p = Probability(params, "edge_prob", 0.5);
    matroid.kind = MatroidKind::kUniform;
    matroid.n = n;
    matroid.k = n / 2;
    function.kind = FunctionKind::kCut;
    function.vertices = n;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.Unit() < p) function.edges.push_back({u, v, 1.0});
      }
    }
  } else if (kind == "bipartite_matchoid") {
    CheckKeys(params, {"a", "b", "edges"}, "bipartite_matchoid");
    const int a = Param(params, "a", 1, 1 << 12);
    const int b = Param(params, "b", 1, 1 << 12);
    const int count = Param(params, "edges", 0, std::min(a * b, kMaxElements));
    std::set<std::pair<int, int>> chosen;
    while (static_cast<int>(chosen.size()) < count) {
      chosen.emplace(static_cast<int>(rng.Below(a)),
                     static_cast<int>(rng.Below(b)));
    }
    std::vector<std::pair<int, int>> edges(chosen.begin(), chosen.end());
    const int n = static_cast<int>(edges.size());
    matroid.kind = MatroidKind::kMatchoid;
    matroid.n = n;
    for (int side = 0; side < 2; ++side) {
      MatchoidPart part;
      part.matroid.kind = MatroidKind::kPartition;
      std::vector<std::vector<int>> by_vertex(
          static_cast<size_t>(side == 0 ? a : b));
      for (int e = 0; e < n; ++e) {
        by_vertex[side == 0 ? edges[e].first : edges[e].second].push_back(e);
      }
      for (auto& block : by_vertex) {
        if (block.empty()) continue;
        part.matroid.blocks.push_back(std::move(block));
        part.matroid.capacities.push_back(1);
      }
      part.scope = Range(n);
      matroid.parts.push_back(std::move(part));
    }
    function.kind = FunctionKind::kModular;
    for (int e = 0; e < n; ++e) {
      function.weights.push_back(1.0 + static_cast<double>(rng.Below(10)));
    }
  } else {
    throw ConfigError("unknown generator kind '" + kind + "'");
  }
  return {{"name", InstanceName(kind, params, seed)},
          {"matroid", MatroidSpecToJson(matroid)},
          {"function", FunctionSpecToJson(function)}};
}

}  // namespace psm
