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

#include "psm/block_greedy.h"

#include <algorithm>
#include <cmath>

#include "psm/random.h"

namespace psm {

std::vector<double> ThresholdSchedule(double lambda_max, double lambda_min,
                                      double eps) {
  if (!(lambda_min > 0.0)) throw ConfigError("lambda_min must be > 0");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  std::vector<double> out;
  const double floor = lambda_min * (1.0 - 1e-12);
  for (int j = 0;; ++j) {
    double lambda = lambda_max * std::pow(1.0 - eps, j);
    if (!(lambda >= floor)) break;
    out.push_back(lambda);
  }
  return out;
}

BlockGreedyResult BlockGreedy(const SystemPtr& m, const OraclePtr& f,
                              double eps, const BlockGreedyOptions& options,
                              uint64_t seed, Engine& engine) {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  if (f->size() < m->universe()) {
    throw ConfigError("function does not cover the matroid ground set");
  }
  BlockGreedyResult out;
  const ElementSet& ground = m->ground();
  if (ground.empty()) return out;
  const int64_t rounds_before = engine.meter().rounds();

  std::vector<ElementSet> singletons;
  singletons.reserve(ground.size());
  for (Element e : ground) singletons.push_back(ElementSet{e});
  std::vector<double> values;
  {
    Round round = engine.BeginRound("lambda_max");
    values = round.Eval(*f, singletons);
  }
  out.lambda_max = std::max(0.0, *std::max_element(values.begin(), values.end()));
  if (options.lambda_min.has_value()) {
    out.lambda_min = *options.lambda_min;
  } else {
    out.lambda_min =
        eps * out.lambda_max / std::max(1, m->max_cardinality());
  }
  if (out.lambda_max > 0.0 && out.lambda_min > 0.0) {
    out.schedule = ThresholdSchedule(out.lambda_max, out.lambda_min, eps);
  }

  for (size_t t = 0; t < out.schedule.size(); ++t) {
    const double lambda = out.schedule[t];
    SystemPtr view = m->Contract(out.S);
    OraclePtr fview = ContractFunction(f, out.S);
    ElementSet residual = Residual(*view, *fview, {}, lambda, eps, engine).survivors;
    int64_t call = 0;
    while (!residual.empty()) {
      SystemPtr sub = view->Restrict(residual);
      GreedySampleOptions sample_options;
      sample_options.check_precondition = false;
      GreedySampleResult r =
          GreedySample(*sub, *fview, lambda, eps, options.estimator,
                       DeriveSeed(seed, {t, static_cast<uint64_t>(call)}),
                       engine, sample_options);
      ++call;
      ++out.greedy_sample_calls;
      TraceEntry entry;
      entry.threshold = static_cast<int>(t);
      entry.lambda = lambda;
      entry.residual = static_cast<int64_t>(residual.size());
      entry.delta = r.search.delta;
      entry.sampled = static_cast<int64_t>(r.block.S.size());
      entry.selected = static_cast<int64_t>(r.block.I.size());
      entry.rounds = r.rounds;
      out.trace.push_back(entry);
      residual = std::move(r.residual.survivors);
      if (r.block.S.empty()) continue;
      out.S = Union(out.S, r.block.S);
      out.I = Union(out.I, r.block.I);
      out.blocks.push_back(std::move(r.block));
      view = m->Contract(out.S);
      fview = ContractFunction(f, out.S);
    }
  }
  out.rounds = engine.meter().rounds() - rounds_before;
  int64_t inner = 0;
  for (const TraceEntry& e : out.trace) inner += e.rounds;
  out.boundary_rounds = out.rounds - inner;
  return out;
}

}  // namespace psm
