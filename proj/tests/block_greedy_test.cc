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

#include <cmath>
#include <memory>
#include <vector>

#include "gtest/gtest.h"
#include "psm/baselines.h"
#include "psm/block_greedy.h"
#include "psm/engine.h"
#include "psm/instance.h"
#include "psm/matroid.h"
#include "psm/submodular.h"
#include "testing/instances.h"
#include "testing/oracles.h"

namespace psm {
namespace {

using ::psm::testing::MeanSe;
using ::psm::testing::ToMask;

SystemPtr Uniform(int n, int k) {
  MatroidSpec spec;
  spec.kind = MatroidKind::kUniform;
  spec.n = n;
  spec.k = k;
  return BuildMatroid(spec);
}

OraclePtr Abc() {
  return std::make_shared<CoverageFunction>(
      std::vector<double>{1, 1, 1},
      std::vector<std::vector<int>>{{0, 1}, {1, 2}, {0}});
}

TEST(ThresholdScheduleTest, Examples) {
  EXPECT_EQ(ThresholdSchedule(1.0, 0.5, 0.5), (std::vector<double>{1.0, 0.5}));
  EXPECT_TRUE(ThresholdSchedule(0.0, 0.1, 0.1).empty());
  // 0.9^21 ≈ 0.1094 ≥ 0.1 > 0.9^22 ≈ 0.0985, so j = 0..21.
  std::vector<double> s = ThresholdSchedule(1.0, 0.1, 0.1);
  int expected = 0;
  while (std::pow(0.9, expected) >= 0.1) ++expected;
  EXPECT_EQ(expected, 22);
  EXPECT_EQ(static_cast<int>(s.size()), expected);
  for (size_t j = 1; j < s.size(); ++j) EXPECT_NEAR(s[j], 0.9 * s[j - 1], 1e-15);
}

TEST(ThresholdScheduleTest, RejectsBadArguments) {
  EXPECT_THROW(ThresholdSchedule(1.0, 0.0, 0.1), ConfigError);
  EXPECT_THROW(ThresholdSchedule(1.0, 0.1, 1.0), ConfigError);
}

TEST(BlockGreedyTest, ModularTopK) {
  std::vector<double> w;
  for (int i = 1; i <= 20; ++i) w.push_back(i);
  OraclePtr f = std::make_shared<ModularFunction>(w);
  SystemPtr m = Uniform(20, 5);
  Engine greedy_engine;
  EXPECT_DOUBLE_EQ(SequentialGreedy(*m, *f, greedy_engine).value, 90.0);
  std::vector<double> values;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Engine engine;
    EstimatorConfig cfg;
    cfg.max_samples = 2000;
    BlockGreedyResult r = BlockGreedy(m, f, 0.1, {cfg, {}}, seed, engine);
    ASSERT_TRUE(m->IsIndependent(r.I));
    values.push_back(f->Eval(r.I));
  }
  EXPECT_GE(MeanSe(values).mean, 0.7 * 90);
}

TEST(BlockGreedyTest, CoverageExample) {
  SystemPtr m = Uniform(3, 2);
  std::vector<double> values;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Engine engine;
    BlockGreedyResult r = BlockGreedy(m, Abc(), 0.05, {}, seed, engine);
    ASSERT_TRUE(m->IsIndependent(r.I));
    values.push_back(Abc()->Eval(r.I));
  }
  EXPECT_DOUBLE_EQ(BruteForceOpt(*m, *Abc()).opt_value, 3.0);
  EXPECT_GE(MeanSe(values).mean, (0.5 - 3 * 0.05) * 3.0);
}

TEST(BlockGreedyTest, ZeroFunction) {
  Engine engine;
  OraclePtr f = std::make_shared<ModularFunction>(std::vector<double>(6, 0.0));
  BlockGreedyResult r = BlockGreedy(Uniform(6, 3), f, 0.1, {}, 1, engine);
  EXPECT_TRUE(r.I.empty());
  EXPECT_EQ(r.lambda_max, 0.0);
  EXPECT_TRUE(r.schedule.empty());
  EXPECT_EQ(r.greedy_sample_calls, 0);
  EXPECT_EQ(r.rounds, 1);
}

TEST(BlockGreedyTest, ExplicitLambdaMin) {
  Engine engine;
  BlockGreedyOptions options;
  options.lambda_min = 1.5;
  BlockGreedyResult r = BlockGreedy(Uniform(3, 2), Abc(), 0.2, options, 3, engine);
  EXPECT_EQ(r.schedule, ThresholdSchedule(2.0, 1.5, 0.2));
  EXPECT_EQ(r.lambda_min, 1.5);
}

struct Checked {
  std::vector<double> f_of_i;
  std::vector<double> f_of_s;
  std::vector<double> calls;
};

// Runs block_greedy over seeds and checks the per-run invariants:
// feasibility, the disjoint residual structure of the blocks, and round
// accounting against the trace.
Checked RunAndCheck(const ::psm::testing::SmallInstance& inst, double eps,
                    int seeds) {
  SystemPtr m = BuildMatroid(inst.matroid);
  OraclePtr f = BuildFunction(inst.function);
  Checked out;
  for (int seed = 0; seed < seeds; ++seed) {
    Engine engine;
    EstimatorConfig cfg;
    cfg.max_samples = 300;
    BlockGreedyResult r = BlockGreedy(m, f, eps, {cfg, {}}, seed, engine);
    EXPECT_TRUE(m->IsIndependent(r.I)) << inst.label;
    ElementSet prefix;
    for (const GreedyBlock& block : r.blocks) {
      EXPECT_TRUE(IsSubset(block.I, block.S));
      EXPECT_TRUE(Intersect(block.S, m->Span(prefix)).empty()) << inst.label;
      prefix = Union(prefix, block.S);
    }
    EXPECT_EQ(prefix, r.S);
    int64_t inner = 0;
    for (const TraceEntry& t : r.trace) {
      EXPECT_GE(t.rounds, 1);
      EXPECT_LE(t.rounds, 3);
      inner += t.rounds;
    }
    EXPECT_EQ(engine.meter().rounds(), r.rounds);
    EXPECT_EQ(r.rounds, inner + r.boundary_rounds);
    EXPECT_GE(r.boundary_rounds, 1);
    EXPECT_LE(r.boundary_rounds, 1 + static_cast<int64_t>(r.schedule.size()));
    EXPECT_EQ(engine.meter().phase("lambda_max").rounds, 1);
    EXPECT_EQ(engine.meter().phase("delta_search").rounds,
              r.greedy_sample_calls);
    out.f_of_i.push_back(inst.f(ToMask(r.I)));
    out.f_of_s.push_back(inst.f(ToMask(r.S)));
    out.calls.push_back(static_cast<double>(r.greedy_sample_calls));
  }
  return out;
}

TEST(BlockGreedyTest, InvariantsAndGuarantees) {
  auto suite = ::psm::testing::MonotoneSuite(6, 9, 12, 500);
  const double eps = 0.1;
  for (const auto& inst : suite) {
    Checked c = RunAndCheck(inst, eps, 200);
    auto fi = MeanSe(c.f_of_i);
    auto fs = MeanSe(c.f_of_s);
    EXPECT_GE(fi.mean, (1 - 3 * eps) * fs.mean - 3 * fi.se) << inst.label;
    const double opt =
        ::psm::testing::BruteOptRef(inst.indep, inst.f, inst.n).value;
    EXPECT_GE(fi.mean, (1 - 3 * eps) / 2 * opt - 3 * fi.se) << inst.label;
    // Iterations against log n · log k / ε², with the fitted constant
    // printed for the record.
    SystemPtr m = BuildMatroid(inst.matroid);
    const double k = std::max(2, m->max_cardinality());
    const double scale = std::log(inst.n) * std::log(k) / (eps * eps);
    const double fitted = MeanSe(c.calls).mean / scale;
    RecordProperty(inst.label + "_iteration_constant", std::to_string(fitted));
    EXPECT_LE(fitted, 1.0) << inst.label;
  }
}

TEST(BlockGreedyTest, FatPathHarnessExample) {
  auto inst = GenerateInstance("fat_path", {{"legs", 5}, {"k", 3}}, 0);
  SystemPtr m = BuildMatroid(ParseMatroidSpec(inst["matroid"]));
  OraclePtr f = BuildFunction(ParseFunctionSpec(inst["function"]));
  EXPECT_EQ(m->universe(), 15);
  EXPECT_EQ(AsMatroid(m)->Rank(m->ground()), 5);
  std::vector<double> values;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Engine engine;
    EstimatorConfig cfg;
    cfg.max_samples = 2000;
    BlockGreedyResult r = BlockGreedy(m, f, 0.2, {cfg, {}}, seed, engine);
    values.push_back(f->Eval(r.I));
  }
  EXPECT_GE(MeanSe(values).mean, (1 - 3 * 0.2) * 0.5 * 5);
}

TEST(BlockGreedyTest, WorksOnMatchoids) {
  auto inst =
      GenerateInstance("bipartite_matchoid", {{"a", 4}, {"b", 4}, {"edges", 10}}, 2);
  SystemPtr m = BuildMatroid(ParseMatroidSpec(inst["matroid"]));
  OraclePtr f = BuildFunction(ParseFunctionSpec(inst["function"]));
  const double opt = BruteForceOpt(*m, *f).opt_value;
  std::vector<double> values;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Engine engine;
    EstimatorConfig cfg;
    cfg.max_samples = 500;
    BlockGreedyResult r = BlockGreedy(m, f, 0.1, {cfg, {}}, seed, engine);
    ASSERT_TRUE(m->IsIndependent(r.I));
    values.push_back(f->Eval(r.I));
  }
  auto moments = MeanSe(values);
  // (1 − O(ε))/(p + 1) with p = 2.
  EXPECT_GE(moments.mean, (1 - 3 * 0.1) / 3 * opt - 3 * moments.se);
}

}  // namespace
}  // namespace psm
