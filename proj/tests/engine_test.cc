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

#include <atomic>
#include <memory>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "psm/engine.h"
#include "psm/matroid.h"
#include "psm/random.h"
#include "psm/submodular.h"
#include "psm/thread_pool.h"

namespace psm {
namespace {

OraclePtr Ones(int n) {
  return std::make_shared<ModularFunction>(std::vector<double>(n, 1.0));
}

TEST(AdaptivityMeterTest, EmptyBatchIsNoOp) {
  AdaptivityMeter meter;
  meter.RecordBatch({"x", 0, 0});
  EXPECT_EQ(meter.rounds(), 0);
  Engine engine;
  { Round round = engine.BeginRound("empty"); }
  EXPECT_EQ(engine.meter().rounds(), 0);
  EXPECT_TRUE(engine.meter().phases().empty());
}

TEST(AdaptivityMeterTest, OneBatchIsOneRound) {
  AdaptivityMeter meter;
  meter.RecordBatch({"x", 1000, 0});
  EXPECT_EQ(meter.rounds(), 1);
  EXPECT_EQ(meter.f_calls(), 1000);

  Engine engine;
  std::vector<ElementSet> sets(1000, ElementSet{0, 2});
  {
    Round round = engine.BeginRound("work");
    round.Eval(*Ones(4), sets);
  }
  EXPECT_EQ(engine.meter().rounds(), 1);
  EXPECT_EQ(engine.meter().f_calls(), 1000);
  EXPECT_EQ(engine.meter().phase("work").f_calls, 1000);
}

TEST(AdaptivityMeterTest, SequentialBatchesAddUp) {
  AdaptivityMeter meter;
  meter.RecordBatch({"a", 1, 0});
  meter.RecordBatch({"b", 0, 1});
  EXPECT_EQ(meter.rounds(), 2);
  EXPECT_EQ(meter.phase("a").rounds, 1);
  EXPECT_EQ(meter.phase("b").matroid_calls, 1);
}

TEST(AdaptivityMeterTest, MixedOraclesShareOneRound) {
  Engine engine;
  MatroidSpec spec;
  spec.kind = MatroidKind::kUniform;
  spec.n = 4;
  spec.k = 2;
  SystemPtr m = BuildMatroid(spec);
  std::vector<ElementSet> sets = {{0}, {1, 2}, {0, 1, 3}};
  {
    Round round = engine.BeginRound("mixed");
    round.Eval(*Ones(4), sets);
    round.IsIndependent(*m, sets);
    round.Span(*m, sets);
  }
  EXPECT_EQ(engine.meter().rounds(), 1);
  EXPECT_EQ(engine.meter().f_calls(), 3);
  EXPECT_EQ(engine.meter().matroid_calls(), 6);
}

TEST(AdaptivityMeterTest, NestedBatchesAreRejected) {
  Engine engine;
  Round outer = engine.BeginRound("outer");
  EXPECT_THROW(engine.BeginRound("inner"), std::logic_error);
  EXPECT_THROW(engine.meter().RecordBatch({"inner", 1, 0}), std::logic_error);
  outer.Close();
  EXPECT_NO_THROW(engine.BeginRound("after"));
}

TEST(RoundTest, ChainQueriesChargeEveryPrefix) {
  Engine engine;
  MatroidSpec spec;
  spec.kind = MatroidKind::kUniform;
  spec.n = 5;
  spec.k = 3;
  SystemPtr m = BuildMatroid(spec);
  std::vector<ChainQuery> chains = {{{0}, {1, 2, 3}, 4}, {{}, {2}, 0}};
  std::vector<std::vector<uint8_t>> spanned;
  std::vector<std::vector<double>> margins;
  {
    Round round = engine.BeginRound("chains");
    spanned = round.ChainInSpan(*m, chains);
    margins = round.ChainMargins(*Ones(5), chains);
  }
  EXPECT_EQ(engine.meter().rounds(), 1);
  // 4 + 2 prefixes; two evaluations per margin.
  EXPECT_EQ(engine.meter().matroid_calls(), 6);
  EXPECT_EQ(engine.meter().f_calls(), 12);
  EXPECT_EQ(spanned[0], (std::vector<uint8_t>{0, 0, 1, 1}));
  EXPECT_EQ(margins[0], (std::vector<double>{1, 1, 1, 1}));
}

TEST(RoundTest, ResultsDoNotDependOnWorkers) {
  FunctionSpec spec;
  spec.kind = FunctionKind::kCoverage;
  spec.item_weights.assign(30, 1.0);
  SplitMix64 rng(4);
  for (int e = 0; e < 40; ++e) {
    spec.sets.push_back({});
    for (int u = 0; u < 30; ++u) {
      if (rng.Unit() < 0.2) spec.sets.back().push_back(u);
    }
  }
  OraclePtr f = BuildFunction(spec);
  std::vector<ElementSet> sets;
  for (int i = 0; i < 500; ++i) {
    ElementSet s;
    for (int e = 0; e < 40; ++e) {
      if (Uniform01(9, i, e) < 0.3) s.push_back(e);
    }
    sets.push_back(s);
  }
  std::vector<double> serial, parallel;
  {
    Engine engine(1);
    Round round = engine.BeginRound("x");
    serial = round.Eval(*f, sets);
  }
  {
    Engine engine(4);
    Round round = engine.BeginRound("x");
    parallel = round.Eval(*f, sets);
    EXPECT_EQ(engine.pool().workers(), 4);
  }
  EXPECT_EQ(serial, parallel);
}

TEST(ThreadPoolTest, RunsEveryIndexAndRethrows) {
  ThreadPool pool(3);
  std::vector<std::atomic<int>> hits(1000);
  pool.ParallelFor(hits.size(), [&](size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(pool.ParallelFor(100,
                                [](size_t i) {
                                  if (i == 57) throw std::runtime_error("x");
                                }),
               std::runtime_error);
  // Nested calls run inline instead of deadlocking.
  std::atomic<int> total = 0;
  pool.ParallelFor(8, [&](size_t) {
    pool.ParallelFor(8, [&](size_t) { total++; });
  });
  EXPECT_EQ(total.load(), 64);
}

TEST(RandomTest, CounterBasedStreamsAreStable) {
  EXPECT_EQ(Uniform01(1, 2, 3), Uniform01(1, 2, 3));
  EXPECT_NE(Uniform01(1, 2, 3), Uniform01(1, 2, 4));
  EXPECT_NE(DeriveSeed(5, 1), DeriveSeed(5, 2));
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) sum += Uniform01(7, i, 0);
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(UniformIndex(3, i, 0, 7), 7u);
}

}  // namespace
}  // namespace psm
