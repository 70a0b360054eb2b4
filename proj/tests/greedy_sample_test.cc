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

#include <memory>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "psm/engine.h"
#include "psm/greedy_sample.h"
#include "psm/instance.h"
#include "psm/matroid.h"
#include "psm/submodular.h"
#include "testing/instances.h"
#include "testing/oracles.h"

namespace psm {
namespace {

using ::psm::testing::Bit;
using ::psm::testing::Full;
using ::psm::testing::Mask;
using ::psm::testing::ToMask;
using ::psm::testing::ToSet;

SystemPtr Free(int n) {
  MatroidSpec spec;
  spec.kind = MatroidKind::kUniform;
  spec.n = n;
  spec.k = n;
  return BuildMatroid(spec);
}

SystemPtr Triangle() {
  MatroidSpec spec;
  spec.kind = MatroidKind::kGraphic;
  spec.vertices = 3;
  spec.edges = {{0, 1}, {1, 2}, {0, 2}};
  return BuildMatroid(spec);
}

OraclePtr Constant(int n, double w) {
  return std::make_shared<ModularFunction>(std::vector<double>(n, w));
}

OraclePtr Abc() {
  return std::make_shared<CoverageFunction>(
      std::vector<double>{1, 1, 1},
      std::vector<std::vector<int>>{{0, 1}, {1, 2}, {0}});
}

OraclePtr Duplicates() {
  return std::make_shared<CoverageFunction>(
      std::vector<double>{1.0}, std::vector<std::vector<int>>{{0}, {0}});
}

TEST(GreedySampleTest, FreeMatroidKeepsTheWholeSample) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Engine engine;
    GreedySampleResult r = GreedySample(*Free(30), *Constant(30, 2.0), 2.0, 0.2,
                                        EstimatorConfig{}, seed, engine);
    EXPECT_EQ(r.block.I, r.block.S);
    EXPECT_EQ(r.rounds, 3);
    EXPECT_EQ(engine.meter().rounds(), 3);
    EXPECT_EQ(r.residual.survivors, Difference(Range(30), r.block.S));
  }
}

TEST(GreedySampleTest, EmptyGround) {
  Engine engine;
  SystemPtr m = Free(4)->Restrict({});
  GreedySampleResult r = GreedySample(*m, *Constant(4, 1.0), 1.0, 0.2,
                                      EstimatorConfig{}, 1, engine);
  EXPECT_TRUE(r.block.I.empty());
  EXPECT_TRUE(r.block.S.empty());
  EXPECT_TRUE(r.residual.survivors.empty());
  EXPECT_EQ(engine.meter().rounds(), 0);
}

TEST(GreedySampleTest, RejectsPreconditionViolations) {
  Engine engine;
  EXPECT_THROW(GreedySample(*Free(5), *Constant(5, 2.0), 1.0, 0.2,
                            EstimatorConfig{}, 1, engine),
               ConfigError);
  Engine other;
  GreedySampleOptions options;
  options.check_precondition = false;
  EXPECT_NO_THROW(GreedySample(*Free(5), *Constant(5, 2.0), 1.0, 0.2,
                               EstimatorConfig{}, 1, other, options));
}

// Fat tail: one leg of k parallel edges and n − k single-edge legs. Only
// the fat leg can lose sampled edges, and it loses about δk of them.
TEST(GreedySampleTest, FatTailPrunesOnlyTheTail) {
  const int n = 120, k = 12;
  const double eps = 0.2;
  auto inst = GenerateInstance("fat_tail", {{"n", n}, {"k", k}}, 0);
  SystemPtr m = BuildMatroid(ParseMatroidSpec(inst["matroid"]));
  OraclePtr f = BuildFunction(ParseFunctionSpec(inst["function"]));
  double pruned = 0, sampled = 0, delta_k = 0;
  const int seeds = 40;
  for (int seed = 0; seed < seeds; ++seed) {
    Engine engine;
    EstimatorConfig cfg;
    cfg.max_samples = 4000;
    GreedySampleResult r = GreedySample(*m, *f, 1.0, eps, cfg, seed, engine);
    ElementSet lost = Difference(r.block.S, r.block.I);
    for (Element e : lost) EXPECT_LT(e, k);
    pruned += static_cast<double>(lost.size());
    sampled += static_cast<double>(r.block.S.size());
    delta_k += r.search.delta * k;
  }
  pruned /= seeds;
  sampled /= seeds;
  delta_k /= seeds;
  EXPECT_LE(pruned, delta_k + 1.0);
  EXPECT_GE(sampled, 5.0 * pruned);
}

TEST(PruneTest, Examples) {
  Engine engine;
  EXPECT_EQ(Prune(*Free(3), *Constant(3, 1.0), {0, 2}, 1.0, 0.1, engine),
            (ElementSet{0, 2}));
  EXPECT_EQ(Prune(*Triangle(), *Constant(3, 1.0), {0, 1, 2}, 1.0, 0.1, engine),
            ElementSet{});
  EXPECT_EQ(Prune(*Free(2), *Duplicates(), {0, 1}, 1.0, 0.1, engine),
            ElementSet{});
  EXPECT_EQ(engine.meter().rounds(), 3);
}

TEST(ResidualTest, Examples) {
  Engine engine;
  ResidualReport all = Residual(*Free(3), *Abc(), {}, 2.0, 0.4, engine);
  EXPECT_EQ(all.survivors, (ElementSet{0, 1}));
  ResidualReport none =
      Residual(*Triangle(), *Constant(3, 1.0), {0, 1}, 1.0, 0.1, engine);
  EXPECT_TRUE(none.survivors.empty());
  EXPECT_EQ(none.before, 3);
  EXPECT_EQ(none.after, 0);
  EXPECT_TRUE(Residual(*Free(3), *Abc(), {0}, 2.0, 0.4, engine).survivors.empty());
  EXPECT_EQ(Residual(*Free(3), *Abc(), {0}, 1.0, 0.4, engine).survivors,
            (ElementSet{1}));
}

TEST(ResidualTest, EmptySampleKeepsElementsAboveThreshold) {
  // With f(e) ≥ (1−ε)λ everywhere, S = ∅ keeps all of N.
  Engine engine;
  ResidualReport r = Residual(*Free(4), *Constant(4, 1.0), {}, 1.0, 0.2, engine);
  EXPECT_EQ(r.survivors, Range(4));
}

// Prune and residual agree with the reference definitions on random sets.
TEST(PruneTest, MatchesReferenceOnRandomSets) {
  std::mt19937_64 rng(3);
  auto suite = ::psm::testing::MonotoneSuite(9, 7, 9, 200);
  for (const auto& inst : suite) {
    SystemPtr m = BuildMatroid(inst.matroid);
    OraclePtr f = BuildFunction(inst.function);
    auto spans = ::psm::testing::MatroidSpans(inst.indep);
    const double lambda = ::psm::testing::MaxSingleton(inst);
    const double eps = 0.2, keep = (1 - eps) * lambda;
    for (int trial = 0; trial < 20; ++trial) {
      const Mask s = static_cast<Mask>(rng()) & Full(inst.n);
      Engine engine;
      Mask kept = 0;
      for (Element e : ToSet(s)) {
        const Mask rest = s & ~Bit(e);
        if (inst.f(s) - inst.f(rest) >= keep && !spans(rest, e)) kept |= Bit(e);
      }
      EXPECT_EQ(ToMask(Prune(*m, *f, ToSet(s), lambda, eps, engine)), kept)
          << inst.label;
      Mask survivors = 0;
      for (int e = 0; e < inst.n; ++e) {
        if (!spans(s, e) && inst.f(s | Bit(e)) - inst.f(s) >= keep) {
          survivors |= Bit(e);
        }
      }
      EXPECT_EQ(ToMask(Residual(*m, *f, ToSet(s), lambda, eps, engine).survivors),
                survivors)
          << inst.label;
    }
  }
}

TEST(GreedySampleTest, OutputIsIndependentForEverySeed) {
  auto suite = ::psm::testing::MonotoneSuite(6, 8, 10, 300);
  for (const auto& inst : suite) {
    SystemPtr m = BuildMatroid(inst.matroid);
    OraclePtr f = BuildFunction(inst.function);
    const double lambda = ::psm::testing::MaxSingleton(inst);
    for (uint64_t seed = 0; seed < 30; ++seed) {
      Engine engine;
      EstimatorConfig cfg;
      cfg.max_samples = 500;
      GreedySampleResult r =
          GreedySample(*m, *f, lambda, 0.2, cfg, seed, engine);
      EXPECT_TRUE(m->IsIndependent(r.block.I)) << inst.label;
      EXPECT_TRUE(IsSubset(r.block.I, r.block.S));
      EXPECT_LE(engine.meter().rounds(), 3);
      EXPECT_EQ(engine.meter().phase("delta_search").rounds, 1);
    }
  }
}

TEST(GreedySampleTest, SeedsAreReproducible) {
  auto inst = ::psm::testing::MakeInstance(
      ::psm::testing::MatroidFamily::kGraphic,
      ::psm::testing::FunctionFamily::kCoverage, 10, 5);
  SystemPtr m = BuildMatroid(inst.matroid);
  OraclePtr f = BuildFunction(inst.function);
  const double lambda = ::psm::testing::MaxSingleton(inst);
  Engine a, b(3);
  GreedySampleResult ra = GreedySample(*m, *f, lambda, 0.1, {}, 99, a);
  GreedySampleResult rb = GreedySample(*m, *f, lambda, 0.1, {}, 99, b);
  EXPECT_EQ(ra.block.S, rb.block.S);
  EXPECT_EQ(ra.block.I, rb.block.I);
  EXPECT_EQ(ra.search.delta, rb.search.delta);
  EXPECT_EQ(a.meter().f_calls(), b.meter().f_calls());
}

// Greedy-block inequality and residual decay by exact enumeration over
// S ∼ δN, for the δ the search returns.
TEST(GreedySampleTest, ExactGreedyBlockAndDecay) {
  auto suite = ::psm::testing::MonotoneSuite(9, 7, 10, 400, /*narrow=*/true);
  for (const auto& inst : suite) {
    SystemPtr m = BuildMatroid(inst.matroid);
    OraclePtr f = BuildFunction(inst.function);
    const double lambda = ::psm::testing::MaxSingleton(inst);
    for (double eps : {0.1, 0.2}) {
      Engine engine;
      DeltaSearch search = FindDelta(*m, *f, lambda, eps, {}, 21, engine);
      auto ex = ::psm::testing::ExactGreedyStep(
          Full(inst.n), inst.f, ::psm::testing::MatroidSpans(inst.indep),
          lambda, eps, search.delta);
      EXPECT_GE(ex.f_of_i, (1 - 3 * eps) * ex.size_of_s * lambda - 1e-9)
          << inst.label << " eps " << eps;
      EXPECT_LE(ex.survivors, (1 - eps / 2) * inst.n + 1e-9)
          << inst.label << " eps " << eps;
    }
  }
}

}  // namespace
}  // namespace psm
