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
#include "psm/engine.h"
#include "psm/estimator.h"
#include "psm/matroid.h"
#include "psm/submodular.h"
#include "testing/instances.h"
#include "testing/oracles.h"

namespace psm {
namespace {

using ::psm::testing::Bit;
using ::psm::testing::ExpectOverSample;
using ::psm::testing::Full;
using ::psm::testing::Mask;
using ::psm::testing::Popcount;

SystemPtr Free(int n) {
  MatroidSpec spec;
  spec.kind = MatroidKind::kUniform;
  spec.n = n;
  spec.k = n;
  return BuildMatroid(spec);
}

SystemPtr FatPath(int legs, int k) {
  MatroidSpec spec;
  spec.kind = MatroidKind::kGraphic;
  spec.vertices = legs + 1;
  for (int leg = 0; leg < legs; ++leg) {
    for (int c = 0; c < k; ++c) spec.edges.emplace_back(leg, leg + 1);
  }
  return BuildMatroid(spec);
}

OraclePtr Modular(std::vector<double> w) {
  return std::make_shared<ModularFunction>(std::move(w));
}

TEST(ChernoffSamplesTest, Examples) {
  EXPECT_EQ(ChernoffSamples(100, 0.1, 10, 0.01), 1590);
  EXPECT_EQ(ChernoffSamples(100, 0.1, 10, 0.01),
            ::psm::testing::ChernoffRef(100, 0.1, 10, 0.01));
  // Linear in n up to the final ceiling.
  const int64_t m1 = ChernoffSamples(100, 0.2, 3, 0.05);
  const int64_t m2 = ChernoffSamples(200, 0.2, 3, 0.05);
  EXPECT_GE(m2, 2 * m1 - 1);
  EXPECT_LE(m2, 2 * m1);
  // As fail → 1 only the ln c term remains.
  EXPECT_EQ(ChernoffSamples(10, 1.0, 1.0, 1.0 - 1e-12),
            static_cast<int64_t>(std::ceil(10 * std::log(2.0) * 3.0)));
  EXPECT_EQ(ChernoffSamples(1, 100.0, 100.0, 0.9), 1);
}

TEST(ChernoffSamplesTest, RejectsBadArguments) {
  EXPECT_THROW(ChernoffSamples(10, 0.0, 1, 0.1), ConfigError);
  EXPECT_THROW(ChernoffSamples(10, 0.1, -1, 0.1), ConfigError);
  EXPECT_THROW(ChernoffSamples(10, 0.1, 1, 0.0), ConfigError);
  EXPECT_THROW(ChernoffSamples(10, 0.1, 1, 1.0), ConfigError);
  EXPECT_THROW(ChernoffSamples(0, 0.1, 1, 0.5), ConfigError);
}

TEST(EstimateSpanFractionTest, ZeroDeltaGivesZero) {
  Engine engine;
  EXPECT_EQ(EstimateSpanFraction(*Free(10), 0.0, 100, 1, engine), 0.0);
  EXPECT_EQ(EstimateSpanFraction(*FatPath(3, 2), 0.0, 100, 1, engine), 0.0);
}

TEST(EstimateSpanFractionTest, FreeMatroidGivesDeltaN) {
  Engine engine;
  const double est = EstimateSpanFraction(*Free(100), 0.1, 100000, 3, engine);
  EXPECT_NEAR(est, 10.0, 0.5);
  EXPECT_EQ(engine.meter().rounds(), 1);
  EXPECT_EQ(engine.meter().matroid_calls(), 100000);
}

TEST(EstimateSpanFractionTest, FatPathMatchesPerLegExpectation) {
  // A leg is spanned once any of its k copies is sampled, so
  // E|span(S)| = n·(1 − (1 − δ)^k).
  const int legs = 20, k = 5;
  const double eps = 0.2, delta = eps / k;
  const double n = legs * k;
  const double exact = n * (1.0 - std::pow(1.0 - delta, k));
  Engine engine;
  const double est =
      EstimateSpanFraction(*FatPath(legs, k), delta, 200000, 5, engine);
  EXPECT_NEAR(est, exact, 3.0 * n * std::sqrt(0.25 / 200000));
  // About an ε fraction of the legs.
  EXPECT_NEAR(exact / n, eps, eps * eps);
}

TEST(EstimateSpanFractionTest, UnbiasedOverSeeds) {
  for (uint64_t inst_seed = 0; inst_seed < 3; ++inst_seed) {
    auto inst = ::psm::testing::MakeInstance(
        ::psm::testing::MatroidFamily::kGraphic,
        ::psm::testing::FunctionFamily::kModular, 8, inst_seed);
    SystemPtr m = BuildMatroid(inst.matroid);
    const double delta = 0.3;
    auto spans = ::psm::testing::MatroidSpans(inst.indep);
    const double exact = ExpectOverSample(Full(8), delta, [&](Mask s) {
      double count = 0;
      for (int e = 0; e < 8; ++e) count += spans(s, e) ? 1 : 0;
      return count;
    });
    std::vector<double> estimates;
    for (uint64_t seed = 0; seed < 200; ++seed) {
      Engine engine;
      estimates.push_back(EstimateSpanFraction(*m, delta, 50, seed, engine));
    }
    auto moments = ::psm::testing::MeanSe(estimates);
    EXPECT_NEAR(moments.mean, exact, 3.0 * moments.se) << inst.label;
  }
}

// E_δ'|span| ≤ E_δ|span| ≤ E_δ'|span| + (δ − δ')·n² for δ' < δ.
TEST(SensitivityTest, SpanExpectationIsMonotoneAndLipschitz) {
  for (uint64_t inst_seed = 0; inst_seed < 4; ++inst_seed) {
    auto inst = ::psm::testing::MakeInstance(
        inst_seed % 2 ? ::psm::testing::MatroidFamily::kGraphic
                      : ::psm::testing::MatroidFamily::kPartition,
        ::psm::testing::FunctionFamily::kModular, 9, inst_seed);
    SystemPtr m = BuildMatroid(inst.matroid);
    auto expected_span = [&](double delta) {
      return ExpectOverSample(Full(9), delta, [&](Mask s) {
        return static_cast<double>(
            m->Span(::psm::testing::ToSet(s)).size());
      });
    };
    double previous = expected_span(0.0);
    for (double delta = 0.05; delta <= 1.0; delta += 0.05) {
      const double current = expected_span(delta);
      EXPECT_GE(current, previous - 1e-12) << inst.label;
      EXPECT_LE(current, previous + 0.05 * 81 + 1e-12) << inst.label;
      previous = current;
    }
  }
}

TEST(EstimateLowMarginFractionTest, ModularWithHighWeightsGivesZero) {
  OraclePtr f = Modular({1.0, 1.0, 1.0, 1.0});
  ElementSet ground = {0, 1, 2, 3};
  Engine engine;
  // Margins of e ∉ S stay 1 > 0.9; only members of S count, so δ = 0
  // gives exactly zero.
  EXPECT_EQ(EstimateLowMarginFraction(*f, ground, 1.0, 0.1, 0.0, 500, 1,
                                      engine),
            0.0);
}

TEST(EstimateLowMarginFractionTest, DuplicateSetsExample) {
  // A and B both cover the single item u.
  auto f = std::make_shared<CoverageFunction>(
      std::vector<double>{1.0}, std::vector<std::vector<int>>{{0}, {0}});
  auto ref = ::psm::testing::CoverageRef({1.0}, {{0}, {0}});
  const double exact = ExpectOverSample(Full(2), 0.5, [&](Mask s) {
    double count = 0;
    for (int e = 0; e < 2; ++e) {
      count += ref(s | Bit(e)) - ref(s) <= 0.9 ? 1 : 0;
    }
    return count;
  });
  EXPECT_DOUBLE_EQ(exact, 1.5);
  ElementSet ground = {0, 1};
  Engine engine;
  const double est =
      EstimateLowMarginFraction(*f, ground, 1.0, 0.1, 0.5, 100000, 2, engine);
  EXPECT_NEAR(est, exact, 0.02);
  EXPECT_EQ(engine.meter().rounds(), 1);
  EXPECT_EQ(engine.meter().f_calls(), 2 * 100000);
}

TEST(EstimateLowMarginFractionTest, UnbiasedOverSeeds) {
  for (uint64_t inst_seed = 0; inst_seed < 3; ++inst_seed) {
    auto inst = ::psm::testing::MakeInstance(
        ::psm::testing::MatroidFamily::kUniform,
        ::psm::testing::FunctionFamily::kCoverage, 8, inst_seed);
    OraclePtr f = BuildFunction(inst.function);
    double lambda = 0.0;
    for (int e = 0; e < 8; ++e) lambda = std::max(lambda, inst.f(Bit(e)));
    const double eps = 0.2, delta = 0.2;
    const double exact = ExpectOverSample(Full(8), delta, [&](Mask s) {
      double count = 0;
      for (int e = 0; e < 8; ++e) {
        count += inst.f(s | Bit(e)) - inst.f(s) <= (1 - eps) * lambda ? 1 : 0;
      }
      return count;
    });
    ElementSet ground = ::psm::testing::ToSet(Full(8));
    std::vector<double> estimates;
    for (uint64_t seed = 0; seed < 200; ++seed) {
      Engine engine;
      estimates.push_back(EstimateLowMarginFraction(*f, ground, lambda, eps,
                                                    delta, 50, seed, engine));
    }
    auto moments = ::psm::testing::MeanSe(estimates);
    EXPECT_NEAR(moments.mean, exact, 3.0 * moments.se) << inst.label;
  }
}

TEST(FindDeltaTest, UsesOneRound) {
  Engine engine;
  DeltaSearch search =
      FindDelta(*Free(20), *Modular(std::vector<double>(20, 1.0)), 1.0, 0.2,
                EstimatorConfig{}, 1, engine);
  EXPECT_EQ(engine.meter().rounds(), 1);
  EXPECT_EQ(engine.meter().phase("delta_search").rounds, 1);
  EXPECT_GT(search.delta, 0.0);
}

TEST(FindDeltaTest, EmptyGround) {
  MatroidSpec spec;
  spec.kind = MatroidKind::kUniform;
  spec.n = 3;
  spec.k = 1;
  SystemPtr m = BuildMatroid(spec)->Restrict({});
  Engine engine;
  DeltaSearch search =
      FindDelta(*m, *Modular({1, 1, 1}), 1.0, 0.2, EstimatorConfig{}, 1, engine);
  EXPECT_EQ(search.index, 0);
  EXPECT_EQ(search.delta, 0.0);
  EXPECT_EQ(engine.meter().rounds(), 0);
}

TEST(FindDeltaTest, GridFollowsRankAndSize) {
  const EstimatorConfig cfg;
  Engine engine;
  // n = 40, k = 40, ε = 0.2: min(⌈16·40/0.05⌉, ⌊4·40/0.05⌋) = 3200.
  DeltaSearch search = FindDelta(*Free(40), *Modular(std::vector<double>(40, 1)),
                                 1.0, 0.2, cfg, 3, engine);
  EXPECT_EQ(search.grid_size, 3200);
  EXPECT_DOUBLE_EQ(search.step, 0.25 * 0.2 / (4 * 40));
  EXPECT_EQ(search.samples, DeltaSearchSamples(40, 3200, 0.2, cfg));
  // Estimates are monotone in the grid index (coupled samples).
  for (int i = 2; i <= search.grid_size; ++i) {
    ASSERT_GE(search.span_estimates[i], search.span_estimates[i - 1]);
    ASSERT_GE(search.low_margin_estimates[i],
              search.low_margin_estimates[i - 1]);
  }
}

// Free matroid with equal modular weights: both expectations are δn in
// closed form, so the accepted δ sits at the last grid point below 3ε/4
// up to estimation error, and within the lemma's window.
TEST(FindDeltaTest, FreeMatroidModularEqualWeights) {
  const int n = 50;
  const double eps = 0.2;
  Engine engine;
  DeltaSearch search = FindDelta(*Free(n), *Modular(std::vector<double>(n, 1)),
                                 1.0, eps, EstimatorConfig{}, 7, engine);
  const double target = std::floor(0.75 * eps / search.step) * search.step;
  const double se = std::sqrt(target * n / search.samples);
  EXPECT_NEAR(search.delta, target, 3.0 * se + search.step);
  EXPECT_LE(search.delta * n, eps * n);
  EXPECT_GE(search.delta * n, 0.5 * eps * n);
}

TEST(FindDeltaTest, SingleElement) {
  const double eps = 0.2;
  Engine engine;
  DeltaSearch search = FindDelta(*Free(1), *Modular({1.0}), 1.0, eps,
                                 EstimatorConfig{}, 11, engine);
  // Grid: min(⌈16/0.05⌉, ⌊4/0.05⌋) = 80 points of step ε/16; with exact
  // expectations δ itself, the largest admissible point is i = 12.
  EXPECT_EQ(search.grid_size, 80);
  const double se = std::sqrt(0.15 / search.samples);
  EXPECT_NEAR(search.delta, 12 * search.step, 3.0 * se + search.step);
}

TEST(FindDeltaTest, FatPathScalesLikeEpsOverK) {
  const double eps = 0.2;
  for (int k : {2, 4, 8}) {
    Engine engine;
    const int legs = 16, n = legs * k;
    EstimatorConfig cfg;
    DeltaSearch search =
        FindDelta(*FatPath(legs, k), *Modular(std::vector<double>(n, 1.0)), 1.0,
                  eps, cfg, 13, engine);
    // δ·k stays within a constant band around ε as k varies.
    EXPECT_GT(search.delta * k, 0.25 * eps) << k;
    EXPECT_LT(search.delta * k, 2.0 * eps) << k;
  }
}

TEST(FindDeltaTest, RejectsBadArguments) {
  Engine engine;
  EXPECT_THROW(FindDelta(*Free(3), *Modular({1, 1, 1}), 1.0, 0.0,
                         EstimatorConfig{}, 1, engine),
               ConfigError);
  EstimatorConfig bad;
  bad.grid_constant = 0.0;
  EXPECT_THROW(FindDelta(*Free(3), *Modular({1, 1, 1}), 1.0, 0.1, bad, 1,
                         engine),
               ConfigError);
}

// Conditions (1) and (2): exact expectations at the returned δ are at most
// εn, whenever (1−ε)λ ≤ f(e) ≤ λ on the ground set.
TEST(FindDeltaTest, ExactConditionsOnEnumerableInstances) {
  auto suite = ::psm::testing::MonotoneSuite(12, 6, 10, 100, /*narrow=*/true);
  for (const auto& inst : suite) {
    SystemPtr m = BuildMatroid(inst.matroid);
    OraclePtr f = BuildFunction(inst.function);
    const double lambda = ::psm::testing::MaxSingleton(inst);
    for (int e = 0; e < inst.n; ++e) {
      ASSERT_GE(inst.f(Bit(e)), 0.9 * lambda) << inst.label;
    }
    for (double eps : {0.1, 0.2}) {
      Engine engine;
      DeltaSearch search =
          FindDelta(*m, *f, lambda, eps, EstimatorConfig{}, 5, engine);
      auto expectations = ::psm::testing::ExactGreedyStep(
          Full(inst.n), inst.f, ::psm::testing::MatroidSpans(inst.indep),
          lambda, eps, search.delta);
      EXPECT_LE(expectations.span, eps * inst.n + 1e-9) << inst.label;
      EXPECT_LE(expectations.low_margin, eps * inst.n + 1e-9) << inst.label;
    }
  }
}

}  // namespace
}  // namespace psm
