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

#include "psm/greedy_sample.h"

#include <sstream>
#include <utility>
#include <vector>

#include "psm/random.h"

namespace psm {
namespace {

constexpr uint64_t kSearchStream = 11;
constexpr uint64_t kSampleStream = 12;

// Relative slack for exact comparisons against λ.
constexpr double kRoundoff = 1e-9;

void CheckThreshold(double lambda, double eps) {
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
}

struct PruneOutcome {
  ElementSet independent;
  bool violated = false;
  Element violator = -1;
  double violation = 0.0;
};

PruneOutcome PruneRound(const IndependenceSystem& m, const SubmodularOracle& f,
                        const ElementSet& s, double lambda, double eps,
                        double band, bool check, Engine& engine) {
  const ElementSet& ground = m.ground();
  std::vector<ElementSet> sets;
  sets.reserve(s.size() + 1 + (check ? ground.size() : 0));
  sets.push_back(s);
  std::vector<ElementSet> rest;
  std::vector<Element> probes;
  for (Element e : s) {
    sets.push_back(Without(s, e));
    rest.push_back(sets.back());
    probes.push_back(e);
  }
  if (check) {
    for (Element e : ground) sets.push_back(ElementSet{e});
  }

  std::vector<double> values;
  std::vector<uint8_t> spanned;
  {
    Round round = engine.BeginRound("prune");
    if (s.empty() && !check) return {};
    values = round.Eval(f, s.empty() ? std::span<const ElementSet>(sets).subspan(1)
                                     : std::span<const ElementSet>(sets));
    if (s.empty()) values.insert(values.begin(), 0.0);
    spanned = round.InSpan(m, rest, probes);
  }

  PruneOutcome out;
  if (check) {
    const double limit =
        lambda + 2.0 * band / (1.0 - eps) + kRoundoff * std::max(1.0, lambda);
    for (size_t i = 0; i < ground.size(); ++i) {
      double v = values[1 + s.size() + i];
      if (v > limit) {
        out.violated = true;
        out.violator = ground[i];
        out.violation = v;
        return out;
      }
    }
  }
  const double keep = (1.0 - eps) * lambda - 2.0 * band;
  for (size_t i = 0; i < s.size(); ++i) {
    double margin = values[0] - values[1 + i];
    if (margin >= keep && !spanned[i]) out.independent.push_back(s[i]);
  }
  return out;
}

ResidualReport ResidualRound(const IndependenceSystem& m,
                             const SubmodularOracle& f, const ElementSet& s,
                             double lambda, double eps, double band,
                             Engine& engine) {
  const ElementSet& ground = m.ground();
  ResidualReport out;
  out.before = static_cast<int64_t>(ground.size());
  ElementSet candidates = Difference(ground, s);
  if (candidates.empty()) return out;
  std::vector<ElementSet> sets;
  sets.reserve(candidates.size() + 1);
  sets.push_back(s);
  for (Element e : candidates) sets.push_back(With(s, e));
  std::vector<double> values;
  std::vector<ElementSet> span;
  {
    Round round = engine.BeginRound("residual");
    span = round.Span(m, std::span<const ElementSet>(&s, 1));
    if (s.empty()) {
      std::vector<double> singles =
          round.Eval(f, std::span<const ElementSet>(sets).subspan(1));
      values.push_back(0.0);
      values.insert(values.end(), singles.begin(), singles.end());
    } else {
      values = round.Eval(f, sets);
    }
  }
  const double keep = (1.0 - eps) * lambda + 2.0 * band;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (Contains(span[0], candidates[i])) continue;
    if (values[1 + i] - values[0] >= keep) {
      out.survivors.push_back(candidates[i]);
    }
  }
  out.after = static_cast<int64_t>(out.survivors.size());
  return out;
}

}  // namespace

double MarginBand(const SubmodularOracle& f, double lambda, double eps) {
  return f.is_estimated() ? eps * lambda / 8.0 : 0.0;
}

ElementSet Prune(const IndependenceSystem& m, const SubmodularOracle& f,
                 const ElementSet& s, double lambda, double eps,
                 Engine& engine) {
  CheckThreshold(lambda, eps);
  return PruneRound(m, f, Normalize(s), lambda, eps,
                    MarginBand(f, lambda, eps), false, engine)
      .independent;
}

ResidualReport Residual(const IndependenceSystem& m, const SubmodularOracle& f,
                        const ElementSet& s, double lambda, double eps,
                        Engine& engine) {
  CheckThreshold(lambda, eps);
  return ResidualRound(m, f, Normalize(s), lambda, eps,
                       MarginBand(f, lambda, eps), engine);
}

GreedySampleResult GreedySample(const IndependenceSystem& m,
                                const SubmodularOracle& f, double lambda,
                                double eps, const EstimatorConfig& cfg,
                                uint64_t seed, Engine& engine,
                                const GreedySampleOptions& options) {
  CheckThreshold(lambda, eps);
  GreedySampleResult out;
  out.block.lambda = lambda;
  out.block.eps = eps;
  if (m.ground().empty()) return out;
  const int64_t rounds_before = engine.meter().rounds();
  const double band = MarginBand(f, lambda, eps);

  out.search = FindDelta(m, f, lambda, eps, cfg,
                         DeriveSeed(seed, kSearchStream), engine, band);
  const uint64_t sample_seed = DeriveSeed(seed, kSampleStream);
  for (Element e : m.ground()) {
    if (Uniform01(sample_seed, 0, e) < out.search.delta) {
      out.block.S.push_back(e);
    }
  }

  PruneOutcome pruned = PruneRound(m, f, out.block.S, lambda, eps, band,
                                   options.check_precondition, engine);
  if (pruned.violated) {
    std::ostringstream msg;
    msg << "greedy_sample precondition violated: f({" << pruned.violator
        << "}) = " << pruned.violation << " exceeds lambda = " << lambda;
    throw ConfigError(msg.str());
  }
  out.block.I = std::move(pruned.independent);
  out.residual = ResidualRound(m, f, out.block.S, lambda, eps, band, engine);
  out.rounds = engine.meter().rounds() - rounds_before;
  return out;
}

}  // namespace psm
