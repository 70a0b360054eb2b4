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

#include "psm/amplification.h"

#include <cmath>
#include <utility>

#include "psm/baselines.h"
#include "psm/random.h"

namespace psm {
namespace {

constexpr uint64_t kAuxStream = 21;
constexpr uint64_t kInnerStream = 22;
constexpr uint64_t kUnionStream = 23;

void CheckEps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
}

OraclePtr MakeAux(const OraclePtr& f, const AmplifyConfig& cfg,
                  const AuxLayout& layout, uint64_t seed) {
  if (cfg.aux_factory) return cfg.aux_factory(layout, seed);
  return std::make_shared<SampledAuxFunction>(f, layout, cfg.budget, seed);
}

// OPT̂ from one metered greedy run.
double EstimateOpt(const IndependenceSystem& m, const SubmodularOracle& f,
                   Engine& engine) {
  GreedyRun run = SequentialGreedy(m, f, engine, "opt_estimate");
  if (f.is_monotone()) return run.value;
  return std::max(run.value, run.best_singleton);
}

int ResolveEll(const AmplifyConfig& cfg, double eps) {
  if (cfg.ell < 0) throw ConfigError("ell must be >= 1");
  return cfg.ell == 0 ? DefaultEll(eps) : cfg.ell;
}

}  // namespace

MatchoidConstants ComputeMatchoidConstants(int p) {
  if (p < 1) throw ConfigError("matchoid constants need p >= 1");
  const double root = std::sqrt(static_cast<double>(p) * (p + 1.0));
  MatchoidConstants out;
  out.p = p;
  out.beta = root - p;
  out.ratio = 2.0 * p + 1.0 - 2.0 * root;
  return out;
}

int DefaultEll(double eps) {
  CheckEps(eps);
  return static_cast<int>(std::ceil(4.0 / eps - 1e-12));
}

double AmplifiedLambdaFloor(double eps, double opt_estimate, int k) {
  return eps * eps * opt_estimate / (8.0 * std::max(1, k));
}

MonotoneAmplification AmplifyMonotone(const SystemPtr& m, const OraclePtr& f,
                                      double eps, const AmplifyConfig& cfg,
                                      uint64_t seed, Engine& engine) {
  CheckEps(eps);
  if (!f->is_monotone()) {
    throw IncompatibleError(
        "amplify_monotone requires a monotone function; use "
        "amplify_nonnegative");
  }
  const int ell = ResolveEll(cfg, eps);
  const int n = f->size();
  MonotoneAmplification out;
  out.opt_estimate = EstimateOpt(*m, *f, engine);
  BlockGreedyOptions options;
  options.estimator = cfg.estimator;
  options.lambda_min =
      AmplifiedLambdaFloor(eps, out.opt_estimate, m->max_cardinality());

  std::vector<double> x(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < ell; ++i) {
    OraclePtr g = MakeAux(f, cfg, MonotoneLayout(FractionalPoint(x), ell),
                          DeriveSeed(seed, {kAuxStream, uint64_t(i)}));
    BlockGreedyResult r = BlockGreedy(
        m, g, eps, options, DeriveSeed(seed, {kInnerStream, uint64_t(i)}),
        engine);
    for (Element e : r.I) x[e] += 1.0 / ell;
    out.solution.parts.push_back(r.I);
    out.solution.weights.push_back(1.0 / ell);
    out.inner.push_back(std::move(r));
  }
  out.solution.x = FractionalPoint(std::move(x));
  return out;
}

NonnegativeAmplification AmplifyNonnegative(const SystemPtr& m,
                                            const OraclePtr& f, double eps,
                                            const AmplifyConfig& cfg,
                                            uint64_t seed, Engine& engine) {
  CheckEps(eps);
  if (!f->is_nonnegative()) {
    throw IncompatibleError("amplify_nonnegative requires a nonnegative function");
  }
  const int ell = ResolveEll(cfg, eps);
  NonnegativeAmplification out;
  out.opt_estimate = EstimateOpt(*m, *f, engine);
  BlockGreedyOptions options;
  options.estimator = cfg.estimator;
  options.lambda_min =
      AmplifiedLambdaFloor(eps, out.opt_estimate, m->max_cardinality());

  for (int i = 0; i < ell; ++i) {
    OraclePtr g =
        MakeAux(f, cfg, NonnegativeLayout(f->size(), out.sets, cfg.alpha, ell),
                DeriveSeed(seed, {kAuxStream, uint64_t(i)}));
    BlockGreedyResult r = BlockGreedy(
        m, g, eps, options, DeriveSeed(seed, {kInnerStream, uint64_t(i)}),
        engine);
    out.sets.push_back(r.I);
    out.inner.push_back(std::move(r));
  }
  return out;
}

SampleUnionResult SampleUnion(const std::vector<ElementSet>& sets,
                              double alpha, int ell, uint64_t seed,
                              const IndependenceSystem* m) {
  if (ell < 1) throw ConfigError("ell must be >= 1");
  if (!(alpha >= 0.0 && alpha <= ell)) {
    throw ConfigError("alpha/ell must lie in [0, 1]");
  }
  const double keep = alpha / ell;
  SampleUnionResult out;
  for (size_t i = 0; i < sets.size(); ++i) {
    ElementSet kept;
    for (Element e : sets[i]) {
      if (Uniform01(DeriveSeed(seed, kUnionStream), i, e) < keep) {
        kept.push_back(e);
      }
    }
    out.J = Union(out.J, Normalize(std::move(kept)));
  }
  if (m != nullptr) out.independent = m->IsIndependent(out.J);
  return out;
}

BetaScaledResult BetaScaledSolve(const SystemPtr& m, const OraclePtr& f, int p,
                                 double eps, const AmplifyConfig& cfg,
                                 uint64_t seed, Engine& engine) {
  CheckEps(eps);
  if (!f->is_nonnegative()) {
    throw IncompatibleError("beta_scaled requires a nonnegative function");
  }
  BetaScaledResult out;
  out.constants = ComputeMatchoidConstants(p);
  OraclePtr g = MakeAux(f, cfg, BetaLayout(f->size(), out.constants.beta),
                        DeriveSeed(seed, kAuxStream));
  BlockGreedyOptions options;
  options.estimator = cfg.estimator;
  out.inner = BlockGreedy(m, g, eps, options, DeriveSeed(seed, kInnerStream),
                          engine);
  out.I = out.inner.I;
  out.J = SampleScaled(out.I, out.constants.beta,
                       DeriveSeed(seed, kUnionStream));
  return out;
}

}  // namespace psm
