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

#include "psm/estimator.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "psm/random.h"

namespace psm {
namespace {

constexpr uint64_t kMembershipStream = 1;
constexpr uint64_t kProbeStream = 2;

struct PairSample {
  ElementSet set;
  Element probe;
};

// Draws S ∼ δ·ground and a uniform probe for sample j.
PairSample DrawPair(std::span<const Element> ground, double delta,
                    uint64_t seed, uint64_t j) {
  const uint64_t membership = DeriveSeed(seed, kMembershipStream);
  PairSample out;
  for (Element e : ground) {
    if (Uniform01(membership, j, e) < delta) out.set.push_back(e);
  }
  const uint64_t probe = DeriveSeed(seed, kProbeStream);
  out.probe = ground[UniformIndex(probe, j, 0, ground.size())];
  return out;
}

void CheckSamples(int64_t samples) {
  if (samples < 1) throw ConfigError("estimators need at least one sample");
}

void CheckDelta(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw ConfigError("delta must lie in [0, 1]");
  }
}

}  // namespace

void EstimatorConfig::Validate() const {
  if (!(chernoff_c > 0.0) || !(chernoff_d > 0.0) || !(grid_constant > 0.0)) {
    throw ConfigError("estimator constants must be positive");
  }
  if (fail_poly_exp < 1) throw ConfigError("fail_poly_exp must be >= 1");
  if (max_samples < 0) throw ConfigError("max_samples must be >= 0");
}

int64_t ChernoffSamples(int64_t n, double eps, double gamma, double fail_prob,
                        const EstimatorConfig& cfg) {
  if (!(eps > 0.0) || !(gamma > 0.0)) {
    throw ConfigError("chernoff_samples needs eps, gamma > 0");
  }
  if (!(fail_prob > 0.0 && fail_prob < 1.0)) {
    throw ConfigError("chernoff_samples needs fail_prob in (0, 1)");
  }
  if (n < 1) throw ConfigError("chernoff_samples needs n >= 1");
  const double m = static_cast<double>(n) * std::log(cfg.chernoff_c / fail_prob) /
                   (cfg.chernoff_d * eps * gamma);
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(m)));
}

double EstimateSpanFraction(const IndependenceSystem& m, double delta,
                            int64_t samples, uint64_t seed, Engine& engine) {
  CheckSamples(samples);
  CheckDelta(delta);
  const ElementSet& ground = m.ground();
  if (ground.empty()) return 0.0;
  std::vector<ElementSet> sets(static_cast<size_t>(samples));
  std::vector<Element> probes(static_cast<size_t>(samples));
  for (int64_t j = 0; j < samples; ++j) {
    PairSample pair = DrawPair(ground, delta, seed, j);
    sets[j] = std::move(pair.set);
    probes[j] = pair.probe;
  }
  Round round = engine.BeginRound("span_estimate");
  std::vector<uint8_t> hits = round.InSpan(m, sets, probes);
  int64_t count = 0;
  for (uint8_t h : hits) count += h;
  return static_cast<double>(ground.size()) * static_cast<double>(count) /
         static_cast<double>(samples);
}

double EstimateLowMarginFraction(const SubmodularOracle& f,
                                 std::span<const Element> ground,
                                 double lambda, double eps, double delta,
                                 int64_t samples, uint64_t seed,
                                 Engine& engine) {
  CheckSamples(samples);
  CheckDelta(delta);
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
  if (ground.empty()) return 0.0;
  std::vector<ChainQuery> chains(static_cast<size_t>(samples));
  for (int64_t j = 0; j < samples; ++j) {
    PairSample pair = DrawPair(ground, delta, seed, j);
    chains[j].base = std::move(pair.set);
    chains[j].probe = pair.probe;
  }
  Round round = engine.BeginRound("margin_estimate");
  std::vector<std::vector<double>> margins = round.ChainMargins(f, chains);
  const double threshold = (1.0 - eps) * lambda;
  int64_t count = 0;
  for (const auto& row : margins) count += row[0] <= threshold ? 1 : 0;
  return static_cast<double>(ground.size()) * static_cast<double>(count) /
         static_cast<double>(samples);
}

int64_t DeltaSearchSamples(int n, int grid_size, double eps,
                           const EstimatorConfig& cfg) {
  const double c = cfg.grid_constant;
  const double fail = std::pow(static_cast<double>(n), -cfg.fail_poly_exp) /
                      (2.0 * std::max(grid_size, 1));
  int64_t m = ChernoffSamples(n, c, c * eps * n, fail, cfg);
  if (cfg.max_samples > 0) m = std::min(m, cfg.max_samples);
  return m;
}

DeltaSearch FindDelta(const IndependenceSystem& m, const SubmodularOracle& f,
                      double lambda, double eps, const EstimatorConfig& cfg,
                      uint64_t seed, Engine& engine, double band) {
  cfg.Validate();
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
  DeltaSearch out;
  const ElementSet& ground = m.ground();
  const int n = static_cast<int>(ground.size());
  if (n == 0) return out;

  const double c = cfg.grid_constant;
  const double step = c * eps / (4.0 * n);
  const double k = std::max(1, m.max_cardinality());
  const double by_rank = std::ceil(16.0 * k / (c * eps));
  const double by_unit = std::floor(4.0 * n / (c * eps));
  const int grid = std::max(1, static_cast<int>(std::min(by_rank, by_unit)));
  const int64_t samples = DeltaSearchSamples(n, grid, eps, cfg);
  out.grid_size = grid;
  out.step = step;
  out.samples = samples;

  // Sample j is the nested family S_i = {e : u_e < i·step}; an element
  // first appears at grid index g_e. Chains list elements in that order.
  const uint64_t membership = DeriveSeed(seed, kMembershipStream);
  const uint64_t probe_seed = DeriveSeed(seed, kProbeStream);
  const double top = grid * step;
  std::vector<ChainQuery> chains(static_cast<size_t>(samples));
  std::vector<std::vector<int>> entry(static_cast<size_t>(samples));
  std::vector<std::pair<int, Element>> staged;
  for (int64_t j = 0; j < samples; ++j) {
    staged.clear();
    for (Element e : ground) {
      const double u = Uniform01(membership, j, e);
      if (!(u < top)) continue;
      int g = static_cast<int>(u / step) + 1;
      while (g > 1 && u < (g - 1) * step) --g;
      while (g < grid && !(u < g * step)) ++g;
      staged.emplace_back(g, e);
    }
    std::sort(staged.begin(), staged.end());
    ChainQuery& chain = chains[j];
    chain.probe = ground[UniformIndex(probe_seed, j, 0, ground.size())];
    chain.order.reserve(staged.size());
    entry[j].reserve(staged.size());
    for (const auto& [g, e] : staged) {
      chain.order.push_back(e);
      entry[j].push_back(g);
    }
  }

  std::vector<std::vector<uint8_t>> spanned;
  std::vector<std::vector<double>> margins;
  {
    Round round = engine.BeginRound("delta_search");
    spanned = round.ChainInSpan(m, chains);
    margins = round.ChainMargins(f, chains);
  }

  const double threshold = (1.0 - eps) * lambda - band;
  std::vector<int64_t> span_diff(static_cast<size_t>(grid) + 2, 0);
  std::vector<int64_t> low_diff(static_cast<size_t>(grid) + 2, 0);
  for (int64_t j = 0; j < samples; ++j) {
    const std::vector<int>& g = entry[j];
    const size_t steps = g.size() + 1;
    for (size_t t = 0; t < steps; ++t) {
      const int lo = t == 0 ? 1 : g[t - 1];
      const int hi = t == g.size() ? grid + 1 : g[t];
      if (lo >= hi) continue;
      if (spanned[j][t]) {
        ++span_diff[lo];
        --span_diff[hi];
      }
      if (margins[j][t] < threshold) {
        ++low_diff[lo];
        --low_diff[hi];
      }
    }
  }

  out.span_estimates.assign(static_cast<size_t>(grid) + 1, 0.0);
  out.low_margin_estimates.assign(static_cast<size_t>(grid) + 1, 0.0);
  const double scale = static_cast<double>(n) / static_cast<double>(samples);
  const double limit = 0.75 * eps * n;
  int64_t span_count = 0;
  int64_t low_count = 0;
  out.index = 1;
  for (int i = 1; i <= grid; ++i) {
    span_count += span_diff[i];
    low_count += low_diff[i];
    out.span_estimates[i] = scale * static_cast<double>(span_count);
    out.low_margin_estimates[i] = scale * static_cast<double>(low_count);
    if (out.span_estimates[i] <= limit && out.low_margin_estimates[i] <= limit) {
      out.index = i;
    }
  }
  out.delta = out.index * step;
  return out;
}

}  // namespace psm
