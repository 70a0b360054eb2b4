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

#include "psm/multilinear.h"

#include <cmath>
#include <string>
#include <utility>

#include "psm/random.h"

namespace psm {

FractionalPoint::FractionalPoint(std::vector<double> x) : x_(std::move(x)) {
  for (double& v : x_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ConfigError("fractional point entries must be finite and >= 0");
    }
    if (v > 1.0) v = 1.0;
  }
}

FractionalPoint FractionalPoint::Indicator(int n, const ElementSet& s) {
  std::vector<double> x(static_cast<size_t>(n), 0.0);
  for (Element e : s) {
    if (e < 0 || e >= n) throw ConfigError("indicator element out of range");
    x[e] = 1.0;
  }
  return FractionalPoint(std::move(x));
}

void SampleBudget::Validate() const {
  if (m < 1) throw ConfigError("sample budget needs m >= 1");
  if (!(eps_rel > 0.0) || !(gamma_add > 0.0)) {
    throw ConfigError("sample budget needs eps_rel, gamma_add > 0");
  }
  if (!(fail_prob > 0.0 && fail_prob < 1.0)) {
    throw ConfigError("sample budget needs fail_prob in (0, 1)");
  }
}

namespace {

constexpr int kMaxEnumeration = 20;

double Enumerate(const SubmodularOracle& f, std::span<const double> x) {
  const int n = f.size();
  if (n > kMaxEnumeration) {
    throw ConfigError("exact multilinear extension needs n <= 20, got " +
                      std::to_string(n));
  }
  if (static_cast<int>(x.size()) != n) {
    throw ConfigError("fractional point size does not match the function");
  }
  ElementSet fixed;
  std::vector<Element> free;
  for (Element e = 0; e < n; ++e) {
    if (x[e] >= 1.0) {
      fixed.push_back(e);
    } else if (x[e] > 0.0) {
      free.push_back(e);
    }
  }
  double total = 0.0;
  const uint64_t count = uint64_t{1} << free.size();
  for (uint64_t mask = 0; mask < count; ++mask) {
    double weight = 1.0;
    ElementSet s = fixed;
    for (size_t i = 0; i < free.size(); ++i) {
      if ((mask >> i) & 1) {
        weight *= x[free[i]];
        s.push_back(free[i]);
      } else {
        weight *= 1.0 - x[free[i]];
      }
    }
    if (weight == 0.0) continue;
    total += weight * f.Eval(Normalize(std::move(s)));
  }
  return total;
}

class EnumerationModelImpl final : public MultilinearModel {
 public:
  explicit EnumerationModelImpl(OraclePtr f) : f_(std::move(f)) {}
  int size() const override { return f_->size(); }
  double Value(std::span<const double> x) const override {
    return Enumerate(*f_, x);
  }

 private:
  OraclePtr f_;
};

void CheckLayout(const AuxLayout& layout, int n) {
  if (static_cast<int>(layout.base.size()) != n ||
      static_cast<int>(layout.selected.size()) != n) {
    throw ConfigError("auxiliary layout size does not match the function");
  }
  for (int e = 0; e < n; ++e) {
    if (!(layout.base[e] >= 0.0 && layout.base[e] <= layout.selected[e] &&
          layout.selected[e] <= 1.0)) {
      throw ConfigError("auxiliary layout needs 0 <= base <= selected <= 1");
    }
  }
}

void CheckEll(int ell) {
  if (ell < 1) throw ConfigError("ell must be >= 1");
}

}  // namespace

double MultilinearExact(const SubmodularOracle& f, const FractionalPoint& x) {
  return Enumerate(f, x.values());
}

double MultilinearEstimate(const SubmodularOracle& f, const FractionalPoint& x,
                           const SampleBudget& budget, uint64_t seed,
                           Engine& engine) {
  budget.Validate();
  if (x.size() != f.size()) {
    throw ConfigError("fractional point size does not match the function");
  }
  std::vector<ElementSet> samples(static_cast<size_t>(budget.m));
  for (int64_t j = 0; j < budget.m; ++j) {
    for (Element e = 0; e < f.size(); ++e) {
      if (Uniform01(seed, j, e) < x[e]) samples[j].push_back(e);
    }
  }
  Round round = engine.BeginRound("multilinear");
  std::vector<double> values = round.Eval(f, samples);
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(budget.m);
}

ModelPtr EnumerationModel(OraclePtr f) {
  if (f->size() > kMaxEnumeration) {
    throw ConfigError("enumeration model needs n <= 20");
  }
  return std::make_shared<EnumerationModelImpl>(std::move(f));
}

// ---------------------------------------------------------------------------

AuxLayout MonotoneLayout(const FractionalPoint& x, int ell) {
  CheckEll(ell);
  AuxLayout layout;
  layout.base.assign(x.values().begin(), x.values().end());
  layout.selected.resize(layout.base.size());
  for (size_t e = 0; e < layout.base.size(); ++e) {
    layout.selected[e] = std::min(1.0, layout.base[e] + 1.0 / ell);
  }
  return layout;
}

AuxLayout NonnegativeLayout(int n, const std::vector<ElementSet>& blocks,
                            double alpha, int ell) {
  CheckEll(ell);
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must lie in (0, 1]");
  }
  std::vector<int> count(static_cast<size_t>(n), 0);
  for (const ElementSet& block : blocks) {
    for (Element e : block) {
      if (e < 0 || e >= n) throw ConfigError("block element out of range");
      ++count[e];
    }
  }
  AuxLayout layout;
  layout.base.resize(count.size());
  layout.selected.resize(count.size());
  const double keep = alpha / ell;
  for (size_t e = 0; e < count.size(); ++e) {
    double miss = std::pow(1.0 - keep, count[e]);
    layout.base[e] = 1.0 - miss;
    layout.selected[e] = 1.0 - miss * (1.0 - 1.0 / ell);
  }
  return layout;
}

AuxLayout BetaLayout(int n, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw ConfigError("beta must lie in (0, 1]");
  }
  AuxLayout layout;
  layout.base.assign(static_cast<size_t>(n), 0.0);
  layout.selected.assign(static_cast<size_t>(n), beta);
  return layout;
}

bool AuxIsNonnegative(const SubmodularOracle& f, const AuxLayout& layout) {
  if (f.is_monotone()) return true;
  if (!f.is_nonnegative()) return false;
  for (double b : layout.base) {
    if (b != 0.0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

SampledAuxFunction::SampledAuxFunction(OraclePtr f, AuxLayout layout,
                                       const SampleBudget& budget,
                                       uint64_t seed)
    : SubmodularOracle(f->size()), f_(std::move(f)) {
  budget.Validate();
  CheckLayout(layout, size());
  nonnegative_ = AuxIsNonnegative(*f_, layout);
  const size_t m = static_cast<size_t>(budget.m);
  always_.resize(m);
  open_.assign(m, std::vector<uint8_t>(static_cast<size_t>(size()), 0));
  for (size_t j = 0; j < m; ++j) {
    for (Element e = 0; e < size(); ++e) {
      double u = Uniform01(seed, j, e);
      if (u < layout.base[e]) always_[j].push_back(e);
      if (u < layout.selected[e]) open_[j][e] = 1;
    }
  }
}

ElementSet SampledAuxFunction::Realize(size_t j, const ElementSet& s) const {
  ElementSet picked;
  for (Element e : s) {
    if (open_[j][e]) picked.push_back(e);
  }
  return Union(always_[j], picked);
}

double SampledAuxFunction::Baseline() const {
  std::call_once(once_, [this] {
    double total = 0.0;
    for (const ElementSet& a : always_) total += f_->Eval(a);
    baseline_ = total / static_cast<double>(always_.size());
  });
  return baseline_;
}

double SampledAuxFunction::Value(const ElementSet& s) const {
  if (s.empty()) return 0.0;
  double total = 0.0;
  for (size_t j = 0; j < always_.size(); ++j) total += f_->Eval(Realize(j, s));
  return total / static_cast<double>(always_.size()) - Baseline();
}

std::vector<double> SampledAuxFunction::ChainValues(
    const ChainQuery& chain) const {
  const size_t steps = chain.order.size() + 1;
  std::vector<double> out(steps, 0.0);
  for (size_t j = 0; j < always_.size(); ++j) {
    const std::vector<uint8_t>& open = open_[j];
    if (!open[chain.probe]) continue;
    ChainQuery inner;
    inner.base = Realize(j, chain.base);
    inner.probe = chain.probe;
    std::vector<size_t> position(steps);
    for (size_t t = 0; t < chain.order.size(); ++t) {
      position[t] = inner.order.size();
      if (open[chain.order[t]]) inner.order.push_back(chain.order[t]);
    }
    position[steps - 1] = inner.order.size();
    std::vector<double> margins = f_->ChainMargins(inner);
    for (size_t t = 0; t < steps; ++t) out[t] += margins[position[t]];
  }
  for (double& v : out) v /= static_cast<double>(always_.size());
  return out;
}

// ---------------------------------------------------------------------------

ModelAuxFunction::ModelAuxFunction(ModelPtr model, AuxLayout layout,
                                   bool monotone, bool nonnegative)
    : SubmodularOracle(model->size()),
      model_(std::move(model)),
      layout_(std::move(layout)),
      monotone_(monotone),
      nonnegative_(nonnegative) {
  CheckLayout(layout_, size());
  baseline_ = model_->Value(layout_.base);
}

double ModelAuxFunction::Value(const ElementSet& s) const {
  if (s.empty()) return 0.0;
  std::vector<double> z = layout_.base;
  for (Element e : s) z[e] = layout_.selected[e];
  return model_->Value(z) - baseline_;
}

// ---------------------------------------------------------------------------

OraclePtr AuxMonotone(const OraclePtr& f, const FractionalPoint& x, int ell,
                      const SampleBudget& budget, uint64_t seed) {
  if (!f->is_monotone()) {
    throw IncompatibleError("aux_monotone requires a monotone function");
  }
  if (x.size() != f->size()) {
    throw ConfigError("fractional point size does not match the function");
  }
  return std::make_shared<SampledAuxFunction>(f, MonotoneLayout(x, ell),
                                              budget, seed);
}

OraclePtr AuxNonnegative(const OraclePtr& f,
                         const std::vector<ElementSet>& blocks, double alpha,
                         int ell, const SampleBudget& budget, uint64_t seed) {
  return std::make_shared<SampledAuxFunction>(
      f, NonnegativeLayout(f->size(), blocks, alpha, ell), budget, seed);
}

OraclePtr AuxBeta(const OraclePtr& f, double beta, const SampleBudget& budget,
                  uint64_t seed) {
  return std::make_shared<SampledAuxFunction>(f, BetaLayout(f->size(), beta),
                                              budget, seed);
}

}  // namespace psm
