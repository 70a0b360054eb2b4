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

#include "psm/submodular.h"

#include <cmath>
#include <string>
#include <utility>

namespace psm {
namespace {

void CheckRange(const ElementSet& s, int n) {
  if (!s.empty() && (s.front() < 0 || s.back() >= n)) {
    throw ConfigError("element out of range in " + ToString(s));
  }
}

void CheckWeight(double w, const char* what) {
  if (!(w >= 0.0) || !std::isfinite(w)) {
    throw ConfigError(std::string(what) + " must be finite and nonnegative");
  }
}

// Membership marks for one chain walk over the ground set.
class Marks {
 public:
  explicit Marks(int n) : in_(static_cast<size_t>(n), 0) {}
  // Returns false if `e` was already marked.
  bool Mark(Element e) {
    if (in_[e]) return false;
    in_[e] = 1;
    return true;
  }
  bool has(Element e) const { return in_[e] != 0; }

 private:
  std::vector<uint8_t> in_;
};

}  // namespace

double SubmodularOracle::Eval(const ElementSet& s) const {
  CheckRange(s, n_);
  if (is_root()) calls_.fetch_add(1, std::memory_order_relaxed);
  return Value(s);
}

std::vector<double> SubmodularOracle::BatchEval(
    std::span<const ElementSet> sets) const {
  std::vector<double> out;
  out.reserve(sets.size());
  for (const ElementSet& s : sets) out.push_back(Eval(s));
  return out;
}

std::vector<double> SubmodularOracle::ChainMargins(
    const ChainQuery& chain) const {
  CheckRange(chain.base, n_);
  if (chain.probe < 0 || chain.probe >= n_) {
    throw ConfigError("chain probe out of range");
  }
  for (Element e : chain.order) {
    if (e < 0 || e >= n_) throw ConfigError("chain element out of range");
  }
  if (is_root()) {
    calls_.fetch_add(2 * static_cast<int64_t>(chain.order.size() + 1),
                     std::memory_order_relaxed);
  }
  return ChainValues(chain);
}

std::vector<double> SubmodularOracle::ChainValues(
    const ChainQuery& chain) const {
  std::vector<double> out;
  out.reserve(chain.order.size() + 1);
  ElementSet current = chain.base;
  for (size_t t = 0;; ++t) {
    if (Contains(current, chain.probe)) {
      out.push_back(0.0);
    } else {
      out.push_back(Value(With(current, chain.probe)) - Value(current));
    }
    if (t == chain.order.size()) break;
    current = With(current, chain.order[t]);
  }
  return out;
}

// ---------------------------------------------------------------------------

CoverageFunction::CoverageFunction(std::vector<double> item_weights,
                                   std::vector<std::vector<int>> element_items)
    : SubmodularOracle(static_cast<int>(element_items.size())),
      item_weights_(std::move(item_weights)),
      items_(std::move(element_items)) {
  for (double w : item_weights_) CheckWeight(w, "coverage item weight");
  const int universe = static_cast<int>(item_weights_.size());
  for (auto& list : items_) {
    for (int item : list) {
      if (item < 0 || item >= universe) {
        throw ConfigError("coverage item index out of range");
      }
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

double CoverageFunction::Value(const ElementSet& s) const {
  std::vector<uint8_t> covered(item_weights_.size(), 0);
  double total = 0.0;
  for (Element e : s) {
    for (int item : items_[e]) {
      if (!covered[item]) {
        covered[item] = 1;
        total += item_weights_[item];
      }
    }
  }
  return total;
}

std::vector<double> CoverageFunction::ChainValues(
    const ChainQuery& chain) const {
  std::vector<uint8_t> covered(item_weights_.size(), 0);
  Marks marks(size());
  auto add = [&](Element e) {
    if (!marks.Mark(e)) return;
    for (int item : items_[e]) covered[item] = 1;
  };
  for (Element e : chain.base) add(e);
  std::vector<double> out;
  out.reserve(chain.order.size() + 1);
  for (size_t t = 0;; ++t) {
    double gain = 0.0;
    if (!marks.has(chain.probe)) {
      for (int item : items_[chain.probe]) {
        if (!covered[item]) gain += item_weights_[item];
      }
    }
    out.push_back(gain);
    if (t == chain.order.size()) break;
    add(chain.order[t]);
  }
  return out;
}

// ---------------------------------------------------------------------------

CutFunction::CutFunction(int vertices, std::vector<WeightedEdge> edges)
    : SubmodularOracle(vertices), edges_(std::move(edges)) {
  if (vertices < 0) throw ConfigError("cut vertex count must be nonnegative");
  adjacency_.resize(static_cast<size_t>(vertices));
  for (const WeightedEdge& edge : edges_) {
    if (edge.u < 0 || edge.u >= vertices || edge.v < 0 || edge.v >= vertices) {
      throw ConfigError("cut edge endpoint out of range");
    }
    CheckWeight(edge.w, "cut edge weight");
    if (edge.u == edge.v) continue;
    adjacency_[edge.u].emplace_back(edge.v, edge.w);
    adjacency_[edge.v].emplace_back(edge.u, edge.w);
  }
}

double CutFunction::Value(const ElementSet& s) const {
  std::vector<uint8_t> in(static_cast<size_t>(size()), 0);
  for (Element v : s) in[v] = 1;
  double total = 0.0;
  for (const WeightedEdge& edge : edges_) {
    if (in[edge.u] != in[edge.v]) total += edge.w;
  }
  return total;
}

std::vector<double> CutFunction::ChainValues(const ChainQuery& chain) const {
  Marks marks(size());
  for (Element e : chain.base) marks.Mark(e);
  std::vector<double> out;
  out.reserve(chain.order.size() + 1);
  for (size_t t = 0;; ++t) {
    double gain = 0.0;
    if (!marks.has(chain.probe)) {
      for (const auto& [u, w] : adjacency_[chain.probe]) {
        gain += marks.has(u) ? -w : w;
      }
    }
    out.push_back(gain);
    if (t == chain.order.size()) break;
    marks.Mark(chain.order[t]);
  }
  return out;
}

// ---------------------------------------------------------------------------

ModularFunction::ModularFunction(std::vector<double> weights)
    : SubmodularOracle(static_cast<int>(weights.size())),
      weights_(std::move(weights)) {
  for (double w : weights_) CheckWeight(w, "modular weight");
}

double ModularFunction::Value(const ElementSet& s) const {
  double total = 0.0;
  for (Element e : s) total += weights_[e];
  return total;
}

std::vector<double> ModularFunction::ChainValues(
    const ChainQuery& chain) const {
  Marks marks(size());
  for (Element e : chain.base) marks.Mark(e);
  std::vector<double> out;
  out.reserve(chain.order.size() + 1);
  for (size_t t = 0;; ++t) {
    out.push_back(marks.has(chain.probe) ? 0.0 : weights_[chain.probe]);
    if (t == chain.order.size()) break;
    marks.Mark(chain.order[t]);
  }
  return out;
}

// ---------------------------------------------------------------------------

ConcaveOfModular::ConcaveOfModular(std::vector<double> weights,
                                   double exponent)
    : SubmodularOracle(static_cast<int>(weights.size())),
      weights_(std::move(weights)),
      exponent_(exponent) {
  for (double w : weights_) CheckWeight(w, "concave_of_modular weight");
  if (!(exponent_ > 0.0 && exponent_ <= 1.0)) {
    throw ConfigError("concave_of_modular exponent must lie in (0, 1]");
  }
}

double ConcaveOfModular::Value(const ElementSet& s) const {
  double total = 0.0;
  for (Element e : s) total += weights_[e];
  return std::pow(total, exponent_);
}

std::vector<double> ConcaveOfModular::ChainValues(
    const ChainQuery& chain) const {
  Marks marks(size());
  double total = 0.0;
  auto add = [&](Element e) {
    if (marks.Mark(e)) total += weights_[e];
  };
  for (Element e : chain.base) add(e);
  std::vector<double> out;
  out.reserve(chain.order.size() + 1);
  for (size_t t = 0;; ++t) {
    if (marks.has(chain.probe)) {
      out.push_back(0.0);
    } else {
      out.push_back(std::pow(total + weights_[chain.probe], exponent_) -
                    std::pow(total, exponent_));
    }
    if (t == chain.order.size()) break;
    add(chain.order[t]);
  }
  return out;
}

// ---------------------------------------------------------------------------

MarginalFunction::MarginalFunction(OraclePtr base, ElementSet q)
    : SubmodularOracle(base->size()),
      base_(std::move(base)),
      q_(Normalize(std::move(q))) {
  CheckRange(q_, size());
}

double MarginalFunction::BaseValue() const {
  std::call_once(once_, [this] { base_value_ = base_->Eval(q_); });
  return base_value_;
}

double MarginalFunction::Value(const ElementSet& s) const {
  return base_->Eval(Union(q_, s)) - BaseValue();
}

std::vector<double> MarginalFunction::ChainValues(
    const ChainQuery& chain) const {
  return base_->ChainMargins(
      ChainQuery{Union(q_, chain.base), chain.order, chain.probe});
}

// ---------------------------------------------------------------------------

OraclePtr BuildFunction(const FunctionSpec& spec) {
  switch (spec.kind) {
    case FunctionKind::kCoverage:
      return std::make_shared<CoverageFunction>(spec.item_weights, spec.sets);
    case FunctionKind::kCut:
      return std::make_shared<CutFunction>(spec.vertices, spec.edges);
    case FunctionKind::kModular:
      return std::make_shared<ModularFunction>(spec.weights);
    case FunctionKind::kConcaveOfModular:
      return std::make_shared<ConcaveOfModular>(spec.weights, spec.exponent);
  }
  throw ConfigError("unknown function kind");
}

double Marginal(const SubmodularOracle& f, const ElementSet& q,
                const ElementSet& u) {
  return f.Eval(Union(q, u)) - f.Eval(q);
}

OraclePtr ContractFunction(const OraclePtr& f, const ElementSet& q) {
  if (q.empty()) return f;
  if (auto* inner = dynamic_cast<const MarginalFunction*>(f.get())) {
    return std::make_shared<MarginalFunction>(
        inner->base(), Union(inner->contracted(), Normalize(q)));
  }
  return std::make_shared<MarginalFunction>(f, q);
}

}  // namespace psm
