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

#ifndef PSM_SUBMODULAR_H_
#define PSM_SUBMODULAR_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "psm/engine.h"
#include "psm/types.h"

namespace psm {

// A normalized set function f: 2^N -> R over elements 0..size()-1.
//
// Oracles are immutable after construction and safe to query from many
// threads. Every logical evaluation is charged to the root oracle (the
// concrete function at the bottom of any stack of views), which is what
// the adaptivity meter reads.
class SubmodularOracle {
 public:
  explicit SubmodularOracle(int n) : n_(n) {}
  virtual ~SubmodularOracle() = default;
  SubmodularOracle(const SubmodularOracle&) = delete;
  SubmodularOracle& operator=(const SubmodularOracle&) = delete;

  int size() const { return n_; }

  // f(s). `s` must be sorted and within range.
  double Eval(const ElementSet& s) const;
  // Element-wise Eval; bit-identical to calling Eval on each entry.
  std::vector<double> BatchEval(std::span<const ElementSet> sets) const;
  // f_{B ∪ P_t}(probe) for t = 0..|order|, where P_t is the first t
  // entries of `order`. Counts as 2(|order|+1) evaluations.
  std::vector<double> ChainMargins(const ChainQuery& chain) const;

  virtual bool is_monotone() const = 0;
  virtual bool is_nonnegative() const = 0;
  // True for Monte Carlo estimators, whose comparisons need a margin band.
  virtual bool is_estimated() const { return false; }
  virtual std::string name() const = 0;

  virtual const SubmodularOracle& root() const { return *this; }
  // Logical evaluations charged to this oracle (meaningful on roots).
  int64_t eval_count() const { return calls_.load(std::memory_order_relaxed); }

 protected:
  virtual double Value(const ElementSet& s) const = 0;
  // Uncounted chain evaluation; the default evaluates every prefix.
  virtual std::vector<double> ChainValues(const ChainQuery& chain) const;
  bool is_root() const { return &root() == this; }

 private:
  int n_;
  mutable std::atomic<int64_t> calls_{0};
};

using OraclePtr = std::shared_ptr<const SubmodularOracle>;

// f(S) = sum of weights of items covered by S.
class CoverageFunction final : public SubmodularOracle {
 public:
  CoverageFunction(std::vector<double> item_weights,
                   std::vector<std::vector<int>> element_items);
  bool is_monotone() const override { return true; }
  bool is_nonnegative() const override { return true; }
  std::string name() const override { return "coverage"; }
  const std::vector<double>& item_weights() const { return item_weights_; }
  const std::vector<std::vector<int>>& element_items() const { return items_; }

 protected:
  double Value(const ElementSet& s) const override;
  std::vector<double> ChainValues(const ChainQuery& chain) const override;

 private:
  std::vector<double> item_weights_;
  std::vector<std::vector<int>> items_;
};

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

// Weighted cut of an undirected graph; elements are vertices.
class CutFunction final : public SubmodularOracle {
 public:
  CutFunction(int vertices, std::vector<WeightedEdge> edges);
  bool is_monotone() const override { return false; }
  bool is_nonnegative() const override { return true; }
  std::string name() const override { return "cut"; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }

 protected:
  double Value(const ElementSet& s) const override;
  std::vector<double> ChainValues(const ChainQuery& chain) const override;

 private:
  std::vector<WeightedEdge> edges_;
  // adjacency_[v] = (neighbor, weight)
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

class ModularFunction final : public SubmodularOracle {
 public:
  explicit ModularFunction(std::vector<double> weights);
  bool is_monotone() const override { return true; }
  bool is_nonnegative() const override { return true; }
  std::string name() const override { return "modular"; }
  const std::vector<double>& weights() const { return weights_; }

 protected:
  double Value(const ElementSet& s) const override;
  std::vector<double> ChainValues(const ChainQuery& chain) const override;

 private:
  std::vector<double> weights_;
};

// f(S) = (sum_{e in S} w_e)^q with q in (0, 1].
class ConcaveOfModular final : public SubmodularOracle {
 public:
  ConcaveOfModular(std::vector<double> weights, double exponent);
  bool is_monotone() const override { return true; }
  bool is_nonnegative() const override { return true; }
  std::string name() const override { return "concave_of_modular"; }

 protected:
  double Value(const ElementSet& s) const override;
  std::vector<double> ChainValues(const ChainQuery& chain) const override;

 private:
  std::vector<double> weights_;
  double exponent_;
};

// f_Q(U) = f(Q ∪ U) - f(Q). f(Q) is computed once, on first use.
class MarginalFunction final : public SubmodularOracle {
 public:
  MarginalFunction(OraclePtr base, ElementSet q);
  bool is_monotone() const override { return base_->is_monotone(); }
  // Nonnegativity of f does not carry over to f_Q unless f is monotone.
  bool is_nonnegative() const override { return base_->is_monotone(); }
  bool is_estimated() const override { return base_->is_estimated(); }
  std::string name() const override { return base_->name() + "|contracted"; }
  const SubmodularOracle& root() const override { return base_->root(); }
  const ElementSet& contracted() const { return q_; }
  const OraclePtr& base() const { return base_; }

 protected:
  double Value(const ElementSet& s) const override;
  std::vector<double> ChainValues(const ChainQuery& chain) const override;

 private:
  double BaseValue() const;

  OraclePtr base_;
  ElementSet q_;
  mutable std::once_flag once_;
  mutable double base_value_ = 0.0;
};

enum class FunctionKind { kCoverage, kCut, kModular, kConcaveOfModular };

struct FunctionSpec {
  FunctionKind kind = FunctionKind::kModular;
  // modular / concave_of_modular: per-element weights.
  std::vector<double> weights;
  double exponent = 1.0;
  // coverage: universe item weights and element -> covered items.
  std::vector<double> item_weights;
  std::vector<std::vector<int>> sets;
  // cut: vertex count and weighted edges.
  int vertices = 0;
  std::vector<WeightedEdge> edges;
};

// Throws ConfigError on negative weights or malformed input.
OraclePtr BuildFunction(const FunctionSpec& spec);

// f(Q ∪ U) - f(Q), with exactly two evaluations.
double Marginal(const SubmodularOracle& f, const ElementSet& q,
                const ElementSet& u);

// The contracted function f_Q. ContractFunction(f, ∅) returns f itself.
OraclePtr ContractFunction(const OraclePtr& f, const ElementSet& q);

}  // namespace psm

#endif  // PSM_SUBMODULAR_H_
