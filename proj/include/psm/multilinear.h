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

#ifndef PSM_MULTILINEAR_H_
#define PSM_MULTILINEAR_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "psm/engine.h"
#include "psm/submodular.h"
#include "psm/types.h"

namespace psm {

// A point of [0,1]^N. Entries above 1 are truncated to 1; negative or
// non-finite entries are rejected.
class FractionalPoint {
 public:
  FractionalPoint() = default;
  explicit FractionalPoint(std::vector<double> x);
  static FractionalPoint Zero(int n) {
    return FractionalPoint(std::vector<double>(static_cast<size_t>(n), 0.0));
  }
  static FractionalPoint Indicator(int n, const ElementSet& s);

  int size() const { return static_cast<int>(x_.size()); }
  double operator[](Element e) const { return x_[e]; }
  std::span<const double> values() const { return x_; }

 private:
  std::vector<double> x_;
};

struct SampleBudget {
  int64_t m = 1;
  double eps_rel = 0.1;
  double gamma_add = 0.1;
  double fail_prob = 0.01;

  // Throws ConfigError unless m >= 1, eps_rel, gamma_add > 0 and
  // fail_prob in (0, 1).
  void Validate() const;
};

// Σ_S f(S) Π_{e∈S} x_e Π_{e∉S} (1 − x_e) by enumeration. Throws
// ConfigError for n > 20.
double MultilinearExact(const SubmodularOracle& f, const FractionalPoint& x);

// Mean of f over budget.m samples S ∼ x, evaluated as one round.
double MultilinearEstimate(const SubmodularOracle& f, const FractionalPoint& x,
                           const SampleBudget& budget, uint64_t seed,
                           Engine& engine);

// A callable F: [0,1]^N -> R standing in for the multilinear extension.
class MultilinearModel {
 public:
  virtual ~MultilinearModel() = default;
  virtual int size() const = 0;
  virtual double Value(std::span<const double> x) const = 0;
};

using ModelPtr = std::shared_ptr<const MultilinearModel>;

// Exact F by enumeration over f; n ≤ 20.
ModelPtr EnumerationModel(OraclePtr f);

// The auxiliary functions of amplification all have the form
//   g(S) = F(z(S)) − F(z(∅)),  z(S)_e = selected[e] if e ∈ S else base[e],
// with base ≤ selected pointwise.
struct AuxLayout {
  std::vector<double> base;
  std::vector<double> selected;
};

// g(S) = F(x + 1_S/ℓ) − F(x), truncated at 1.
AuxLayout MonotoneLayout(const FractionalPoint& x, int ell);
// g(S) = E[f_{∪J}(S')] with J_j ∼ α I_j/ℓ and S' ∼ S/ℓ.
AuxLayout NonnegativeLayout(int n, const std::vector<ElementSet>& blocks,
                            double alpha, int ell);
// g(S) = F(β 1_S).
AuxLayout BetaLayout(int n, double beta);

// Monte Carlo realization of an auxiliary function with common random
// numbers: sample j draws u_{j,e} once and realizes z(S) as
// {e : u_{j,e} < z(S)_e}, so all queries see the same sample stream.
class SampledAuxFunction final : public SubmodularOracle {
 public:
  SampledAuxFunction(OraclePtr f, AuxLayout layout, const SampleBudget& budget,
                     uint64_t seed);
  bool is_monotone() const override { return f_->is_monotone(); }
  bool is_nonnegative() const override { return nonnegative_; }
  bool is_estimated() const override { return true; }
  std::string name() const override { return "aux(" + f_->name() + ")"; }
  const SubmodularOracle& root() const override { return f_->root(); }
  int64_t samples() const { return static_cast<int64_t>(always_.size()); }

 protected:
  double Value(const ElementSet& s) const override;
  std::vector<double> ChainValues(const ChainQuery& chain) const override;

 private:
  double Baseline() const;
  ElementSet Realize(size_t j, const ElementSet& s) const;

  OraclePtr f_;
  bool nonnegative_;
  std::vector<ElementSet> always_;          // {e : u < base_e}
  std::vector<std::vector<uint8_t>> open_;  // u < selected_e
  mutable std::once_flag once_;
  mutable double baseline_ = 0.0;
};

// Auxiliary function evaluated through a model of F (no sampling error).
class ModelAuxFunction final : public SubmodularOracle {
 public:
  ModelAuxFunction(ModelPtr model, AuxLayout layout, bool monotone,
                   bool nonnegative);
  bool is_monotone() const override { return monotone_; }
  bool is_nonnegative() const override { return nonnegative_; }
  std::string name() const override { return "aux(model)"; }

 protected:
  double Value(const ElementSet& s) const override;

 private:
  ModelPtr model_;
  AuxLayout layout_;
  bool monotone_;
  bool nonnegative_;
  double baseline_;
};

// Whether g built from f with `layout` is nonnegative.
bool AuxIsNonnegative(const SubmodularOracle& f, const AuxLayout& layout);

// Monte Carlo auxiliary functions. aux_monotone requires monotone f.
OraclePtr AuxMonotone(const OraclePtr& f, const FractionalPoint& x, int ell,
                      const SampleBudget& budget, uint64_t seed);
OraclePtr AuxNonnegative(const OraclePtr& f,
                         const std::vector<ElementSet>& blocks, double alpha,
                         int ell, const SampleBudget& budget, uint64_t seed);
OraclePtr AuxBeta(const OraclePtr& f, double beta, const SampleBudget& budget,
                  uint64_t seed);

}  // namespace psm

#endif  // PSM_MULTILINEAR_H_
