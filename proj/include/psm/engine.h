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

#ifndef PSM_ENGINE_H_
#define PSM_ENGINE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psm/thread_pool.h"
#include "psm/types.h"

namespace psm {

class SubmodularOracle;
class IndependenceSystem;
class Matroid;

struct PhaseStats {
  int64_t rounds = 0;
  int64_t f_calls = 0;
  int64_t matroid_calls = 0;
};

// What a batch contains, for callers that meter work done outside the
// engine's query methods.
struct BatchDescriptor {
  std::string phase;
  int64_t f_queries = 0;
  int64_t matroid_queries = 0;
};

// Counts adaptive rounds and oracle queries. A round is one batch of
// queries whose inputs depend only on answers from earlier batches; it is
// counted once no matter how many queries it holds or which oracles they
// go to. Internally synchronized; counters never decrease.
class AdaptivityMeter {
 public:
  int64_t rounds() const;
  int64_t f_calls() const;
  int64_t matroid_calls() const;
  std::map<std::string, PhaseStats> phases() const;
  PhaseStats phase(const std::string& name) const;

  // Records a closed batch. Empty batches are a no-op. Throws
  // std::logic_error while another batch is open.
  void RecordBatch(const BatchDescriptor& batch);

 private:
  friend class Round;
  friend class Engine;
  void Open();
  void Close();
  void AddRound(const std::string& phase);
  void AddFCalls(const std::string& phase, int64_t n);
  void AddMatroidCalls(const std::string& phase, int64_t n);

  mutable std::mutex mu_;
  bool open_ = false;
  PhaseStats total_;
  std::map<std::string, PhaseStats> phases_;
};

// A query chain: probe `probe` against base ∪ {order[0..t)} for every
// t = 0..order.size(). Chains let a batch share incremental structure
// across nested sets; every prefix still counts as its own query.
struct ChainQuery {
  ElementSet base;
  std::vector<Element> order;
  Element probe = 0;
};

class Engine;

// One adaptive round. Obtained from Engine::BeginRound and closed on
// destruction. All queries submitted through one Round are charged to a
// single round of the meter (or none if the round stays empty).
class Round {
 public:
  Round(Round&& other) noexcept;
  Round& operator=(Round&&) = delete;
  Round(const Round&) = delete;
  ~Round();

  std::vector<double> Eval(const SubmodularOracle& f,
                           std::span<const ElementSet> sets);
  // f_{B ∪ P_t}(probe) for each prefix, per chain.
  std::vector<std::vector<double>> ChainMargins(
      const SubmodularOracle& f, std::span<const ChainQuery> chains);

  std::vector<ElementSet> Span(const IndependenceSystem& m,
                               std::span<const ElementSet> sets);
  // probe ∈ span(set), per query.
  std::vector<uint8_t> InSpan(const IndependenceSystem& m,
                              std::span<const ElementSet> sets,
                              std::span<const Element> probes);
  // probe ∈ span(B ∪ P_t) for each prefix, per chain.
  std::vector<std::vector<uint8_t>> ChainInSpan(
      const IndependenceSystem& m, std::span<const ChainQuery> chains);
  std::vector<uint8_t> IsIndependent(const IndependenceSystem& m,
                                     std::span<const ElementSet> sets);
  std::vector<int> Rank(const Matroid& m, std::span<const ElementSet> sets);

  // Closes the round early.
  void Close();

 private:
  friend class Engine;
  Round(Engine* engine, std::string phase);
  void Touch();
  void ChargeMatroid(int64_t n);

  Engine* engine_;
  std::string phase_;
  bool counted_ = false;
};

// Batch execution engine: owns the worker pool and the meter. Algorithms
// are single-threaded orchestrators that submit rounds to it.
class Engine {
 public:
  explicit Engine(int workers = 1);

  // Throws std::logic_error if a round is already open.
  Round BeginRound(std::string_view phase);

  AdaptivityMeter& meter() { return meter_; }
  const AdaptivityMeter& meter() const { return meter_; }
  ThreadPool& pool() { return *pool_; }

 private:
  friend class Round;
  std::unique_ptr<ThreadPool> pool_;
  AdaptivityMeter meter_;
};

}  // namespace psm

#endif  // PSM_ENGINE_H_
