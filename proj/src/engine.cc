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

#include "psm/engine.h"

#include <stdexcept>
#include <utility>

#include "psm/matroid.h"
#include "psm/submodular.h"

namespace psm {

int64_t AdaptivityMeter::rounds() const {
  std::lock_guard<std::mutex> lock(mu_);
  return total_.rounds;
}

int64_t AdaptivityMeter::f_calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return total_.f_calls;
}

int64_t AdaptivityMeter::matroid_calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return total_.matroid_calls;
}

std::map<std::string, PhaseStats> AdaptivityMeter::phases() const {
  std::lock_guard<std::mutex> lock(mu_);
  return phases_;
}

PhaseStats AdaptivityMeter::phase(const std::string& name) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = phases_.find(name);
  return it == phases_.end() ? PhaseStats{} : it->second;
}

void AdaptivityMeter::RecordBatch(const BatchDescriptor& batch) {
  std::lock_guard<std::mutex> lock(mu_);
  if (open_) throw std::logic_error("a batch may not open another batch");
  if (batch.f_queries < 0 || batch.matroid_queries < 0) {
    throw std::invalid_argument("batch sizes must be nonnegative");
  }
  if (batch.f_queries == 0 && batch.matroid_queries == 0) return;
  PhaseStats& p = phases_[batch.phase];
  ++total_.rounds;
  ++p.rounds;
  total_.f_calls += batch.f_queries;
  p.f_calls += batch.f_queries;
  total_.matroid_calls += batch.matroid_queries;
  p.matroid_calls += batch.matroid_queries;
}

void AdaptivityMeter::Open() {
  std::lock_guard<std::mutex> lock(mu_);
  if (open_) throw std::logic_error("a batch may not open another batch");
  open_ = true;
}

void AdaptivityMeter::Close() {
  std::lock_guard<std::mutex> lock(mu_);
  open_ = false;
}

void AdaptivityMeter::AddRound(const std::string& phase) {
  std::lock_guard<std::mutex> lock(mu_);
  ++total_.rounds;
  ++phases_[phase].rounds;
}

void AdaptivityMeter::AddFCalls(const std::string& phase, int64_t n) {
  std::lock_guard<std::mutex> lock(mu_);
  total_.f_calls += n;
  phases_[phase].f_calls += n;
}

void AdaptivityMeter::AddMatroidCalls(const std::string& phase, int64_t n) {
  std::lock_guard<std::mutex> lock(mu_);
  total_.matroid_calls += n;
  phases_[phase].matroid_calls += n;
}

// ---------------------------------------------------------------------------

Round::Round(Engine* engine, std::string phase)
    : engine_(engine), phase_(std::move(phase)) {}

Round::Round(Round&& other) noexcept
    : engine_(std::exchange(other.engine_, nullptr)),
      phase_(std::move(other.phase_)),
      counted_(other.counted_) {}

Round::~Round() { Close(); }

void Round::Close() {
  if (engine_ != nullptr) {
    engine_->meter_.Close();
    engine_ = nullptr;
  }
}

void Round::Touch() {
  if (engine_ == nullptr) throw std::logic_error("round is closed");
  if (!counted_) {
    engine_->meter_.AddRound(phase_);
    counted_ = true;
  }
}

void Round::ChargeMatroid(int64_t n) {
  if (n == 0) return;
  Touch();
  engine_->meter_.AddMatroidCalls(phase_, n);
}

std::vector<double> Round::Eval(const SubmodularOracle& f,
                                std::span<const ElementSet> sets) {
  std::vector<double> out(sets.size());
  if (sets.empty()) return out;
  Touch();
  const int64_t before = f.root().eval_count();
  engine_->pool().ParallelFor(sets.size(),
                              [&](size_t i) { out[i] = f.Eval(sets[i]); });
  engine_->meter_.AddFCalls(phase_, f.root().eval_count() - before);
  return out;
}

std::vector<std::vector<double>> Round::ChainMargins(
    const SubmodularOracle& f, std::span<const ChainQuery> chains) {
  std::vector<std::vector<double>> out(chains.size());
  if (chains.empty()) return out;
  Touch();
  const int64_t before = f.root().eval_count();
  engine_->pool().ParallelFor(chains.size(), [&](size_t i) {
    out[i] = f.ChainMargins(chains[i]);
  });
  engine_->meter_.AddFCalls(phase_, f.root().eval_count() - before);
  return out;
}

std::vector<ElementSet> Round::Span(const IndependenceSystem& m,
                                    std::span<const ElementSet> sets) {
  std::vector<ElementSet> out(sets.size());
  ChargeMatroid(static_cast<int64_t>(sets.size()));
  engine_->pool().ParallelFor(sets.size(),
                              [&](size_t i) { out[i] = m.Span(sets[i]); });
  return out;
}

std::vector<uint8_t> Round::InSpan(const IndependenceSystem& m,
                                   std::span<const ElementSet> sets,
                                   std::span<const Element> probes) {
  if (sets.size() != probes.size()) {
    throw std::invalid_argument("InSpan needs one probe per set");
  }
  std::vector<uint8_t> out(sets.size());
  ChargeMatroid(static_cast<int64_t>(sets.size()));
  engine_->pool().ParallelFor(sets.size(), [&](size_t i) {
    out[i] = m.InSpan(sets[i], probes[i]) ? 1 : 0;
  });
  return out;
}

std::vector<std::vector<uint8_t>> Round::ChainInSpan(
    const IndependenceSystem& m, std::span<const ChainQuery> chains) {
  std::vector<std::vector<uint8_t>> out(chains.size());
  int64_t queries = 0;
  for (const ChainQuery& c : chains) {
    queries += static_cast<int64_t>(c.order.size()) + 1;
  }
  ChargeMatroid(queries);
  engine_->pool().ParallelFor(chains.size(), [&](size_t i) {
    const ChainQuery& c = chains[i];
    auto tracker = m.NewTracker();
    for (Element e : c.base) {
      if (!m.InGround(e)) throw ConfigError("chain base leaves the ground set");
      tracker->Add(e);
    }
    if (!m.InGround(c.probe)) throw ConfigError("probe leaves the ground set");
    std::vector<uint8_t>& row = out[i];
    row.reserve(c.order.size() + 1);
    for (size_t t = 0;; ++t) {
      row.push_back(tracker->Spans(c.probe) ? 1 : 0);
      if (t == c.order.size()) break;
      if (!m.InGround(c.order[t])) {
        throw ConfigError("chain element leaves the ground set");
      }
      tracker->Add(c.order[t]);
    }
  });
  return out;
}

std::vector<uint8_t> Round::IsIndependent(const IndependenceSystem& m,
                                          std::span<const ElementSet> sets) {
  std::vector<uint8_t> out(sets.size());
  ChargeMatroid(static_cast<int64_t>(sets.size()));
  engine_->pool().ParallelFor(sets.size(), [&](size_t i) {
    out[i] = m.IsIndependent(sets[i]) ? 1 : 0;
  });
  return out;
}

std::vector<int> Round::Rank(const Matroid& m,
                             std::span<const ElementSet> sets) {
  std::vector<int> out(sets.size());
  ChargeMatroid(static_cast<int64_t>(sets.size()));
  engine_->pool().ParallelFor(sets.size(),
                              [&](size_t i) { out[i] = m.Rank(sets[i]); });
  return out;
}

// ---------------------------------------------------------------------------

Engine::Engine(int workers)
    : pool_(std::make_unique<ThreadPool>(workers < 1 ? 1 : workers)) {}

Round Engine::BeginRound(std::string_view phase) {
  meter_.Open();
  return Round(this, std::string(phase));
}

}  // namespace psm
