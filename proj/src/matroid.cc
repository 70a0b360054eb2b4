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

#include "psm/matroid.h"

#include <algorithm>
#include <numeric>
#include <string>

namespace psm {
namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  int Find(int v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }
  // Returns false if u and v were already connected.
  bool Unite(int u, int v) {
    u = Find(u);
    v = Find(v);
    if (u == v) return false;
    parent_[u] = v;
    return true;
  }

 private:
  std::vector<int> parent_;
};

int MaxId(const std::vector<Element>& ids) {
  int max_id = -1;
  for (Element e : ids) max_id = std::max(max_id, e);
  return max_id;
}

}  // namespace

// ---------------------------------------------------------------------------

IndependenceSystem::IndependenceSystem(ElementSet ground, int universe)
    : ground_(Normalize(std::move(ground))), universe_(universe) {
  if (!ground_.empty() && (ground_.front() < 0 || ground_.back() >= universe)) {
    throw ConfigError("ground element outside the id range");
  }
  in_ground_.assign(static_cast<size_t>(std::max(universe, 0)), 0);
  for (Element e : ground_) in_ground_[e] = 1;
}

void IndependenceSystem::CheckGround(Element e) const {
  if (!InGround(e)) {
    throw ConfigError("element " + std::to_string(e) +
                      " is not in the ground set");
  }
}

void IndependenceSystem::CheckGround(const ElementSet& s) const {
  for (Element e : s) CheckGround(e);
}

bool IndependenceSystem::InSpan(const ElementSet& s, Element e) const {
  CheckGround(s);
  CheckGround(e);
  auto tracker = NewTracker();
  for (Element x : s) tracker->Add(x);
  return tracker->Spans(e);
}

int IndependenceSystem::max_cardinality() const {
  std::call_once(cardinality_once_, [this] {
    auto tracker = NewTracker();
    int count = 0;
    for (Element e : ground_) {
      if (!tracker->Spans(e)) {
        tracker->Add(e);
        ++count;
      }
    }
    cardinality_ = count;
  });
  return cardinality_;
}

MatroidPtr Matroid::ContractMatroid(const ElementSet& q) const {
  if (q.empty()) return self();
  ElementSet sorted = Normalize(q);
  if (auto* inner = dynamic_cast<const ContractedMatroid*>(this)) {
    CheckGround(sorted);
    return std::make_shared<ContractedMatroid>(
        inner->base(), Union(inner->contracted(), sorted));
  }
  return std::make_shared<ContractedMatroid>(self(), std::move(sorted));
}

MatroidPtr Matroid::RestrictMatroid(const ElementSet& s) const {
  ElementSet sorted = Normalize(s);
  if (sorted == ground()) return self();
  if (auto* inner = dynamic_cast<const RestrictedMatroid*>(this)) {
    CheckGround(sorted);
    return std::make_shared<RestrictedMatroid>(inner->base(),
                                               std::move(sorted));
  }
  return std::make_shared<RestrictedMatroid>(self(), std::move(sorted));
}

// ---------------------------------------------------------------------------

ScopedMatroid::ScopedMatroid(std::vector<Element> ids)
    : Matroid(ids, MaxId(ids) + 1), ids_(std::move(ids)) {
  local_.assign(static_cast<size_t>(universe()), -1);
  for (size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] < 0) throw ConfigError("negative element id");
    if (local_[ids_[i]] != -1) throw ConfigError("duplicate element id");
    local_[ids_[i]] = static_cast<int>(i);
  }
}

// ---------------------------------------------------------------------------

namespace {

class UniformTracker final : public SpanTracker {
 public:
  UniformTracker(const IndependenceSystem& m, int k)
      : k_(k), marked_(static_cast<size_t>(m.universe()), 0) {}
  void Add(Element e) override {
    if (!marked_[e]) {
      marked_[e] = 1;
      ++count_;
    }
  }
  bool Spans(Element e) const override { return count_ >= k_ || marked_[e]; }

 private:
  int k_;
  int count_ = 0;
  std::vector<uint8_t> marked_;
};

}  // namespace

UniformMatroid::UniformMatroid(std::vector<Element> ids, int k)
    : ScopedMatroid(std::move(ids)), k_(k) {
  if (k < 0) throw ConfigError("uniform matroid needs k >= 0");
  if (k > static_cast<int>(ground().size())) {
    throw ConfigError("uniform matroid needs k <= n");
  }
}

int UniformMatroid::Rank(const ElementSet& s) const {
  CheckGround(s);
  return std::min(static_cast<int>(s.size()), k_);
}

bool UniformMatroid::IsIndependent(const ElementSet& s) const {
  CheckGround(s);
  return static_cast<int>(s.size()) <= k_;
}

ElementSet UniformMatroid::Span(const ElementSet& s) const {
  CheckGround(s);
  if (static_cast<int>(s.size()) >= k_) return ground();
  return s;
}

std::unique_ptr<SpanTracker> UniformMatroid::NewTracker() const {
  return std::make_unique<UniformTracker>(*this, k_);
}

// ---------------------------------------------------------------------------

namespace {

class PartitionTracker final : public SpanTracker {
 public:
  explicit PartitionTracker(const PartitionMatroid& m)
      : m_(m),
        counts_(static_cast<size_t>(m.blocks()), 0),
        marked_(static_cast<size_t>(m.universe()), 0) {}
  void Add(Element e) override {
    if (marked_[e]) return;
    marked_[e] = 1;
    ++counts_[m_.block_of(e)];
  }
  bool Spans(Element e) const override {
    if (marked_[e]) return true;
    int b = m_.block_of(e);
    return counts_[b] >= m_.capacity(b);
  }

 private:
  const PartitionMatroid& m_;
  std::vector<int> counts_;
  std::vector<uint8_t> marked_;
};

}  // namespace

PartitionMatroid::PartitionMatroid(std::vector<Element> ids,
                                   const std::vector<std::vector<int>>& blocks,
                                   std::vector<int> capacities)
    : ScopedMatroid(std::move(ids)), capacities_(std::move(capacities)) {
  if (blocks.size() != capacities_.size()) {
    throw ConfigError("partition matroid needs one capacity per block");
  }
  const int n = static_cast<int>(ground().size());
  block_of_.assign(static_cast<size_t>(n), -1);
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (capacities_[b] < 0) {
      throw ConfigError("partition capacities must be nonnegative");
    }
    for (int e : blocks[b]) {
      if (e < 0 || e >= n) throw ConfigError("partition element out of range");
      if (block_of_[e] != -1) {
        throw ConfigError("partition blocks must be disjoint");
      }
      block_of_[e] = static_cast<int>(b);
    }
  }
  for (int b : block_of_) {
    if (b == -1) throw ConfigError("partition blocks must cover every element");
  }
}

std::vector<int> PartitionMatroid::CountPerBlock(const ElementSet& s) const {
  CheckGround(s);
  std::vector<int> counts(capacities_.size(), 0);
  for (Element e : s) ++counts[block_of_[local(e)]];
  return counts;
}

int PartitionMatroid::Rank(const ElementSet& s) const {
  std::vector<int> counts = CountPerBlock(s);
  int rank = 0;
  for (size_t b = 0; b < counts.size(); ++b) {
    rank += std::min(counts[b], capacities_[b]);
  }
  return rank;
}

bool PartitionMatroid::IsIndependent(const ElementSet& s) const {
  std::vector<int> counts = CountPerBlock(s);
  for (size_t b = 0; b < counts.size(); ++b) {
    if (counts[b] > capacities_[b]) return false;
  }
  return true;
}

ElementSet PartitionMatroid::Span(const ElementSet& s) const {
  std::vector<int> counts = CountPerBlock(s);
  ElementSet out;
  for (Element e : ground()) {
    int b = block_of_[local(e)];
    if (counts[b] >= capacities_[b] || Contains(s, e)) out.push_back(e);
  }
  return out;
}

std::unique_ptr<SpanTracker> PartitionMatroid::NewTracker() const {
  return std::make_unique<PartitionTracker>(*this);
}

// ---------------------------------------------------------------------------

namespace {

class GraphicTracker final : public SpanTracker {
 public:
  explicit GraphicTracker(const GraphicMatroid& m)
      : m_(m), forest_(m.vertices()) {}
  void Add(Element e) override {
    const auto& [u, v] = m_.endpoints(e);
    forest_.Unite(u, v);
  }
  bool Spans(Element e) const override {
    const auto& [u, v] = m_.endpoints(e);
    return forest_.Find(u) == forest_.Find(v);
  }

 private:
  const GraphicMatroid& m_;
  UnionFind forest_;
};

}  // namespace

GraphicMatroid::GraphicMatroid(std::vector<Element> ids, int vertices,
                               std::vector<std::pair<int, int>> edges)
    : ScopedMatroid(std::move(ids)), vertices_(vertices), edges_(std::move(edges)) {
  if (vertices < 0) throw ConfigError("graphic matroid needs vertices >= 0");
  if (edges_.size() != ground().size()) {
    throw ConfigError("graphic matroid needs one id per edge");
  }
  for (const auto& [u, v] : edges_) {
    if (u < 0 || u >= vertices || v < 0 || v >= vertices) {
      throw ConfigError("graphic edge endpoint out of range");
    }
  }
}

int GraphicMatroid::Rank(const ElementSet& s) const {
  CheckGround(s);
  UnionFind forest(vertices_);
  int rank = 0;
  for (Element e : s) {
    const auto& [u, v] = edges_[local(e)];
    if (forest.Unite(u, v)) ++rank;
  }
  return rank;
}

bool GraphicMatroid::IsIndependent(const ElementSet& s) const {
  return Rank(s) == static_cast<int>(s.size());
}

ElementSet GraphicMatroid::Span(const ElementSet& s) const {
  CheckGround(s);
  UnionFind forest(vertices_);
  for (Element e : s) {
    const auto& [u, v] = edges_[local(e)];
    forest.Unite(u, v);
  }
  ElementSet out;
  for (Element e : ground()) {
    const auto& [u, v] = edges_[local(e)];
    if (forest.Find(u) == forest.Find(v)) out.push_back(e);
  }
  return out;
}

std::unique_ptr<SpanTracker> GraphicMatroid::NewTracker() const {
  return std::make_unique<GraphicTracker>(*this);
}

// ---------------------------------------------------------------------------

namespace {

// Span tracker of a view: delegates to the base tracker, optionally seeded.
class SeededTracker final : public SpanTracker {
 public:
  SeededTracker(std::unique_ptr<SpanTracker> base, const ElementSet& seed)
      : base_(std::move(base)) {
    for (Element e : seed) base_->Add(e);
  }
  void Add(Element e) override { base_->Add(e); }
  bool Spans(Element e) const override { return base_->Spans(e); }

 private:
  std::unique_ptr<SpanTracker> base_;
};

ElementSet GreedyBasis(const IndependenceSystem& m, const ElementSet& s) {
  auto tracker = m.NewTracker();
  ElementSet basis;
  for (Element e : s) {
    if (!tracker->Spans(e)) {
      tracker->Add(e);
      basis.push_back(e);
    }
  }
  return basis;
}

ElementSet ContractedGround(const Matroid& base, const ElementSet& q) {
  return Difference(base.ground(), base.Span(q));
}

}  // namespace

ContractedMatroid::ContractedMatroid(MatroidPtr base, ElementSet q)
    : Matroid(ContractedGround(*base, Normalize(q)), base->universe()),
      base_(std::move(base)),
      q_(Normalize(std::move(q))),
      basis_(GreedyBasis(*base_, q_)) {}

int ContractedMatroid::Rank(const ElementSet& s) const {
  CheckGround(s);
  return base_->Rank(Union(basis_, s)) - static_cast<int>(basis_.size());
}

bool ContractedMatroid::IsIndependent(const ElementSet& s) const {
  CheckGround(s);
  return base_->IsIndependent(Union(basis_, s));
}

ElementSet ContractedMatroid::Span(const ElementSet& s) const {
  CheckGround(s);
  return Intersect(base_->Span(Union(basis_, s)), ground());
}

std::unique_ptr<SpanTracker> ContractedMatroid::NewTracker() const {
  return std::make_unique<SeededTracker>(base_->NewTracker(), basis_);
}

// ---------------------------------------------------------------------------

RestrictedMatroid::RestrictedMatroid(MatroidPtr base, ElementSet s)
    : Matroid(std::move(s), base->universe()), base_(std::move(base)) {
  for (Element e : ground()) {
    if (!base_->InGround(e)) {
      throw ConfigError("restriction must be a subset of the ground set");
    }
  }
}

int RestrictedMatroid::Rank(const ElementSet& s) const {
  CheckGround(s);
  return base_->Rank(s);
}

bool RestrictedMatroid::IsIndependent(const ElementSet& s) const {
  CheckGround(s);
  return base_->IsIndependent(s);
}

ElementSet RestrictedMatroid::Span(const ElementSet& s) const {
  CheckGround(s);
  return Intersect(base_->Span(s), ground());
}

std::unique_ptr<SpanTracker> RestrictedMatroid::NewTracker() const {
  return base_->NewTracker();
}

// ---------------------------------------------------------------------------

namespace {

class MatchoidTracker final : public SpanTracker {
 public:
  MatchoidTracker(const std::vector<MatroidPtr>& parts,
                  const std::vector<std::vector<int>>& membership,
                  int universe)
      : membership_(membership), marked_(static_cast<size_t>(universe), 0) {
    trackers_.reserve(parts.size());
    for (const auto& part : parts) trackers_.push_back(part->NewTracker());
  }
  void Add(Element e) override {
    if (marked_[e]) return;
    marked_[e] = 1;
    for (int i : membership_[e]) trackers_[i]->Add(e);
  }
  bool Spans(Element e) const override {
    if (marked_[e]) return true;
    for (int i : membership_[e]) {
      if (trackers_[i]->Spans(e)) return true;
    }
    return false;
  }

 private:
  const std::vector<std::vector<int>>& membership_;
  std::vector<std::unique_ptr<SpanTracker>> trackers_;
  std::vector<uint8_t> marked_;
};

}  // namespace

Matchoid::Matchoid(ElementSet ground, int universe,
                   std::vector<MatroidPtr> parts)
    : IndependenceSystem(std::move(ground), universe), parts_(std::move(parts)) {
  membership_.resize(static_cast<size_t>(universe));
  for (size_t i = 0; i < parts_.size(); ++i) {
    for (Element e : parts_[i]->ground()) {
      if (!InGround(e)) {
        throw ConfigError("matchoid part scope leaves the ground set");
      }
      membership_[e].push_back(static_cast<int>(i));
    }
  }
  for (Element e : this->ground()) {
    p_ = std::max(p_, static_cast<int>(membership_[e].size()));
  }
}

bool Matchoid::IsIndependent(const ElementSet& s) const {
  CheckGround(s);
  for (const auto& part : parts_) {
    if (!part->IsIndependent(Intersect(s, part->ground()))) return false;
  }
  return true;
}

ElementSet Matchoid::Span(const ElementSet& s) const {
  CheckGround(s);
  ElementSet out = s;
  for (const auto& part : parts_) {
    out = Union(out, part->Span(Intersect(s, part->ground())));
  }
  return out;
}

std::unique_ptr<SpanTracker> Matchoid::NewTracker() const {
  return std::make_unique<MatchoidTracker>(parts_, membership_, universe());
}

SystemPtr Matchoid::Contract(const ElementSet& q) const {
  if (q.empty()) return shared_from_this();
  ElementSet sorted = Normalize(q);
  ElementSet rest = Difference(ground(), Span(sorted));
  std::vector<MatroidPtr> parts;
  for (const auto& part : parts_) {
    MatroidPtr contracted =
        part->ContractMatroid(Intersect(sorted, part->ground()));
    ElementSet scope = Intersect(contracted->ground(), rest);
    if (scope.empty()) continue;
    parts.push_back(contracted->RestrictMatroid(scope));
  }
  return std::make_shared<Matchoid>(std::move(rest), universe(),
                                    std::move(parts));
}

SystemPtr Matchoid::Restrict(const ElementSet& s) const {
  ElementSet sorted = Normalize(s);
  CheckGround(sorted);
  if (sorted == ground()) return shared_from_this();
  std::vector<MatroidPtr> parts;
  for (const auto& part : parts_) {
    ElementSet scope = Intersect(part->ground(), sorted);
    if (scope.empty()) continue;
    parts.push_back(part->RestrictMatroid(scope));
  }
  return std::make_shared<Matchoid>(std::move(sorted), universe(),
                                    std::move(parts));
}

// ---------------------------------------------------------------------------

int SpecSize(const MatroidSpec& spec) {
  switch (spec.kind) {
    case MatroidKind::kUniform:
    case MatroidKind::kMatchoid:
      return spec.n;
    case MatroidKind::kPartition: {
      size_t n = 0;
      for (const auto& block : spec.blocks) n += block.size();
      return static_cast<int>(n);
    }
    case MatroidKind::kGraphic:
      return static_cast<int>(spec.edges.size());
  }
  return 0;
}

namespace {

MatroidPtr BuildScoped(const MatroidSpec& spec, std::vector<Element> ids) {
  switch (spec.kind) {
    case MatroidKind::kUniform:
      return std::make_shared<UniformMatroid>(std::move(ids), spec.k);
    case MatroidKind::kPartition:
      return std::make_shared<PartitionMatroid>(std::move(ids), spec.blocks,
                                                spec.capacities);
    case MatroidKind::kGraphic:
      return std::make_shared<GraphicMatroid>(std::move(ids), spec.vertices,
                                              spec.edges);
    case MatroidKind::kMatchoid:
      break;
  }
  throw ConfigError("matchoid parts must be uniform, partition or graphic");
}

}  // namespace

SystemPtr BuildMatroid(const MatroidSpec& spec) {
  if (spec.kind == MatroidKind::kMatchoid) {
    return BuildMatchoid(spec.n, spec.parts);
  }
  int n = SpecSize(spec);
  if (n < 0) throw ConfigError("matroid size must be nonnegative");
  return BuildScoped(spec, Range(n));
}

SystemPtr BuildMatchoid(int n, const std::vector<MatchoidPart>& parts) {
  if (n < 0) throw ConfigError("matchoid size must be nonnegative");
  if (parts.empty()) throw ConfigError("matchoid needs at least one part");
  std::vector<MatroidPtr> built;
  for (const MatchoidPart& part : parts) {
    if (SpecSize(part.matroid) != static_cast<int>(part.scope.size())) {
      throw ConfigError("matchoid part size does not match its scope");
    }
    for (Element e : part.scope) {
      if (e < 0 || e >= n) throw ConfigError("matchoid scope out of range");
    }
    built.push_back(BuildScoped(part.matroid, part.scope));
  }
  return std::make_shared<Matchoid>(Range(n), n, std::move(built));
}

}  // namespace psm
