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

#ifndef PSM_MATROID_H_
#define PSM_MATROID_H_

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "psm/types.h"

namespace psm {

// Incremental span state: starts at span(∅) and absorbs one element at a
// time. Used to answer many nested span queries without rebuilding.
class SpanTracker {
 public:
  virtual ~SpanTracker() = default;
  // Adds a ground element; adding the same element twice is a no-op.
  virtual void Add(Element e) = 0;
  // e ∈ span(elements added so far).
  virtual bool Spans(Element e) const = 0;
};

class IndependenceSystem;
class Matroid;
using SystemPtr = std::shared_ptr<const IndependenceSystem>;
using MatroidPtr = std::shared_ptr<const Matroid>;

// An independence system over a subset of the ids 0..universe()-1 that
// supports span queries: a single matroid or a matchoid, possibly viewed
// through contraction and restriction. Views keep the ids of the system
// they were derived from.
//
// Instances are immutable and must be owned by a shared_ptr.
class IndependenceSystem
    : public std::enable_shared_from_this<IndependenceSystem> {
 public:
  virtual ~IndependenceSystem() = default;
  IndependenceSystem(const IndependenceSystem&) = delete;
  IndependenceSystem& operator=(const IndependenceSystem&) = delete;

  const ElementSet& ground() const { return ground_; }
  int universe() const { return universe_; }
  bool InGround(Element e) const {
    return e >= 0 && e < universe_ && in_ground_[e] != 0;
  }

  // All queries throw ConfigError if a set leaves the ground set.
  virtual bool IsIndependent(const ElementSet& s) const = 0;
  // Span of `s` within the ground set.
  virtual ElementSet Span(const ElementSet& s) const = 0;
  virtual std::unique_ptr<SpanTracker> NewTracker() const = 0;
  bool InSpan(const ElementSet& s, Element e) const;

  // Largest number of scopes that share an element; 1 for a matroid.
  virtual int p() const { return 1; }
  virtual bool is_matroid() const = 0;
  virtual std::string name() const = 0;

  // Size of a maximal independent set found greedily in id order. Exact
  // (the rank) for matroids, a lower bound on max |I| for matchoids.
  int max_cardinality() const;

  // The system on ground ∖ span(q) with q contracted. Contract(∅) is this.
  virtual SystemPtr Contract(const ElementSet& q) const = 0;
  // The system restricted to s ⊆ ground.
  virtual SystemPtr Restrict(const ElementSet& s) const = 0;

 protected:
  IndependenceSystem(ElementSet ground, int universe);
  void CheckGround(const ElementSet& s) const;
  void CheckGround(Element e) const;

 private:
  ElementSet ground_;
  int universe_;
  std::vector<uint8_t> in_ground_;
  mutable std::once_flag cardinality_once_;
  mutable int cardinality_ = 0;
};

class Matroid : public IndependenceSystem {
 public:
  // Size of a largest independent subset of s.
  virtual int Rank(const ElementSet& s) const = 0;
  bool is_matroid() const override { return true; }

  MatroidPtr ContractMatroid(const ElementSet& q) const;
  MatroidPtr RestrictMatroid(const ElementSet& s) const;
  SystemPtr Contract(const ElementSet& q) const override {
    return ContractMatroid(q);
  }
  SystemPtr Restrict(const ElementSet& s) const override {
    return RestrictMatroid(s);
  }

 protected:
  using IndependenceSystem::IndependenceSystem;
  MatroidPtr self() const {
    return std::static_pointer_cast<const Matroid>(shared_from_this());
  }
};

// A matroid whose elements are named by `ids`: local element i of the
// underlying structure is the global id ids[i].
class ScopedMatroid : public Matroid {
 public:
  // Local index of a ground element.
  int local(Element e) const { return local_[e]; }
  const std::vector<Element>& ids() const { return ids_; }

 protected:
  explicit ScopedMatroid(std::vector<Element> ids);

 private:
  std::vector<Element> ids_;
  std::vector<int> local_;
};

// Independent sets are those of size at most k.
class UniformMatroid final : public ScopedMatroid {
 public:
  UniformMatroid(std::vector<Element> ids, int k);
  int Rank(const ElementSet& s) const override;
  bool IsIndependent(const ElementSet& s) const override;
  ElementSet Span(const ElementSet& s) const override;
  std::unique_ptr<SpanTracker> NewTracker() const override;
  std::string name() const override { return "uniform"; }
  int k() const { return k_; }

 private:
  int k_;
};

// Local elements are partitioned into blocks; block b admits at most
// capacities[b] elements.
class PartitionMatroid final : public ScopedMatroid {
 public:
  PartitionMatroid(std::vector<Element> ids,
                   const std::vector<std::vector<int>>& blocks,
                   std::vector<int> capacities);
  int Rank(const ElementSet& s) const override;
  bool IsIndependent(const ElementSet& s) const override;
  ElementSet Span(const ElementSet& s) const override;
  std::unique_ptr<SpanTracker> NewTracker() const override;
  std::string name() const override { return "partition"; }
  int block_of(Element e) const { return block_of_[local(e)]; }
  int capacity(int block) const { return capacities_[block]; }
  int blocks() const { return static_cast<int>(capacities_.size()); }

 private:
  std::vector<int> CountPerBlock(const ElementSet& s) const;

  std::vector<int> block_of_;
  std::vector<int> capacities_;
};

// Forests of a multigraph; local element i is edge i. Self-loops are
// loops of the matroid.
class GraphicMatroid final : public ScopedMatroid {
 public:
  GraphicMatroid(std::vector<Element> ids, int vertices,
                 std::vector<std::pair<int, int>> edges);
  int Rank(const ElementSet& s) const override;
  bool IsIndependent(const ElementSet& s) const override;
  ElementSet Span(const ElementSet& s) const override;
  std::unique_ptr<SpanTracker> NewTracker() const override;
  std::string name() const override { return "graphic"; }
  int vertices() const { return vertices_; }
  const std::pair<int, int>& endpoints(Element e) const {
    return edges_[local(e)];
  }

 private:
  int vertices_;
  std::vector<std::pair<int, int>> edges_;
};

// M/Q: ground N ∖ span(Q), rank_Q(T) = rank(Q ∪ T) − rank(Q).
class ContractedMatroid final : public Matroid {
 public:
  ContractedMatroid(MatroidPtr base, ElementSet q);
  int Rank(const ElementSet& s) const override;
  bool IsIndependent(const ElementSet& s) const override;
  ElementSet Span(const ElementSet& s) const override;
  std::unique_ptr<SpanTracker> NewTracker() const override;
  std::string name() const override { return base_->name() + "/contracted"; }
  const MatroidPtr& base() const { return base_; }
  const ElementSet& contracted() const { return q_; }

 private:
  MatroidPtr base_;
  ElementSet q_;
  ElementSet basis_;  // a maximal independent subset of q_
};

// M|S: ground S, independence inherited.
class RestrictedMatroid final : public Matroid {
 public:
  RestrictedMatroid(MatroidPtr base, ElementSet s);
  int Rank(const ElementSet& s) const override;
  bool IsIndependent(const ElementSet& s) const override;
  ElementSet Span(const ElementSet& s) const override;
  std::unique_ptr<SpanTracker> NewTracker() const override;
  std::string name() const override { return base_->name() + "/restricted"; }
  const MatroidPtr& base() const { return base_; }

 private:
  MatroidPtr base_;
};

// A matchoid: S is independent iff S ∩ ground(part) is independent in
// every part. Elements outside every part are free: always addable and
// spanned only by themselves.
class Matchoid final : public IndependenceSystem {
 public:
  Matchoid(ElementSet ground, int universe, std::vector<MatroidPtr> parts);
  bool IsIndependent(const ElementSet& s) const override;
  ElementSet Span(const ElementSet& s) const override;
  std::unique_ptr<SpanTracker> NewTracker() const override;
  int p() const override { return p_; }
  bool is_matroid() const override { return false; }
  std::string name() const override { return "matchoid"; }
  SystemPtr Contract(const ElementSet& q) const override;
  SystemPtr Restrict(const ElementSet& s) const override;
  const std::vector<MatroidPtr>& parts() const { return parts_; }

 private:
  std::vector<MatroidPtr> parts_;
  std::vector<std::vector<int>> membership_;  // element -> part indices
  int p_ = 1;
};

enum class MatroidKind { kUniform, kPartition, kGraphic, kMatchoid };

struct MatchoidPart;

struct MatroidSpec {
  MatroidKind kind = MatroidKind::kUniform;
  // uniform
  int n = 0;
  int k = 0;
  // partition: blocks over elements 0..n-1 (n = total size)
  std::vector<std::vector<int>> blocks;
  std::vector<int> capacities;
  // graphic: element i is edges[i]
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  // matchoid: ground 0..n-1; part i acts on scope[j] as its local element j
  std::vector<MatchoidPart> parts;
};

struct MatchoidPart {
  MatroidSpec matroid;
  std::vector<Element> scope;
};

// Element count of the matroid a spec describes.
int SpecSize(const MatroidSpec& spec);

// Throws ConfigError on malformed specs.
SystemPtr BuildMatroid(const MatroidSpec& spec);
SystemPtr BuildMatchoid(int n, const std::vector<MatchoidPart>& parts);

// Downcast helper; null for matchoids.
inline MatroidPtr AsMatroid(const SystemPtr& m) {
  return std::dynamic_pointer_cast<const Matroid>(m);
}

}  // namespace psm

#endif  // PSM_MATROID_H_
