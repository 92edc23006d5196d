// Copyright 2026 The zsg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZSG_WEIGHT_TREE_H_
#define ZSG_WEIGHT_TREE_H_

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "zsg/rng.h"

namespace zsg {

// Binary sum tree over nonnegative weights.
//
// Leaves live in an implicit heap layout (root at node 1, leaf j at node
// capacity + j); every internal node holds the sum of its two children.
// Capacity is the next power of two at or above the requested size and the
// padding leaves stay at weight zero, so they are never sampled.
//
// The logical weight of leaf j is stored(j) * 2^scale_exponent. Rescaling
// only ever divides by a power of two, which is exact in binary floating
// point: the sampling distribution is preserved bit for bit. Whenever the
// stored total leaves [2^-512, 2^512] the tree rescales itself, which keeps
// Gibbs weights e^{u_j} representable however large the scores grow.
class WeightTree {
 public:
  // All-zero tree with `size` leaves.
  explicit WeightTree(int size);
  // Throws DomainError on negative or non-finite weights.
  static WeightTree FromWeights(std::span<const double> weights);

  int size() const { return size_; }
  int capacity() const { return capacity_; }

  // Logical values; may overflow to inf when the scale is huge.
  double Total() const;
  double Weight(int j) const;
  // Natural log of the logical total (-inf for an empty tree).
  double LogTotal() const;
  double Probability(int j) const;

  double StoredTotal() const { return nodes_[1]; }
  double StoredWeight(int j) const { return nodes_[capacity_ + j]; }
  int64_t scale_exponent() const { return scale_exponent_; }
  // 2^scale_exponent.
  double global_scale() const;
  // Implicit heap: index 0 unused, 1 is the root.
  std::span<const double> nodes() const { return nodes_; }

  // Multiplies the logical weight of leaf j by factor >= 0. O(log capacity).
  void Multiply(int j, double factor);
  // Adds delta >= 0 to the logical weight of leaf j < size().
  void Add(int j, double delta);
  // Replaces the logical weight of leaf j < size().
  void Set(int j, double weight);

  // Leaf drawn with probability Weight(j) / Total(). Walks down from the
  // root with one uniform draw per level. Throws EmptyDistributionError on
  // a zero total.
  int Sample(Rng& rng) const;

  // Divides the stored weights by the power of two nearest to the stored
  // total and folds it into the scale. No-op on an empty tree. O(capacity).
  void Rescale();

  // Enlarges to at least new_size leaves, keeping existing weights.
  void Grow(int new_size);

  // Number of nodes read or written by Multiply/Add/Set/Sample since the
  // last reset (automatic rescales are not counted).
  uint64_t touches() const { return touches_; }
  void ResetTouches() { touches_ = 0; }

 private:
  void CheckLeaf(int j, int limit) const;
  void UpdateAncestors(int node);
  void RebuildInternal();
  void MaybeRescale();

  int size_;
  int capacity_;
  int64_t scale_exponent_ = 0;
  std::vector<double> nodes_;
  mutable uint64_t touches_ = 0;
};

// Cumulative strategy weights over `dimension` pure strategies, stored in a
// WeightTree that only holds the support. Slots are assigned in the order
// indices first receive weight and the tree grows by doubling, so a
// t-sparse iterate costs O(t) memory regardless of the dimension.
class SupportTree {
 public:
  explicit SupportTree(int dimension);

  int dimension() const { return dimension_; }
  // Indices with positive weight, in order of first appearance.
  std::span<const int> support() const { return support_; }

  // Adds delta >= 0 to coordinate index.
  void Add(int index, double delta);
  double Weight(int index) const;
  double Total() const { return tree_.Total(); }
  // Index drawn proportionally to weight. O(log |support|).
  int Sample(Rng& rng) const;
  // Dense copy of all weights.
  std::vector<double> Dense() const;

  const WeightTree& tree() const { return tree_; }

 private:
  int dimension_;
  std::vector<int> support_;
  std::unordered_map<int, int> slot_of_;
  WeightTree tree_;
};

}  // namespace zsg

#endif  // ZSG_WEIGHT_TREE_H_
