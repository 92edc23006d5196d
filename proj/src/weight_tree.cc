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

#include "zsg/weight_tree.h"

#include <bit>
#include <cmath>
#include <string>

#include "zsg/errors.h"

namespace zsg {
namespace {

constexpr double kMaxStoredTotal = 0x1.0p512;
constexpr double kMinStoredTotal = 0x1.0p-512;

int CapacityFor(int size) {
  if (size <= 0) throw DomainError("weight tree needs at least one leaf");
  return static_cast<int>(std::bit_ceil(static_cast<unsigned>(size)));
}

void CheckWeight(double w) {
  if (!(w >= 0.0) || !std::isfinite(w)) {
    throw DomainError("weights must be finite and nonnegative, got " +
                      std::to_string(w));
  }
}

}  // namespace

WeightTree::WeightTree(int size)
    : size_(size), capacity_(CapacityFor(size)), nodes_(2 * capacity_, 0.0) {}

WeightTree WeightTree::FromWeights(std::span<const double> weights) {
  WeightTree tree(static_cast<int>(weights.size()));
  for (size_t j = 0; j < weights.size(); ++j) {
    CheckWeight(weights[j]);
    tree.nodes_[tree.capacity_ + j] = weights[j];
  }
  tree.RebuildInternal();
  tree.MaybeRescale();
  return tree;
}

double WeightTree::global_scale() const {
  return std::ldexp(1.0, static_cast<int>(scale_exponent_));
}

double WeightTree::Total() const {
  return std::ldexp(nodes_[1], static_cast<int>(scale_exponent_));
}

double WeightTree::Weight(int j) const {
  CheckLeaf(j, capacity_);
  return std::ldexp(nodes_[capacity_ + j], static_cast<int>(scale_exponent_));
}

double WeightTree::LogTotal() const {
  return std::log(nodes_[1]) +
         static_cast<double>(scale_exponent_) * std::log(2.0);
}

double WeightTree::Probability(int j) const {
  CheckLeaf(j, capacity_);
  if (!(nodes_[1] > 0.0)) {
    throw EmptyDistributionError("probability of an empty weight tree");
  }
  return nodes_[capacity_ + j] / nodes_[1];
}

void WeightTree::CheckLeaf(int j, int limit) const {
  if (j < 0 || j >= limit) {
    throw IndexError("leaf " + std::to_string(j) + " outside [0, " +
                     std::to_string(limit) + ")");
  }
}

void WeightTree::UpdateAncestors(int node) {
  while (node > 1) {
    node >>= 1;
    nodes_[node] = nodes_[2 * node] + nodes_[2 * node + 1];
    touches_ += 2;  // sibling read, parent write
  }
}

void WeightTree::RebuildInternal() {
  for (int node = capacity_ - 1; node >= 1; --node) {
    nodes_[node] = nodes_[2 * node] + nodes_[2 * node + 1];
  }
}

void WeightTree::MaybeRescale() {
  const double total = nodes_[1];
  if (total > 0.0 && (total > kMaxStoredTotal || total < kMinStoredTotal)) {
    Rescale();
  }
}

void WeightTree::Multiply(int j, double factor) {
  CheckLeaf(j, capacity_);
  CheckWeight(factor);
  const int node = capacity_ + j;
  nodes_[node] *= factor;
  ++touches_;
  UpdateAncestors(node);
  MaybeRescale();
}

void WeightTree::Add(int j, double delta) {
  CheckLeaf(j, size_);
  CheckWeight(delta);
  const int node = capacity_ + j;
  nodes_[node] += std::ldexp(delta, -static_cast<int>(scale_exponent_));
  ++touches_;
  UpdateAncestors(node);
  MaybeRescale();
}

void WeightTree::Set(int j, double weight) {
  CheckLeaf(j, size_);
  CheckWeight(weight);
  const int node = capacity_ + j;
  nodes_[node] = std::ldexp(weight, -static_cast<int>(scale_exponent_));
  ++touches_;
  UpdateAncestors(node);
  MaybeRescale();
}

int WeightTree::Sample(Rng& rng) const {
  if (!(nodes_[1] > 0.0)) {
    throw EmptyDistributionError("cannot sample from an all-zero weight tree");
  }
  int node = 1;
  ++touches_;
  while (node < capacity_) {
    const double left = nodes_[2 * node];
    const double right = nodes_[2 * node + 1];
    touches_ += 2;
    // A zero-weight side is never chosen: u < 1 keeps u*left < left, and
    // u*(0 + right) < 0 is false.
    node = rng.Uniform() * (left + right) < left ? 2 * node : 2 * node + 1;
  }
  return node - capacity_;
}

void WeightTree::Rescale() {
  const double total = nodes_[1];
  if (!(total > 0.0)) return;
  int exponent = 0;
  const double mantissa = std::frexp(total, &exponent);  // [0.5, 1)
  const int shift = mantissa >= M_SQRT1_2 ? exponent : exponent - 1;
  if (shift == 0) return;
  for (int j = 0; j < capacity_; ++j) {
    double& leaf = nodes_[capacity_ + j];
    leaf = std::ldexp(leaf, -shift);
  }
  RebuildInternal();
  scale_exponent_ += shift;
}

void WeightTree::Grow(int new_size) {
  if (new_size <= size_) return;
  const int new_capacity = CapacityFor(new_size);
  if (new_capacity != capacity_) {
    std::vector<double> nodes(2 * new_capacity, 0.0);
    for (int j = 0; j < size_; ++j) {
      nodes[new_capacity + j] = nodes_[capacity_ + j];
    }
    nodes_ = std::move(nodes);
    capacity_ = new_capacity;
    RebuildInternal();
  }
  size_ = new_size;
}

SupportTree::SupportTree(int dimension) : dimension_(dimension), tree_(1) {
  if (dimension <= 0) throw DomainError("support tree over no coordinates");
}

void SupportTree::Add(int index, double delta) {
  if (index < 0 || index >= dimension_) {
    throw IndexError("coordinate " + std::to_string(index) + " outside [0, " +
                     std::to_string(dimension_) + ")");
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw DomainError("support weights only grow by finite amounts");
  }
  auto it = slot_of_.find(index);
  int slot;
  if (it == slot_of_.end()) {
    if (delta == 0.0) return;
    slot = static_cast<int>(support_.size());
    support_.push_back(index);
    slot_of_.emplace(index, slot);
    if (slot >= tree_.size()) tree_.Grow(slot + 1);
  } else {
    slot = it->second;
  }
  tree_.Add(slot, delta);
}

double SupportTree::Weight(int index) const {
  auto it = slot_of_.find(index);
  return it == slot_of_.end() ? 0.0 : tree_.Weight(it->second);
}

int SupportTree::Sample(Rng& rng) const {
  if (support_.empty()) {
    throw EmptyDistributionError("cannot sample from an empty support tree");
  }
  return support_[tree_.Sample(rng)];
}

std::vector<double> SupportTree::Dense() const {
  std::vector<double> out(dimension_, 0.0);
  for (size_t slot = 0; slot < support_.size(); ++slot) {
    out[support_[slot]] = tree_.Weight(static_cast<int>(slot));
  }
  return out;
}

}  // namespace zsg
