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

#ifndef SUBDET_SETS_HPP_
#define SUBDET_SETS_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "subdet/combinatorics.hpp"
#include "subdet/errors.hpp"

namespace subdet {

/// Subset of the ground set [1:n]. Indices are 1-based at every external
/// interface and stored strictly increasing; internally index i maps to
/// bit i-1 of a 64-bit mask, which bounds ground sets at n <= 64.
class IndexSet {
 public:
  IndexSet(std::vector<int> indices, int ground_n)
      : indices_(std::move(indices)), ground_n_(ground_n) {
    validate_ground(ground_n_);
    std::sort(indices_.begin(), indices_.end());
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      if (indices_[i] < 1 || indices_[i] > ground_n_)
        throw IndexOutOfRange("index " + std::to_string(indices_[i]) +
                              " outside [1:" + std::to_string(ground_n_) + "]");
      if (i > 0 && indices_[i] == indices_[i - 1])
        throw InvalidParams("duplicate index " + std::to_string(indices_[i]));
    }
  }

  static IndexSet empty(int ground_n) { return IndexSet({}, ground_n); }

  static IndexSet full(int ground_n) { return range(1, ground_n, ground_n); }

  /// The set [lo:hi]; empty when lo > hi.
  static IndexSet range(int lo, int hi, int ground_n) {
    std::vector<int> v;
    for (int i = std::max(lo, 1); i <= hi; ++i) v.push_back(i);
    return IndexSet(std::move(v), ground_n);
  }

  static IndexSet from_mask(std::uint64_t mask, int ground_n) {
    validate_ground(ground_n);
    if (ground_n < 64 && (mask >> ground_n) != 0)
      throw IndexOutOfRange("mask has bits beyond ground set");
    std::vector<int> v;
    for (int i = 0; i < ground_n; ++i)
      if (mask & (std::uint64_t{1} << i)) v.push_back(i + 1);
    return IndexSet(std::move(v), ground_n);
  }

  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (int i : indices_) m |= std::uint64_t{1} << (i - 1);
    return m;
  }

  IndexSet complement() const {
    return from_mask(~mask() & low_bits(ground_n_), ground_n_);
  }

  IndexSet set_union(const IndexSet& other) const {
    require_same_ground(other);
    return from_mask(mask() | other.mask(), ground_n_);
  }

  IndexSet set_intersection(const IndexSet& other) const {
    require_same_ground(other);
    return from_mask(mask() & other.mask(), ground_n_);
  }

  IndexSet set_difference(const IndexSet& other) const {
    require_same_ground(other);
    return from_mask(mask() & ~other.mask(), ground_n_);
  }

  bool contains(int index) const {
    return std::binary_search(indices_.begin(), indices_.end(), index);
  }

  bool is_subset_of(const IndexSet& other) const {
    require_same_ground(other);
    return (mask() & ~other.mask()) == 0;
  }

  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  int ground_n() const { return ground_n_; }
  const std::vector<int>& indices() const { return indices_; }

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool operator==(const IndexSet& other) const {
    return ground_n_ == other.ground_n_ && indices_ == other.indices_;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(indices_[i]);
    }
    return s + "}";
  }

 private:
  static void validate_ground(int ground_n) {
    if (ground_n < 0 || ground_n > 64)
      throw InvalidParams("ground set size must be in [0,64], got " +
                          std::to_string(ground_n));
  }

  void require_same_ground(const IndexSet& other) const {
    if (ground_n_ != other.ground_n_)
      throw InvalidParams("index sets over different ground sets");
  }

  std::vector<int> indices_;
  int ground_n_;
};

/// Disjoint cover of [1:n] by nonempty blocks. Block order is preserved as
/// given; all block sums run in that order for deterministic results.
class Partition {
 public:
  explicit Partition(std::vector<IndexSet> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw InvalidPartition("partition has no blocks");
    ground_n_ = blocks_.front().ground_n();
    std::uint64_t seen = 0;
    for (const IndexSet& b : blocks_) {
      if (b.ground_n() != ground_n_)
        throw InvalidPartition("blocks over different ground sets");
      if (b.empty()) throw InvalidPartition("empty block");
      if (seen & b.mask()) throw InvalidPartition("blocks overlap");
      seen |= b.mask();
    }
    if (seen != low_bits(ground_n_))
      throw InvalidPartition("blocks do not cover the ground set");
  }

  static Partition singletons(int ground_n) {
    std::vector<IndexSet> blocks;
    for (int i = 1; i <= ground_n; ++i)
      blocks.push_back(IndexSet({i}, ground_n));
    return Partition(std::move(blocks));
  }

  static Partition whole(int ground_n) {
    return Partition({IndexSet::full(ground_n)});
  }

  /// Builds a partition from a restricted-growth string (0-based positions).
  static Partition from_rgs(const std::vector<int>& rgs) {
    const int n = static_cast<int>(rgs.size());
    int nblocks = 0;
    for (int v : rgs) nblocks = std::max(nblocks, v + 1);
    std::vector<std::vector<int>> groups(nblocks);
    for (int i = 0; i < n; ++i) groups[rgs[i]].push_back(i + 1);
    std::vector<IndexSet> blocks;
    for (auto& g : groups) blocks.emplace_back(std::move(g), n);
    return Partition(std::move(blocks));
  }

  const std::vector<IndexSet>& blocks() const { return blocks_; }
  int ground_n() const { return ground_n_; }
  int size() const { return static_cast<int>(blocks_.size()); }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i) s += "|";
      const auto& idx = blocks_[i].indices();
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(idx[j]);
      }
    }
    return s;
  }

 private:
  std::vector<IndexSet> blocks_;
  int ground_n_ = 0;
};

/// The induced partition P' of [1:p]: nonempty intersections S ∩ [1:p] for
/// S in P, in block order. Blocks stay indexed over the original ground set.
inline std::vector<IndexSet> induced_prefix_blocks(const Partition& part, int p) {
  if (p < 0 || p > part.ground_n())
    throw InvalidParams("prefix length outside [0:n]");
  const std::uint64_t prefix = low_bits(p);
  std::vector<IndexSet> out;
  for (const IndexSet& b : part.blocks()) {
    const std::uint64_t m = b.mask() & prefix;
    if (m) out.push_back(IndexSet::from_mask(m, part.ground_n()));
  }
  return out;
}

}  // namespace subdet

#endif  // SUBDET_SETS_HPP_
