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

#ifndef SUBDET_COMBINATORICS_HPP_
#define SUBDET_COMBINATORICS_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "subdet/errors.hpp"

namespace subdet {

// Subset loops refuse configurations enumerating more than this many subsets.
inline constexpr std::uint64_t kSubsetEnumLimit = std::uint64_t{1} << 24;

// Exact C(n, k) as an unsigned 64-bit integer. Throws std::overflow_error if
// the value does not fit. The running product r * (n-k+i) / i is exact at
// every step; 128-bit intermediates keep the step itself from overflowing.
inline std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0) throw InvalidParams("binomial: negative argument");
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > static_cast<unsigned __int128>(UINT64_MAX))
      throw std::overflow_error("binomial(" + std::to_string(n) + "," +
                                std::to_string(k) + ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

// Throws GroundTooLarge when a loop over all k-subsets of an n-universe would
// exceed the enumeration limit; the message reports the subset count.
inline void guard_subset_count(int n, int k,
                               std::uint64_t limit = kSubsetEnumLimit) {
  std::uint64_t count;
  try {
    count = binomial(n, k);
  } catch (const std::overflow_error&) {
    throw GroundTooLarge("subset enumeration C(" + std::to_string(n) + "," +
                         std::to_string(k) + ") overflows 64 bits");
  }
  if (count > limit)
    throw GroundTooLarge("subset enumeration C(" + std::to_string(n) + "," +
                         std::to_string(k) + ") = " + std::to_string(count) +
                         " exceeds limit " + std::to_string(limit));
}

// All k bits set; valid for 0 <= k <= 64.
inline std::uint64_t low_bits(int k) {
  return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
}

// Calls f(mask) for every k-element subset of [0, n), masks in increasing
// numeric (lexicographic bitmask) order. Gosper's hack; n up to 64.
template <typename F>
void for_each_subset_of_size(int n, int k, F&& f) {
  if (n < 0 || n > 64) throw InvalidParams("subset universe must be in [0,64]");
  if (k < 0 || k > n) return;
  if (k == 0) {
    f(std::uint64_t{0});
    return;
  }
  std::uint64_t mask = low_bits(k);
  const std::uint64_t last = low_bits(k) << (n - k);
  while (true) {
    f(static_cast<std::uint64_t>(mask));
    if (mask == last) break;
    const std::uint64_t lo = mask & (~mask + 1);
    const std::uint64_t carry = mask + lo;
    mask = carry | (((mask ^ carry) >> 2) / lo);
  }
}

// Calls f(mask) for every subset of [0, n) in increasing mask order.
// Exhaustive; callers cap n well below the 2^24 enumeration limit.
template <typename F>
void for_each_subset(int n, F&& f) {
  if (n < 0 || n > 32) throw InvalidParams("full subset enumeration needs n <= 32");
  const std::uint64_t top = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < top; ++mask) f(mask);
}

// Set partitions of [0, n) as restricted-growth strings: rgs[0] = 0 and
// rgs[i] <= 1 + max(rgs[0..i-1]). Each RGS corresponds to exactly one
// partition; block j = { i : rgs[i] == j }.
template <typename F>
void for_each_partition_rgs(int n, F&& f) {
  if (n <= 0) return;
  std::vector<int> rgs(n, 0), maxv(n, 0);
  while (true) {
    f(static_cast<const std::vector<int>&>(rgs));
    int i = n - 1;
    while (i > 0 && rgs[i] == maxv[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    maxv[i] = std::max(maxv[i - 1], rgs[i]);
    for (int j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      maxv[j] = maxv[i];
    }
  }
}

// Number of ways to complete an RGS of length n from position i when the
// running maximum is m. Used for exact uniform sampling.
inline double rgs_completions(int n, int i, int m,
                              std::vector<std::vector<double>>* memo) {
  if (i == n) return 1.0;
  double& slot = (*memo)[i][m];
  if (slot >= 0) return slot;
  slot = (m + 1) * rgs_completions(n, i + 1, m, memo) +
         rgs_completions(n, i + 1, m + 1, memo);
  return slot;
}

// Draws a uniform restricted-growth string of length n. `unit` must return
// doubles in [0, 1); the draw is exact up to double rounding, which is
// negligible at the n <= 16 scales used here.
template <typename Unit>
std::vector<int> sample_partition_rgs(int n, Unit&& unit) {
  std::vector<int> rgs(n, 0);
  if (n <= 0) return rgs;
  std::vector<std::vector<double>> memo(
      n + 1, std::vector<double>(n + 2, -1.0));
  int m = 0;
  for (int i = 1; i < n; ++i) {
    const double below = rgs_completions(n, i + 1, m, &memo);
    const double total = (m + 1) * below + rgs_completions(n, i + 1, m + 1, &memo);
    double u = unit() * total;
    int v = 0;
    for (; v <= m; ++v) {
      if (u < below) break;
      u -= below;
    }
    rgs[i] = v;
    if (v > m) m = v;
  }
  return rgs;
}

}  // namespace subdet

#endif  // SUBDET_COMBINATORICS_HPP_
