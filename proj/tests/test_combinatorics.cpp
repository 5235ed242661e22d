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

#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <set>

#include "subdet/combinatorics.hpp"
#include "subdet/sets.hpp"
#include "subdet/verify.hpp"
#include "test_support.hpp"

using namespace subdet;

TEST_CASE("binomial exact values") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(10, 0) == 1);
  CHECK(binomial(10, 10) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(52, 5) == 2598960ULL);
  CHECK(binomial(63, 31) == 916312070471295267ULL);
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
}

TEST_CASE("binomial satisfies the Pascal recurrence") {
  for (int n = 1; n <= 40; ++n)
    for (int k = 1; k <= n; ++k)
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("binomial overflow is detected") {
  CHECK_THROWS_AS(binomial(68, 34), std::overflow_error);
  CHECK_THROWS_AS(binomial(-1, 0), InvalidParams);
}

TEST_CASE("subset count guard refuses huge enumerations") {
  CHECK_NOTHROW(guard_subset_count(20, 10));
  CHECK_THROWS_AS(guard_subset_count(30, 15), GroundTooLarge);
  CHECK_THROWS_AS(guard_subset_count(80, 40), GroundTooLarge);
}

TEST_CASE("k-subset enumeration is complete and in increasing mask order") {
  for (int n = 0; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      std::vector<std::uint64_t> got;
      for_each_subset_of_size(n, k, [&](std::uint64_t m) { got.push_back(m); });
      const auto want = testsupport::subsets_of_size(n, k);
      REQUIRE(got.size() == binomial(n, k));
      for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1] < got[i]);
      CHECK(std::set<std::uint64_t>(got.begin(), got.end()) ==
            std::set<std::uint64_t>(want.begin(), want.end()));
      for (std::uint64_t m : got) CHECK(std::popcount(m) == k);
    }
  }
}

TEST_CASE("k-subset enumeration reaches the top of a 64-bit universe") {
  int count = 0;
  std::uint64_t last = 0;
  for_each_subset_of_size(64, 63, [&](std::uint64_t m) {
    ++count;
    last = m;
  });
  CHECK(count == 64);
  CHECK(last == (~std::uint64_t{0} << 1));
}

TEST_CASE("full subset enumeration is the integer range") {
  std::vector<std::uint64_t> got;
  for_each_subset(4, [&](std::uint64_t m) { got.push_back(m); });
  REQUIRE(got.size() == 16);
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == i);
}

TEST_CASE("partition enumeration counts match Bell numbers") {
  const int bell[] = {1, 2, 5, 15, 52, 203};
  for (int n = 1; n <= 6; ++n) {
    int count = 0;
    for_each_partition_rgs(n, [&](const std::vector<int>& rgs) {
      ++count;
      REQUIRE(rgs.size() == static_cast<std::size_t>(n));
      REQUIRE(rgs[0] == 0);
      // from_rgs validates disjoint cover.
      CHECK_NOTHROW(Partition::from_rgs(rgs));
    });
    CHECK(count == bell[n - 1]);
  }
}

TEST_CASE("uniform RGS sampling is valid and hits every partition of [1:3]") {
  XorShift64Star rng(1234);
  std::set<std::string> seen;
  for (int t = 0; t < 200; ++t) {
    const auto rgs = sample_partition_rgs(3, [&] { return rng.uniform01(); });
    const Partition part = Partition::from_rgs(rgs);
    seen.insert(part.to_string());
  }
  CHECK(seen.size() == 5);
}

TEST_CASE("index sets validate and convert masks") {
  const IndexSet s({3, 1}, 4);
  CHECK(s.indices() == std::vector<int>{1, 3});
  CHECK(s.mask() == 0b0101);
  CHECK(s.complement().indices() == std::vector<int>{2, 4});
  CHECK(IndexSet::from_mask(0b0101, 4) == s);
  CHECK(IndexSet::range(3, 2, 4).empty());
  CHECK(IndexSet::full(3).size() == 3);
  CHECK_THROWS_AS(IndexSet({0}, 4), IndexOutOfRange);
  CHECK_THROWS_AS(IndexSet({5}, 4), IndexOutOfRange);
  CHECK_THROWS_AS(IndexSet({2, 2}, 4), InvalidParams);
}

TEST_CASE("partitions validate disjoint covers") {
  CHECK_NOTHROW(Partition({IndexSet({1, 3}, 4), IndexSet({2, 4}, 4)}));
  CHECK_THROWS_AS(Partition({IndexSet({1, 2}, 4), IndexSet({2, 3}, 4)}),
                  InvalidPartition);
  CHECK_THROWS_AS(Partition({IndexSet({1, 2}, 4)}), InvalidPartition);
  CHECK_THROWS_AS(Partition({IndexSet({1, 2}, 4), IndexSet::empty(4),
                             IndexSet({3, 4}, 4)}),
                  InvalidPartition);
  CHECK(Partition::singletons(3).size() == 3);
  CHECK(Partition::whole(3).size() == 1);
}

TEST_CASE("induced prefix blocks keep order and drop empty intersections") {
  const Partition part({IndexSet({1, 3}, 4), IndexSet({4}, 4), IndexSet({2}, 4)});
  const auto induced = induced_prefix_blocks(part, 2);
  REQUIRE(induced.size() == 2);
  CHECK(induced[0].indices() == std::vector<int>{1});
  CHECK(induced[1].indices() == std::vector<int>{2});
  const auto all = induced_prefix_blocks(part, 4);
  REQUIRE(all.size() == 3);
  CHECK(all[0] == part.blocks()[0]);
}
