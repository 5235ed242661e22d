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

#include <cmath>

#include "subdet/submodular.hpp"
#include "test_support.hpp"

using namespace subdet;
using Catch::Approx;
using testsupport::example_matrix_a;

TEST_CASE("gaussian entropy instance") {
  const SetFunction g = gaussian_entropy_fn(example_matrix_a());
  CHECK(g.value(0) == 0.0);
  CHECK(g.value(0b0001) ==
        Approx(0.5 * kLogTwoPiE + 0.5 * std::log(2.0)).epsilon(1e-12));
  CHECK(g.value(0b1111) ==
        Approx(2.0 * kLogTwoPiE + 0.5 * std::log(74.0)).epsilon(1e-12));
  CHECK(check_submodular(g).ok);
}

TEST_CASE("discrete entropy instance") {
  SECTION("independent fair bits") {
    const SetFunction h =
        discrete_entropy_fn({2, 2}, {0.25, 0.25, 0.25, 0.25});
    CHECK(h.value(0b01) == Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(h.value(0b10) == Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(h.value(0b11) == Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(check_submodular(h).ok);
  }
  SECTION("perfectly correlated pair, zero cells handled") {
    const SetFunction h = discrete_entropy_fn({2, 2}, {0.5, 0.0, 0.0, 0.5});
    CHECK(h.value(0b01) == Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(h.value(0b11) == Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(check_submodular(h).ok);
  }
  SECTION("mixed alphabet marginalization") {
    // X1 in {0,1,2} uniform, X2 = (X1 == 0), dependent pair.
    const SetFunction h = discrete_entropy_fn(
        {3, 2}, {0.0, 1.0 / 3, 1.0 / 3, 0.0, 1.0 / 3, 0.0});
    CHECK(h.value(0b01) == Approx(std::log(3.0)).epsilon(1e-12));
    const double want =
        -(2.0 / 3) * std::log(2.0 / 3) - (1.0 / 3) * std::log(1.0 / 3);
    CHECK(h.value(0b10) == Approx(want).epsilon(1e-12));
    CHECK(h.value(0b11) == Approx(std::log(3.0)).epsilon(1e-12));
  }
  SECTION("validation") {
    CHECK_THROWS_AS(discrete_entropy_fn({2, 2}, {0.5, 0.5, 0.5, -0.5}),
                    InvalidParams);
    CHECK_THROWS_AS(discrete_entropy_fn({2, 2}, {0.4, 0.4, 0.1, 0.2}),
                    InvalidParams);
    CHECK_THROWS_AS(discrete_entropy_fn({2, 2}, {0.5, 0.5}), InvalidParams);
  }
}

TEST_CASE("graph cut instance") {
  SECTION("no edges means the zero function") {
    const SetFunction f = graph_cut_fn(3, {});
    for (std::uint64_t m = 0; m < 8; ++m) CHECK(f.value(m) == 0.0);
  }
  SECTION("triangle by hand") {
    const SetFunction f =
        graph_cut_fn(3, {{1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
    CHECK(f.value(0b001) == 2.0);
    CHECK(f.value(0b011) == 2.0);
    CHECK(f.value(0b111) == 0.0);
    CHECK(check_submodular(f).ok);
  }
  SECTION("weighted, not monotone, still submodular") {
    const SetFunction f = graph_cut_fn(4, {{1, 2, 0.5}, {2, 3, 2.0}, {1, 4, 1.0}});
    CHECK(f.value(0b0010) == Approx(2.5));
    CHECK(check_submodular(f).ok);
  }
  SECTION("validation") {
    CHECK_THROWS_AS(graph_cut_fn(3, {{1, 1, 1.0}}), InvalidParams);
    CHECK_THROWS_AS(graph_cut_fn(3, {{1, 4, 1.0}}), InvalidParams);
    CHECK_THROWS_AS(graph_cut_fn(3, {{1, 2, -1.0}}), InvalidParams);
  }
}

TEST_CASE("set cover instance") {
  SECTION("empty universe means the zero function") {
    const SetFunction f = set_cover_fn({}, {{}, {}});
    for (std::uint64_t m = 0; m < 4; ++m) CHECK(f.value(m) == 0.0);
  }
  SECTION("weighted cover by hand") {
    const SetFunction f = set_cover_fn({1, 2, 3}, {{1, 2}, {2, 3}});
    CHECK(f.value(0b01) == 3.0);
    CHECK(f.value(0b10) == 5.0);
    CHECK(f.value(0b11) == 6.0);
    CHECK(check_submodular(f).ok);
  }
  SECTION("validation") {
    CHECK_THROWS_AS(set_cover_fn({-1.0}, {{1}}), InvalidParams);
    CHECK_THROWS_AS(set_cover_fn({1.0}, {{2}}), InvalidParams);
  }
}

TEST_CASE("matroid rank instances") {
  SECTION("uniform") {
    const SetFunction f = matroid_rank_fn(4, 2);
    CHECK(f.value(0b0001) == 1.0);
    CHECK(f.value(0b0011) == 2.0);
    CHECK(f.value(0b0111) == 2.0);
    CHECK(f.value(0b1111) == 2.0);
    CHECK(check_submodular(f).ok);
    const SetFunction zero = matroid_rank_fn(3, 0);
    CHECK(zero.value(0b111) == 0.0);
  }
  SECTION("partition matroid") {
    const Partition blocks({IndexSet({1, 2}, 4), IndexSet({3, 4}, 4)});
    const SetFunction f = matroid_rank_fn(blocks, {1, 2});
    CHECK(f.value(0b0011) == 1.0);   // {1,2} capped at 1
    CHECK(f.value(0b0111) == 2.0);   // 1 + |{3}|
    CHECK(f.value(0b1111) == 3.0);
    CHECK(check_submodular(f).ok);
    CHECK_THROWS_AS(matroid_rank_fn(blocks, {1}), InvalidParams);
    CHECK_THROWS_AS(matroid_rank_fn(blocks, {1, -1}), InvalidParams);
  }
}

TEST_CASE("facility location instance") {
  SECTION("zeros mean the zero function") {
    const SetFunction f = facility_location_fn({{0, 0}, {0, 0}});
    CHECK(f.value(0b11) == 0.0);
  }
  SECTION("by hand") {
    const SetFunction f = facility_location_fn({{1.0, 0.5}, {0.2, 0.9}});
    CHECK(f.value(0b01) == Approx(1.2).epsilon(1e-12));
    CHECK(f.value(0b10) == Approx(1.4).epsilon(1e-12));
    CHECK(f.value(0b11) == Approx(1.9).epsilon(1e-12));
    CHECK(check_submodular(f).ok);
  }
  SECTION("validation") {
    CHECK_THROWS_AS(facility_location_fn({{1.0, -0.1}, {0.2, 0.9}}),
                    InvalidParams);
    CHECK_THROWS_AS(facility_location_fn({{1.0, 0.5}}), InvalidParams);
  }
}

TEST_CASE("modular instance") {
  const SetFunction f = modular_fn({1.5, -2.0, 0.25});
  CHECK(f.value(0b101) == Approx(1.75).epsilon(1e-12));
  CHECK(f.value(0) == 0.0);
  CHECK(check_submodular(f).ok);
}

TEST_CASE("every constructor normalizes the empty set") {
  CHECK(gaussian_entropy_fn(example_matrix_a()).value(0) == 0.0);
  CHECK(graph_cut_fn(3, {{1, 2, 1.0}}).value(0) == 0.0);
  CHECK(set_cover_fn({1.0}, {{1}}).value(0) == 0.0);
  CHECK(matroid_rank_fn(3, 2).value(0) == 0.0);
  CHECK(facility_location_fn({{1.0}}).value(0) == 0.0);
  CHECK(discrete_entropy_fn({2}, {0.5, 0.5}).value(0) == 0.0);
  CHECK(modular_fn({1.0, 2.0}).value(0) == 0.0);
}
