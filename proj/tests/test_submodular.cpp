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
#include <thread>

#include "subdet/submodular.hpp"
#include "subdet/verify.hpp"
#include "test_support.hpp"

using namespace subdet;
using Catch::Approx;
using testsupport::example_matrix_a;

namespace {

SetFunction cardinality_squared(int n) {
  return SetFunction::from_mask_oracle(
      n, [](std::uint64_t m) { return static_cast<double>(std::popcount(m)) *
                                      std::popcount(m); },
      "|S|^2");
}

SetFunction triangle_cut() {
  return graph_cut_fn(3, {{1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
}

double det_transform(double sub_bound, int n) {
  return std::exp(2.0 * sub_bound - n * kLogTwoPiE);
}

}  // namespace

TEST_CASE("normalization forces f(empty) = 0 exactly") {
  const SetFunction f = SetFunction::from_mask_oracle(
      3, [](std::uint64_t m) { return 7.5 + std::popcount(m); }, "offset");
  CHECK(f.value(0) == 0.0);
  CHECK(f.value(0b111) == 3.0);
}

TEST_CASE("conditional value") {
  const SetFunction mod = modular_fn({1, 2, 3});
  CHECK(conditional_value(mod, IndexSet::empty(3), IndexSet({2}, 3)) == 0.0);
  CHECK(conditional_value(mod, IndexSet({1, 2}, 3), IndexSet({2, 3}, 3)) ==
        Approx(1.0).epsilon(1e-12));
  // Gaussian conditional: h(X_{1,2,3} | X_4) = 3/2 ln(2*pi*e) + 1/2 ln(74/5).
  const SetFunction g = gaussian_entropy_fn(example_matrix_a());
  const double want = 1.5 * kLogTwoPiE + 0.5 * std::log(74.0 / 5.0);
  CHECK(conditional_value(g, IndexSet({1, 2, 3}, 4), IndexSet({4}, 4)) ==
        Approx(want).epsilon(1e-12));
}

TEST_CASE("contraction re-indexes and stays submodular") {
  const SetFunction cut = triangle_cut();
  const SetFunction same = contract(cut, IndexSet::empty(3));
  CHECK(same.value(0b101) == cut.value(0b101));

  const SetFunction g = contract(cut, IndexSet({3}, 3));
  CHECK(g.ground_n() == 2);
  CHECK(g.index_map() == std::vector<int>{1, 2});
  // f({1}|{3}) = cut({1,3}) - cut({3}) = 2 - 2 = 0.
  CHECK(g.value(0b01) == Approx(0.0).margin(1e-12));
  CHECK(g.value(0b11) == Approx(-2.0).epsilon(1e-12));
  CHECK(check_submodular(g).ok);
  CHECK_THROWS_AS(contract(cut, IndexSet::full(3)), InvalidParams);
}

TEST_CASE("gaussian contraction matches the log-det quotient") {
  const SymPDMatrix a = example_matrix_a();
  const SetFunction g = contract(gaussian_entropy_fn(a), IndexSet({4}, 4));
  // g({1,2}) = ln(2*pi*e) + 1/2 ln(|A({1,2,4})| / |A({4})|), minors 22 and 5.
  CHECK(g.value(0b011) ==
        Approx(kLogTwoPiE + 0.5 * std::log(22.0 / 5.0)).epsilon(1e-12));
  CHECK(check_submodular(g).ok);
}

TEST_CASE("check_submodular accepts the built-ins and rejects |S|^2") {
  CHECK(check_submodular(modular_fn({1, -2, 3})).ok);
  CHECK(check_submodular(gaussian_entropy_fn(example_matrix_a())).ok);
  const SubmodularityCheck bad = check_submodular(cardinality_squared(3));
  REQUIRE_FALSE(bad.ok);
  // The witness must reproduce the violation.
  const SetFunction f = cardinality_squared(3);
  const std::uint64_t s = bad.witness_mask;
  const std::uint64_t i = std::uint64_t{1} << (bad.witness_i - 1);
  const std::uint64_t j = std::uint64_t{1} << (bad.witness_j - 1);
  const double viol =
      (f.value(s | i | j) + f.value(s)) - (f.value(s | i) + f.value(s | j));
  CHECK(viol == Approx(bad.max_violation));
  CHECK(viol > 0.0);
}

TEST_CASE("check_submodular agrees with the two-set definition") {
  GeneratorSpec spec;
  spec.kind = "facility";
  spec.seed = 11;
  spec.n = 5;
  const SetFunction f = random_instance(spec);
  CHECK(check_submodular(f).ok);
  CHECK(testsupport::worst_pairwise_violation(f) <= 1e-9);
}

TEST_CASE("check_submodular honors the ground cap") {
  CHECK_THROWS_AS(check_submodular(modular_fn(std::vector<double>(17, 1.0))),
                  GroundTooLarge);
}

TEST_CASE("chain rule holds for built-ins") {
  CHECK(check_chain_rule(modular_fn({1, 2, 3, 4})).ok);
  CHECK(check_chain_rule(modular_fn({1, 2, 3, 4})).chain_identity_error == 0.0);
  CHECK(check_chain_rule(gaussian_entropy_fn(example_matrix_a())).ok);
  const SetFunction cover =
      set_cover_fn({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
  CHECK(check_chain_rule(cover).ok);
  CHECK_FALSE(check_chain_rule(cardinality_squared(3)).ok);
}

TEST_CASE("han bound: trivial and worked cases") {
  const SetFunction g = gaussian_entropy_fn(example_matrix_a());
  const InequalityVerdict full = han_bound(g, 4);
  CHECK(full.slack == 0.0);
  CHECK(full.equality);

  const InequalityVerdict k2 = han_bound(g, 2);
  CHECK(det_transform(k2.bound, 4) == Approx(97.3183996396).epsilon(1e-9));
  CHECK(k2.holds);
  CHECK_FALSE(k2.equality);

  const SetFunction mod = modular_fn({0.5, 1.5, -0.25, 2.0});
  for (int k = 1; k <= 4; ++k) CHECK(han_bound(mod, k).equality);
  CHECK_THROWS_AS(han_bound(mod, 0), InvalidParams);
  CHECK_THROWS_AS(han_bound(mod, 5), InvalidParams);
}

TEST_CASE("strengthened han: chain, collapse, and worked value") {
  const SetFunction g = gaussian_entropy_fn(example_matrix_a());

  const StrengthenedHan worked = strengthened_han_bound(g, 2, 3);
  CHECK(det_transform(worked.inner, 4) == Approx(82.5832912883).epsilon(1e-9));
  CHECK(worked.lhs_vs_inner.holds);
  CHECK(worked.inner_vs_outer.holds);
  CHECK(det_transform(worked.lhs, 4) == Approx(74.0).epsilon(1e-9));

  // k = p: the first inequality is an identity.
  const StrengthenedHan kp = strengthened_han_bound(g, 3, 3);
  CHECK(kp.lhs_vs_inner.equality);
  CHECK(std::abs(kp.inner - kp.lhs) <= 1e-12 * std::max(1.0, std::abs(kp.lhs)));

  // p = n collapses to the plain Han bound, bit for bit.
  const StrengthenedHan pn = strengthened_han_bound(g, 2, 4);
  CHECK(pn.inner == pn.outer);
  CHECK(pn.outer == han_bound(g, 2).bound);

  CHECK_THROWS_AS(strengthened_han_bound(g, 3, 2), InvalidParams);
}

TEST_CASE("partition bounds and their collapses") {
  const SetFunction g = gaussian_entropy_fn(example_matrix_a());

  // Singleton partition coincides with Han at k = 1, bit for bit.
  CHECK(partition_bound(g, Partition::singletons(4)).bound ==
        han_bound(g, 1).bound);

  const InequalityVerdict whole = partition_bound(g, Partition::whole(4));
  CHECK(whole.slack == 0.0);
  CHECK(whole.equality);

  // {1,3},{2,4}: |A({1,3})| * |A({2,4})| = 7 * 14 = 98 by hand.
  const Partition p13({IndexSet({1, 3}, 4), IndexSet({2, 4}, 4)});
  CHECK(det_transform(partition_bound(g, p13).bound, 4) ==
        Approx(98.0).epsilon(1e-9));
}

TEST_CASE("strengthened partition: chain, collapse, and worked value") {
  const SetFunction g = gaussian_entropy_fn(example_matrix_a());
  const Partition p13({IndexSet({1, 3}, 4), IndexSet({2, 4}, 4)});

  const StrengthenedPartition worked = strengthened_partition_bound(g, 2, p13);
  CHECK(det_transform(worked.inner, 4) == Approx(81.5789473684).epsilon(1e-9));
  CHECK(worked.lhs_vs_inner.holds);
  CHECK(worked.inner_vs_outer.holds);

  const StrengthenedPartition pn = strengthened_partition_bound(g, 4, p13);
  CHECK(pn.inner == pn.outer);

  const StrengthenedPartition one =
      strengthened_partition_bound(g, 2, Partition::whole(4));
  CHECK(one.lhs_vs_inner.equality);
}

TEST_CASE("subset averages are monotone") {
  const std::vector<double> mod = subset_average_sequence(modular_fn({1, 2, 3, 4}), 4);
  for (std::size_t i = 1; i < mod.size(); ++i)
    CHECK(mod[i] == Approx(mod[i - 1]).margin(1e-12));

  const SetFunction g = gaussian_entropy_fn(example_matrix_a());
  const std::vector<double> ga = subset_average_sequence(g, 4);
  for (std::size_t i = 1; i < ga.size(); ++i) CHECK(ga[i] < ga[i - 1] - 1e-6);

  // 4-cycle cut: a = (2, 4/3, 2/3, 0) by direct enumeration.
  const SetFunction cyc =
      graph_cut_fn(4, {{1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {4, 1, 1.0}});
  const std::vector<double> ca = subset_average_sequence(cyc, 4);
  CHECK(ca[0] == Approx(2.0));
  CHECK(ca[1] == Approx(4.0 / 3.0));
  CHECK(ca[2] == Approx(2.0 / 3.0));
  CHECK(ca[3] == Approx(0.0).margin(1e-15));
  for (std::size_t i = 1; i < ca.size(); ++i)
    CHECK(ca[i] <= ca[i - 1] + 1e-12);
}

TEST_CASE("thm1 equality diagnostics: modular functions are tight everywhere") {
  const SetFunction mod = modular_fn({1.0, -0.5, 2.0, 0.75});
  for (int p = 1; p <= 4; ++p)
    for (int k = 1; k <= p; ++k) {
      const Thm1EqualityReport rep = check_thm1_equality(mod, k, p);
      CHECK(rep.contraction_modular.holds);
      CHECK(rep.cond_i.holds);
      CHECK(rep.cond_ii.holds);
      CHECK(rep.cond_iii.holds);
      CHECK(rep.inner_equality);
      CHECK(rep.outer_equality);
      CHECK(rep.inner_consistent);
      CHECK(rep.outer_consistent);
    }
}

TEST_CASE("thm1 equality diagnostics: separated gaussian is tight at k = 1") {
  // Block-diagonal: non-diagonal PD block on {1,2}, diagonal tail {3,4}.
  const SymPDMatrix k(4, {2, 1, 0, 0, 1, 3, 0, 0, 0, 0, 4, 0, 0, 0, 0, 5});
  const SetFunction g = gaussian_entropy_fn(k);
  const Thm1EqualityReport rep = check_thm1_equality(g, 1, 2);
  CHECK(rep.cond_i.holds);
  CHECK(rep.cond_ii.holds);
  CHECK(rep.cond_iii.holds);
  CHECK(rep.outer_equality);
  CHECK(rep.outer_consistent);
}

TEST_CASE("thm1 equality diagnostics: worked example has strict slack") {
  const SetFunction g = gaussian_entropy_fn(example_matrix_a());
  const Thm1EqualityReport rep = check_thm1_equality(g, 2, 3);
  CHECK_FALSE(rep.contraction_modular.holds);
  CHECK_FALSE(rep.cond_i.holds);
  CHECK(rep.inner_slack > 1e-3);   // 74 < 82.58 in the determinant domain
  CHECK(rep.outer_slack > 1e-3);   // 82.58 < 97.32
  CHECK(rep.inner_consistent);
  CHECK(rep.outer_consistent);
}

TEST_CASE("thm3 equality diagnostics") {
  const SetFunction mod = modular_fn({1.0, 2.0, 3.0, 4.0});
  const Partition parts({IndexSet({1, 3}, 4), IndexSet({2, 4}, 4)});
  const Thm3EqualityReport modrep = check_thm3_equality(mod, 2, parts);
  CHECK(modrep.conditional_modular.holds);
  CHECK(modrep.cond_i.holds);
  CHECK(modrep.cond_ii.holds);
  CHECK(modrep.inner_equality);
  CHECK(modrep.outer_equality);

  // Gaussian with independent blocks {1,2} and {3,4}; partition = blocks.
  const SymPDMatrix bd(4, {2, 1, 0, 0, 1, 3, 0, 0, 0, 0, 4, 1, 0, 0, 1, 5});
  const Partition blocks({IndexSet({1, 2}, 4), IndexSet({3, 4}, 4)});
  const Thm3EqualityReport bdrep =
      check_thm3_equality(gaussian_entropy_fn(bd), 2, blocks);
  CHECK(bdrep.cond_i.holds);
  CHECK(bdrep.cond_ii.holds);
  CHECK(bdrep.outer_equality);
  CHECK(bdrep.outer_consistent);

  // Worked example parameters: strict slacks, conditions violated.
  const Thm3EqualityReport arep =
      check_thm3_equality(gaussian_entropy_fn(example_matrix_a()), 2, parts);
  CHECK(arep.inner_slack > 1e-3);
  CHECK(arep.outer_slack > 1e-3);
  CHECK(arep.inner_consistent);
  CHECK(arep.outer_consistent);
}

TEST_CASE("relabel permutes the ground set") {
  const SymPDMatrix a = example_matrix_a();
  const std::vector<int> perm{2, 4, 1, 3};
  const SetFunction direct = gaussian_entropy_fn(permute(a, perm));
  const SetFunction relabeled = relabel(gaussian_entropy_fn(a), perm);
  for (std::uint64_t mask = 0; mask < 16; ++mask)
    CHECK(relabeled.value(mask) == Approx(direct.value(mask)).epsilon(1e-12));
  CHECK(relabeled.index_map() == perm);
}

TEST_CASE("move_to_suffix prepares conditioning on arbitrary sets") {
  const SetFunction g = gaussian_entropy_fn(example_matrix_a());
  const RelabeledFunction r = move_to_suffix(g, IndexSet({2}, 4));
  CHECK(r.prefix_len == 3);
  CHECK(r.permutation == std::vector<int>{1, 3, 4, 2});
  // Conditioning on {2} via the suffix equals the direct conditional values.
  const double inner = strengthened_han_bound(r.fn, 1, 3).inner;
  double direct = g.value(0b0010);
  for (int i : {1, 3, 4})
    direct += conditional_value(g, IndexSet({i}, 4), IndexSet({2}, 4));
  CHECK(inner == Approx(direct).epsilon(1e-12));
}

TEST_CASE("concurrent evaluations equal sequential ones") {
  const SetFunction g = gaussian_entropy_fn(example_matrix_a());
  std::vector<double> sequential(16);
  for (std::uint64_t m = 0; m < 16; ++m) sequential[m] = g.value(m);

  const SetFunction fresh = gaussian_entropy_fn(example_matrix_a());
  std::vector<std::vector<double>> results(4, std::vector<double>(16));
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([&, t] {
      for (std::uint64_t m = 0; m < 16; ++m) results[t][m] = fresh.value(m);
    });
  for (auto& w : workers) w.join();
  for (int t = 0; t < 4; ++t) CHECK(results[t] == sequential);
}

TEST_CASE("chains hold for a ten-element instance at every (k, p)") {
  GeneratorSpec spec;
  spec.kind = "facility";
  spec.seed = 404;
  spec.n = 10;
  const SetFunction f = random_instance(spec);
  for (int p = 1; p <= 10; ++p) {
    for (int k = 1; k <= p; ++k) {
      const StrengthenedHan sh = strengthened_han_bound(f, k, p);
      CHECK(sh.lhs_vs_inner.holds);
      CHECK(sh.inner_vs_outer.holds);
    }
    const std::vector<double> avg = subset_average_sequence(f, p);
    for (std::size_t i = 1; i < avg.size(); ++i)
      CHECK(avg[i] <= avg[i - 1] + 1e-9 * std::max(1.0, std::abs(avg[i - 1])));
  }
}

TEST_CASE("theorem chains hold across every built-in family") {
  std::vector<SetFunction> instances;
  instances.push_back(gaussian_entropy_fn(example_matrix_a()));
  instances.push_back(triangle_cut());
  instances.push_back(set_cover_fn({1, 2, 3, 1.5}, {{1, 2}, {2, 3}, {3, 4}}));
  instances.push_back(matroid_rank_fn(5, 3));
  instances.push_back(facility_location_fn(
      {{1, 0.5, 0.2}, {0.5, 1, 0.7}, {0.2, 0.7, 1}}));
  instances.push_back(modular_fn({2, -1, 0.5, 3}));
  instances.push_back(discrete_entropy_fn({2, 2, 2},
      {0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125}));
  for (const SetFunction& f : instances) {
    const int n = f.ground_n();
    for (int p = 1; p <= n; ++p)
      for (int k = 1; k <= p; ++k) {
        const StrengthenedHan sh = strengthened_han_bound(f, k, p);
        CHECK(sh.lhs_vs_inner.holds);
        CHECK(sh.inner_vs_outer.holds);
      }
    for_each_partition_rgs(n, [&](const std::vector<int>& rgs) {
      const Partition part = Partition::from_rgs(rgs);
      for (int p = 1; p <= n; ++p) {
        const StrengthenedPartition sp = strengthened_partition_bound(f, p, part);
        CHECK(sp.lhs_vs_inner.holds);
        CHECK(sp.inner_vs_outer.holds);
      }
    });
  }
}
