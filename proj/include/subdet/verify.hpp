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

#ifndef SUBDET_VERIFY_HPP_
#define SUBDET_VERIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "subdet/combinatorics.hpp"
#include "subdet/detineq.hpp"
#include "subdet/errors.hpp"
#include "subdet/linalg.hpp"
#include "subdet/sets.hpp"
#include "subdet/submodular.hpp"

namespace subdet {

// splitmix64 (Vigna): scrambles arbitrary seeds into well-mixed state.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// xorshift64* with shifts (12, 25, 27) and multiplier 0x2545F4914F6CDD1D
/// (Vigna). Explicit constants and no platform dependence, so generated
/// suites reproduce bit-for-bit everywhere.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 0x9e3779b97f4a7c15ULL;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

/// Deterministic instance recipe: the same spec always regenerates the same
/// instance, and its to_string() is the minimal reproduction handle.
struct GeneratorSpec {
  std::uint64_t seed = 0;
  std::string kind = "spd";  // spd|coverage|graph_cut|facility|discrete_pmf|matroid|gaussian|modular
  int n = 4;
  int universe = 8;      // coverage: universe size
  int alphabet = 2;      // discrete_pmf: per-variable alphabet size
  double density = 0.5;  // coverage membership / graph edge probability

  std::string to_string() const {
    return "kind=" + kind + " seed=" + std::to_string(seed) +
           " n=" + std::to_string(n);
  }
};

/// B·Bᵀ + 0.1·I with B entries drawn row-major from a fixed-seed
/// uniform(−1,1) stream. Always positive definite.
inline SymPDMatrix random_spd(const GeneratorSpec& spec) {
  const int n = spec.n;
  if (n < 1) throw InvalidParams("random_spd needs n >= 1");
  XorShift64Star rng(spec.seed);
  Matrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b.at(i, j) = rng.uniform(-1.0, 1.0);
  std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += b.at(i, k) * b.at(j, k);
      e[static_cast<std::size_t>(i) * n + j] = s + (i == j ? 0.1 : 0.0);
    }
  return SymPDMatrix(n, std::move(e));
}

/// Seeded instance from one of the submodular families. Every family is
/// submodular by construction; the suites re-check that exhaustively.
inline SetFunction random_instance(const GeneratorSpec& spec) {
  const int n = spec.n;
  if (n < 1) throw InvalidParams("random_instance needs n >= 1");
  XorShift64Star rng(splitmix64(spec.seed) ^ 0xa5a5a5a5a5a5a5a5ULL);
  if (spec.kind == "coverage") {
    std::vector<double> weights(spec.universe);
    for (double& w : weights) w = rng.uniform(0.0, 2.0);
    std::vector<std::vector<int>> subsets(n);
    for (int i = 0; i < n; ++i)
      for (int u = 1; u <= spec.universe; ++u)
        if (rng.uniform01() < spec.density) subsets[i].push_back(u);
    return set_cover_fn(weights, subsets);
  }
  if (spec.kind == "graph_cut") {
    std::vector<std::tuple<int, int, double>> edges;
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (rng.uniform01() < spec.density)
          edges.emplace_back(u, v, rng.uniform(0.0, 1.0));
    return graph_cut_fn(n, edges);
  }
  if (spec.kind == "facility") {
    std::vector<std::vector<double>> sim(n, std::vector<double>(n));
    for (auto& row : sim)
      for (double& s : row) s = rng.uniform(0.0, 1.0);
    return facility_location_fn(sim);
  }
  if (spec.kind == "discrete_pmf") {
    const std::vector<int> sizes(n, spec.alphabet);
    std::uint64_t cells = 1;
    for (int a : sizes) cells *= static_cast<std::uint64_t>(a);
    std::vector<double> pmf(cells);
    double total = 0.0;
    for (double& q : pmf) {
      q = rng.uniform01() + 1e-6;
      total += q;
    }
    double acc = 0.0;
    std::size_t largest = 0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      pmf[i] /= total;
      acc += pmf[i];
      if (pmf[i] > pmf[largest]) largest = i;
    }
    pmf[largest] += 1.0 - acc;  // absorb normalization rounding
    return discrete_entropy_fn(sizes, pmf);
  }
  if (spec.kind == "matroid") {
    if (rng.next() & 1) return matroid_rank_fn(n, rng.uniform_int(0, n));
    const auto rgs = sample_partition_rgs(n, [&] { return rng.uniform01(); });
    const Partition blocks = Partition::from_rgs(rgs);
    std::vector<int> caps(blocks.size());
    for (std::size_t j = 0; j < caps.size(); ++j)
      caps[j] = rng.uniform_int(0, blocks.blocks()[j].size());
    return matroid_rank_fn(blocks, caps);
  }
  if (spec.kind == "gaussian") {
    GeneratorSpec inner = spec;
    inner.kind = "spd";
    return gaussian_entropy_fn(random_spd(inner));
  }
  if (spec.kind == "modular") {
    std::vector<double> w(n);
    for (double& x : w) x = rng.uniform(-1.0, 1.0);
    return modular_fn(w);
  }
  throw InvalidParams("unknown instance kind: " + spec.kind);
}

struct SuiteFailure {
  std::string spec;
  std::string params;
  double slack = 0.0;
  std::string witness;
};

/// Aggregate outcome of a property suite; failures empty ⇔ the suite passes.
/// max_negative_slack is the magnitude of the worst negative slack seen
/// across all inequality checks, whether or not it breached tolerance.
struct SuiteResult {
  int trials = 0;
  long long checks = 0;
  std::vector<SuiteFailure> failures;
  double max_negative_slack = 0.0;

  bool passed() const { return failures.empty(); }

  void note_slack(double slack) {
    ++checks;
    if (slack < 0.0)
      max_negative_slack = std::max(max_negative_slack, -slack);
  }

  void fail(std::string spec, std::string params, double slack,
            std::string witness) {
    failures.push_back(
        {std::move(spec), std::move(params), slack, std::move(witness)});
  }

  void sort_failures() {
    std::stable_sort(failures.begin(), failures.end(),
                     [](const SuiteFailure& a, const SuiteFailure& b) {
                       return std::tie(a.spec, a.params) <
                              std::tie(b.spec, b.params);
                     });
  }
};

namespace detail {

inline std::vector<Partition> suite_partitions(int n, XorShift64Star& rng) {
  std::vector<Partition> parts;
  if (n <= 5) {
    for_each_partition_rgs(n, [&](const std::vector<int>& rgs) {
      parts.push_back(Partition::from_rgs(rgs));
    });
  } else {
    for (int s = 0; s < 20; ++s)
      parts.push_back(Partition::from_rgs(
          sample_partition_rgs(n, [&] { return rng.uniform01(); })));
  }
  return parts;
}

}  // namespace detail

/// Runs every Han-type and partition-type chain on one instance and records
/// violations beyond −tol·scale. Used by the suite runner and directly by
/// tests that feed deliberately corrupted functions.
inline void check_submodular_instance(const SetFunction& f,
                                      const std::string& spec_label,
                                      SuiteResult& out, XorShift64Star& rng,
                                      double tol = kDefaultTol) {
  const int n = f.ground_n();

  const SubmodularityCheck sub = check_submodular(f);
  out.note_slack(-sub.max_violation);
  if (!sub.ok)
    out.fail(spec_label, "check_submodular", -sub.max_violation,
             IndexSet::from_mask(sub.witness_mask, n).to_string() + " i=" +
                 std::to_string(sub.witness_i) + " j=" +
                 std::to_string(sub.witness_j));

  if (n <= 10) {  // the disjoint-triple scan is 4^n
    const ChainRuleCheck chain = check_chain_rule(f);
    out.note_slack(-chain.max_conditioning_violation);
    if (!chain.ok)
      out.fail(spec_label, "check_chain_rule",
               -std::max(chain.chain_identity_error,
                         chain.max_conditioning_violation),
               "");
  }

  if (n >= 2) {  // contraction preserves submodularity
    std::uint64_t cmask = rng.next() & low_bits(n);
    if (cmask == low_bits(n)) cmask &= cmask - 1;
    if (cmask != 0) {
      const IndexSet c = IndexSet::from_mask(cmask, n);
      const SubmodularityCheck sc = check_submodular(contract(f, c));
      out.note_slack(-sc.max_violation);
      if (!sc.ok)
        out.fail(spec_label, "contract preserves submodularity",
                 -sc.max_violation, c.to_string());
    }
  }

  for (int p = 1; p <= n; ++p) {
    for (int k = 1; k <= p; ++k) {
      const StrengthenedHan sh = strengthened_han_bound(f, k, p, tol);
      out.note_slack(sh.lhs_vs_inner.slack);
      out.note_slack(sh.inner_vs_outer.slack);
      const std::string params = "k=" + std::to_string(k) + " p=" + std::to_string(p);
      if (!sh.lhs_vs_inner.holds)
        out.fail(spec_label, "strengthened-han lhs<=inner " + params,
                 sh.lhs_vs_inner.slack, "");
      if (!sh.inner_vs_outer.holds)
        out.fail(spec_label, "strengthened-han inner<=outer " + params,
                 sh.inner_vs_outer.slack, "");
      const Thm1EqualityReport eq = check_thm1_equality(f, k, p);
      ++out.checks;
      if (!eq.inner_consistent)
        out.fail(spec_label, "thm1 equality soundness (inner) " + params,
                 eq.inner_slack, eq.contraction_modular.name);
      if (!eq.outer_consistent)
        out.fail(spec_label, "thm1 equality soundness (outer) " + params,
                 eq.outer_slack, "(i)-(iii) held but slack observed");
    }
  }

  for (int p = 1; p <= n; ++p) {
    const std::vector<double> avg = subset_average_sequence(f, p);
    double scale = 1.0;
    for (double a : avg) scale = std::max(scale, std::abs(a));
    for (std::size_t i = 1; i < avg.size(); ++i) {
      out.note_slack(avg[i - 1] - avg[i]);
      if (avg[i] - avg[i - 1] > tol * scale)
        out.fail(spec_label, "subset-average monotone p=" + std::to_string(p),
                 avg[i - 1] - avg[i], "k=" + std::to_string(i + 1));
    }
  }

  if (n <= 7) {
    for (const Partition& part : detail::suite_partitions(n, rng)) {
      for (int p = 1; p <= n; ++p) {
        const StrengthenedPartition sp =
            strengthened_partition_bound(f, p, part, tol);
        out.note_slack(sp.lhs_vs_inner.slack);
        out.note_slack(sp.inner_vs_outer.slack);
        const std::string params =
            "p=" + std::to_string(p) + " partition=" + part.to_string();
        if (!sp.lhs_vs_inner.holds)
          out.fail(spec_label, "strengthened-partition lhs<=inner " + params,
                   sp.lhs_vs_inner.slack, "");
        if (!sp.inner_vs_outer.holds)
          out.fail(spec_label, "strengthened-partition inner<=outer " + params,
                   sp.inner_vs_outer.slack, "");
        const Thm3EqualityReport eq = check_thm3_equality(f, p, part);
        ++out.checks;
        if (!eq.inner_consistent)
          out.fail(spec_label, "thm3 equality soundness (inner) " + params,
                   eq.inner_slack, "");
        if (!eq.outer_consistent)
          out.fail(spec_label, "thm3 equality soundness (outer) " + params,
                   eq.outer_slack, "");
      }
    }
  }
}

/// Runs the determinantal chains, Schur-route equivalence, interlacing,
/// strictness, diagnostics soundness, and the Gaussian cross-module
/// consistency on one SPD matrix.
inline void check_determinant_instance(const SymPDMatrix& k_mat,
                                       const std::string& spec_label,
                                       SuiteResult& out, XorShift64Star& rng,
                                       double tol = kDefaultTol) {
  const int n = k_mat.size();
  const double log_det_k = log_det(k_mat);
  const bool diag = is_diagonal(k_mat);
  const SetFunction gauss = gaussian_entropy_fn(k_mat);
  const double c = static_cast<double>(n) * kLogTwoPiE;
  auto transform = [c](double sub_bound) { return 2.0 * sub_bound - c; };
  auto close = [tol](double a, double b) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
  };

  for (int p = 1; p <= n; ++p) {
    for (int k = 1; k <= p; ++k) {
      const std::string params = "k=" + std::to_string(k) + " p=" + std::to_string(p);
      const StrongSzasz ss = strong_szasz_bound(k_mat, k, p, tol);
      out.note_slack(ss.lhs_vs_ss1.slack);
      out.note_slack(ss.ss1_vs_ss2.slack);
      if (!ss.lhs_vs_ss1.holds)
        out.fail(spec_label, "logdet<=SS1 " + params, ss.lhs_vs_ss1.slack, "");
      if (!ss.ss1_vs_ss2.holds)
        out.fail(spec_label, "SS1<=SS2 " + params, ss.ss1_vs_ss2.slack, "");

      if (p < n) {
        const double route = schur_route_bound(k_mat, k, p);
        ++out.checks;
        if (std::abs(route - ss.ss1) >
            1e-9 * std::max(1.0, std::abs(ss.ss1)))
          out.fail(spec_label, "schur-route agreement " + params,
                   route - ss.ss1, "");
      }
      if (!diag && k >= 2 && p < n) {
        ++out.checks;
        if (!(ss.ss2 - ss.ss1 > kStrictTol * std::max(1.0, std::abs(ss.ss2))))
          out.fail(spec_label, "SS2-SS1 strictness " + params,
                   ss.ss2 - ss.ss1, "non-diagonal matrix");
      }

      // Equality-diagnostic soundness.
      const auto diags = strong_szasz_equality_diagnostics(k_mat, k, p, tol);
      const double scale1 = std::max(1.0, std::abs(ss.ss1));
      const double scale2 = std::max(1.0, std::abs(ss.ss2));
      bool ss2_conditions = true;
      for (const auto& d : diags) {
        if (d.condition_name.rfind("SS1", 0) == 0 && d.holds) {
          ++out.checks;
          if (std::abs(ss.ss1 - log_det_k) > tol * scale1)
            out.fail(spec_label, "SS1 diagnostic soundness " + params,
                     ss.ss1 - log_det_k, d.condition_name);
        }
        if (d.condition_name.rfind("SS2", 0) == 0) ss2_conditions &= d.holds;
      }
      if (ss2_conditions) {
        ++out.checks;
        if (std::abs(ss.ss2 - ss.ss1) > tol * scale2)
          out.fail(spec_label, "SS2 diagnostic soundness " + params,
                   ss.ss2 - ss.ss1, "");
      }

      // Cross-module Gaussian consistency.
      const StrengthenedHan sh = strengthened_han_bound(gauss, k, p, tol);
      ++out.checks;
      if (!close(transform(sh.inner), ss.ss1) ||
          !close(transform(sh.outer), ss.ss2))
        out.fail(spec_label, "gaussian consistency (szasz) " + params,
                 transform(sh.inner) - ss.ss1, "");
    }
    const double kf = kyfan_bound(k_mat, p);
    const double ss1_k1 = strong_szasz_bound(k_mat, 1, p, tol).ss1;
    ++out.checks;
    if (kf != ss1_k1)
      out.fail(spec_label, "kyfan == SS1(k=1) p=" + std::to_string(p),
               kf - ss1_k1, "");
  }

  for (int p = 1; p <= n; ++p)
    for (int l = 0; l <= n - p; ++l)
      for (int h = 1; h <= p; ++h)
        for (int k = 1; k <= h; ++k) {
          const EigenProductBound eb = eigen_product_bound(k_mat, h, p, l, k, tol);
          out.note_slack(eb.actual_vs_bound.slack);
          if (!eb.actual_vs_bound.holds)
            out.fail(spec_label,
                     "eigen-product h=" + std::to_string(h) + " p=" +
                         std::to_string(p) + " l=" + std::to_string(l) +
                         " k=" + std::to_string(k),
                     eb.actual_vs_bound.slack, "");
        }

  if (n >= 2) {
    for (int drop = 1; drop <= n; ++drop) {
      IndexSet s = IndexSet::full(n).set_difference(IndexSet({drop}, n));
      ++out.checks;
      if (!interlacing_check(k_mat, s, tol))
        out.fail(spec_label, "interlacing drop=" + std::to_string(drop), 0.0,
                 s.to_string());
    }
  }

  for (const Partition& part : detail::suite_partitions(n, rng)) {
    for (int p = 1; p <= n; ++p) {
      const StrongFischer sf = strong_fischer_bound(k_mat, p, part, tol);
      out.note_slack(sf.lhs_vs_sf1.slack);
      out.note_slack(sf.sf1_vs_sf2.slack);
      const std::string params =
          "p=" + std::to_string(p) + " partition=" + part.to_string();
      if (!sf.lhs_vs_sf1.holds)
        out.fail(spec_label, "logdet<=SF1 " + params, sf.lhs_vs_sf1.slack, "");
      if (!sf.sf1_vs_sf2.holds)
        out.fail(spec_label, "SF1<=SF2 " + params, sf.sf1_vs_sf2.slack, "");

      const StrengthenedPartition sp =
          strengthened_partition_bound(gauss, p, part, tol);
      ++out.checks;
      if (!close(transform(sp.inner), sf.sf1) ||
          !close(transform(sp.outer), sf.sf2))
        out.fail(spec_label, "gaussian consistency (fischer) " + params,
                 transform(sp.inner) - sf.sf1, "");
    }
  }

  // Hadamard against the k = 1 bounds.
  const double hb = hadamard_bound(k_mat);
  ++out.checks;
  if (szasz_bound(k_mat, 1) != hb)
    out.fail(spec_label, "szasz(k=1) == hadamard", szasz_bound(k_mat, 1) - hb,
             "");
  ++out.checks;
  const InequalityVerdict han1 = han_bound(gauss, 1, tol);
  if (!close(transform(han1.bound), hb))
    out.fail(spec_label, "gaussian consistency (hadamard)",
             transform(han1.bound) - hb, "");
}

/// Random-instance suite for the submodular chains. trials instances cycle
/// through the families; sizes are drawn in [1:max_n]. Zero failures is the
/// release gate; the theorems guarantee every check.
inline SuiteResult run_submodular_suite(int trials, int max_n,
                                        std::uint64_t seed = 1) {
  if (max_n < 1 || max_n > kDefaultCheckCap)
    throw InvalidParams("max_n must be in [1," +
                        std::to_string(kDefaultCheckCap) + "]");
  static const char* kFamilies[] = {"coverage",     "graph_cut", "facility",
                                    "discrete_pmf", "matroid",   "gaussian"};
  SuiteResult out;
  out.trials = std::max(trials, 0);
  for (int t = 0; t < trials; ++t) {
    GeneratorSpec spec;
    spec.kind = kFamilies[t % 6];
    spec.seed = splitmix64(seed) + static_cast<std::uint64_t>(t);
    XorShift64Star rng(spec.seed ^ 0x517cc1b727220a95ULL);
    spec.n = rng.uniform_int(1, max_n);
    spec.universe = rng.uniform_int(1, 2 * max_n);
    const SetFunction f = random_instance(spec);
    check_submodular_instance(f, spec.to_string(), out, rng);
  }
  out.sort_failures();
  return out;
}

/// Random-matrix suite for the determinantal chains.
inline SuiteResult run_determinant_suite(int trials, int max_n,
                                         std::uint64_t seed = 1) {
  if (max_n < 1 || max_n > 12)
    throw InvalidParams("max_n must be in [1,12]");
  SuiteResult out;
  out.trials = std::max(trials, 0);
  for (int t = 0; t < trials; ++t) {
    GeneratorSpec spec;
    spec.kind = "spd";
    spec.seed = splitmix64(seed) + static_cast<std::uint64_t>(t);
    XorShift64Star rng(spec.seed ^ 0x2b67a4d1c38e5f09ULL);
    spec.n = rng.uniform_int(1, max_n);
    const SymPDMatrix k = random_spd(spec);
    check_determinant_instance(k, spec.to_string(), out, rng);
  }
  out.sort_failures();
  return out;
}

}  // namespace subdet

#endif  // SUBDET_VERIFY_HPP_
