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

#ifndef SUBDET_DETINEQ_HPP_
#define SUBDET_DETINEQ_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subdet/combinatorics.hpp"
#include "subdet/errors.hpp"
#include "subdet/linalg.hpp"
#include "subdet/sets.hpp"
#include "subdet/verdict.hpp"

namespace subdet {

// All determinant quantities are carried as natural logs end to end; raw
// determinants are exponentiated only for display.

namespace detail {

// (1 / C(m−1,k−1)) Σ_{S ⊆ universe, |S| = k} [ln|K(S ∪ cond)| − ln|K(cond)|]
// with m = |universe|, subsets in lexicographic bitmask order. Backs the
// plain and the conditionally strengthened bounds alike, so the p = n and
// k = 1 collapses are arithmetically exact.
inline double averaged_ksubset_log_minor(const SymPDMatrix& k_mat,
                                         std::uint64_t universe, int k,
                                         std::uint64_t cond) {
  const int m = std::popcount(universe);
  if (k < 1 || k > m) throw InvalidParams("subset size k outside [1:|universe|]");
  guard_subset_count(m, k);
  int members[64];
  int t = 0;
  std::uint64_t rest = universe;
  while (rest) {
    members[t++] = std::countr_zero(rest);
    rest &= rest - 1;
  }
  const double log_cond = log_minor_mask(k_mat, cond);
  double sum = 0.0;
  for_each_subset_of_size(m, k, [&](std::uint64_t local) {
    std::uint64_t s = 0;
    std::uint64_t r = local;
    while (r) {
      s |= std::uint64_t{1} << members[std::countr_zero(r)];
      r &= r - 1;
    }
    sum += log_minor_mask(k_mat, s | cond) - log_cond;
  });
  return sum / static_cast<double>(binomial(m - 1, k - 1));
}

}  // namespace detail

/// Hadamard: ln Π K_ii, an upper bound on ln|K| with equality iff K is
/// diagonal.
inline double hadamard_bound(const SymPDMatrix& k) {
  double s = 0.0;
  for (int i = 0; i < k.size(); ++i) {
    const double d = k(i, i);
    if (!(d > 0.0)) throw NotPositiveDefinite("nonpositive diagonal entry");
    s += std::log(d);
  }
  return s;
}

/// Szász: (1/C(n−1,k−1)) Σ_{|S|=k} ln|K(S)|. Coincides with Hadamard at
/// k = 1 and with ln|K| at k = n.
inline double szasz_bound(const SymPDMatrix& k_mat, int k) {
  const int n = k_mat.size();
  if (k < 1 || k > n) throw InvalidParams("szasz_bound: k outside [1:n]");
  return detail::averaged_ksubset_log_minor(k_mat, low_bits(n), k, 0);
}

/// Fischer: Σ_{S ∈ P} ln|K(S)|, blocks in partition order.
inline double fischer_bound(const SymPDMatrix& k, const Partition& part) {
  if (part.ground_n() != k.size())
    throw InvalidPartition("partition ground does not match matrix dimension");
  double s = 0.0;
  for (const IndexSet& b : part.blocks())
    s += detail::log_minor_mask(k, b.mask());
  return s;
}

/// Ky Fan: ln|K(Q)| + Σ_{i=1..p} (ln|K({i} ∪ Q)| − ln|K(Q)|) with
/// Q = [p+1:n]. Same arithmetic path as the strengthened Szász bound at
/// k = 1, so the two agree bit for bit.
inline double kyfan_bound(const SymPDMatrix& k_mat, int p) {
  const int n = k_mat.size();
  if (p < 1 || p > n) throw InvalidParams("kyfan_bound: p outside [1:n]");
  const std::uint64_t prefix = low_bits(p);
  const std::uint64_t cond = low_bits(n) & ~prefix;
  return detail::log_minor_mask(k_mat, cond) +
         detail::averaged_ksubset_log_minor(k_mat, prefix, 1, cond);
}

/// The strengthened Szász chain (log domain):
///   ln|K| <= SS1 <= SS2,
/// where SS1 conditions the k-minor average of P = [1:p] on P^c and SS2 is
/// the plain Szász bound. At k = 1, SS1 is Ky Fan's bound.
struct StrongSzasz {
  int k = 0;
  int p = 0;
  double log_det = 0.0;
  double ss1 = 0.0;
  double ss2 = 0.0;
  InequalityVerdict lhs_vs_ss1;
  InequalityVerdict ss1_vs_ss2;
};

inline StrongSzasz strong_szasz_bound(const SymPDMatrix& k_mat, int k, int p,
                                      double tol = kDefaultTol) {
  const int n = k_mat.size();
  if (k < 1 || p < 1 || p > n || k > p)
    throw InvalidParams("strong_szasz_bound needs 1 <= k <= p <= n");
  const std::uint64_t full = low_bits(n);
  const std::uint64_t prefix = low_bits(p);
  const std::uint64_t cond = full & ~prefix;
  StrongSzasz out;
  out.k = k;
  out.p = p;
  out.log_det = detail::log_minor_mask(k_mat, full);
  out.ss1 = detail::log_minor_mask(k_mat, cond) +
            detail::averaged_ksubset_log_minor(k_mat, prefix, k, cond);
  out.ss2 = detail::averaged_ksubset_log_minor(k_mat, full, k, 0);
  out.lhs_vs_ss1 = make_verdict(out.log_det, out.ss1, tol);
  out.ss1_vs_ss2 = make_verdict(out.ss1, out.ss2, tol);
  return out;
}

/// Strengthened Szász with an arbitrary (non-prefix) conditioning split:
/// the matrix is permuted so that P occupies the prefix, and the permutation
/// used (new position -> original index, 1-based) is returned.
struct SubsetStrongSzasz {
  StrongSzasz bounds;
  std::vector<int> permutation;
};

inline SubsetStrongSzasz strong_szasz_bound_on(const SymPDMatrix& k_mat, int k,
                                               const IndexSet& p_set,
                                               double tol = kDefaultTol) {
  if (p_set.ground_n() != k_mat.size())
    throw IndexOutOfRange("index set ground does not match matrix dimension");
  if (p_set.empty()) throw InvalidParams("P must be nonempty");
  std::vector<int> perm = p_set.indices();
  const IndexSet rest = p_set.complement();
  for (int i : rest.indices()) perm.push_back(i);
  SubsetStrongSzasz out{
      strong_szasz_bound(permute(k_mat, perm), k, p_set.size(), tol), perm};
  return out;
}

/// The strengthened Fischer chain (log domain):
///   ln|K| <= SF1 <= SF2,
/// where SF1 conditions the induced partition P' of [1:p] on P^c and SF2 is
/// the plain Fischer bound.
struct StrongFischer {
  int p = 0;
  double log_det = 0.0;
  double sf1 = 0.0;
  double sf2 = 0.0;
  InequalityVerdict lhs_vs_sf1;
  InequalityVerdict sf1_vs_sf2;
};

inline StrongFischer strong_fischer_bound(const SymPDMatrix& k_mat, int p,
                                          const Partition& part,
                                          double tol = kDefaultTol) {
  const int n = k_mat.size();
  if (part.ground_n() != n)
    throw InvalidPartition("partition ground does not match matrix dimension");
  if (p < 1 || p > n) throw InvalidParams("prefix length outside [1:n]");
  const std::uint64_t full = low_bits(n);
  const std::uint64_t cond = full & ~low_bits(p);
  const double log_cond = detail::log_minor_mask(k_mat, cond);
  StrongFischer out;
  out.p = p;
  out.log_det = detail::log_minor_mask(k_mat, full);
  double sum = 0.0;
  for (const IndexSet& b : induced_prefix_blocks(part, p))
    sum += detail::log_minor_mask(k_mat, b.mask() | cond) - log_cond;
  out.sf1 = log_cond + sum;
  out.sf2 = fischer_bound(k_mat, part);
  out.lhs_vs_sf1 = make_verdict(out.log_det, out.sf1, tol);
  out.sf1_vs_sf2 = make_verdict(out.sf1, out.sf2, tol);
  return out;
}

/// Log-domain upper bound on λ_1 ··· λ_{h+ℓ} (ascending eigenvalues):
///   ln|K(Q_ℓ)| + (1/C(h−1,k−1)) Σ_{S ⊆ [1:h], |S|=k} (ln|K(S∪P^c)| − ln|K(P^c)|)
/// with Q_ℓ = [p+1:p+ℓ], Q_0 = ∅ and |K(∅)| = 1. Recovers Ky Fan's
/// eigenvalue inequality at k = 1.
struct EigenProductBound {
  int h = 0, p = 0, l = 0, k = 0;
  double log_bound = 0.0;
  double log_actual = 0.0;  // Σ_{i <= h+ℓ} ln λ_i
  InequalityVerdict actual_vs_bound;
};

inline EigenProductBound eigen_product_bound(const SymPDMatrix& k_mat, int h,
                                             int p, int l, int k,
                                             double tol = kDefaultTol) {
  const int n = k_mat.size();
  if (!(1 <= k && k <= h && h <= p && p <= n))
    throw InvalidParams("eigen_product_bound needs 1 <= k <= h <= p <= n");
  if (l < 0 || l > n - p)
    throw InvalidParams("eigen_product_bound needs 0 <= l <= n-p");
  const std::uint64_t full = low_bits(n);
  const std::uint64_t pc = full & ~low_bits(p);
  const std::uint64_t ql = pc & low_bits(p + l);
  EigenProductBound out;
  out.h = h;
  out.p = p;
  out.l = l;
  out.k = k;
  out.log_bound = detail::log_minor_mask(k_mat, ql) +
                  detail::averaged_ksubset_log_minor(k_mat, low_bits(h), k, pc);
  const EigenSpectrum spec = eigenvalues_sorted(k_mat);
  double s = 0.0;
  for (int i = 0; i < h + l; ++i) s += std::log(spec.values[i]);
  out.log_actual = s;
  out.actual_vs_bound = make_verdict(out.log_actual, out.log_bound, tol);
  return out;
}

/// Appendix-style alternative route to SS1: Szász applied to the Schur
/// complement of K(P^c) in K. Must agree with strong_szasz_bound's SS1
/// within 1e-9 relative; the two are independent computation paths.
inline double schur_route_bound(const SymPDMatrix& k_mat, int k, int p) {
  const int n = k_mat.size();
  if (k < 1 || p < 1 || k > p || p >= n)
    throw InvalidParams("schur_route_bound needs 1 <= k <= p < n");
  const IndexSet p_set = IndexSet::range(1, p, n);
  const SymPDMatrix m = schur_complement(k_mat, p_set);
  const double log_pc =
      detail::log_minor_mask(k_mat, low_bits(n) & ~low_bits(p));
  return log_pc + szasz_bound(m, k);
}

/// One testable matrix condition characterizing tightness of a bound.
struct EqualityDiagnostic {
  std::string condition_name;
  bool holds = true;
  double max_violation = 0.0;
  std::string witness;  // offending entry or block when holds is false
};

namespace detail {

inline double entry_scale(const SymPDMatrix& k) {
  double m = 0.0;
  for (double v : k.entries()) m = std::max(m, std::abs(v));
  return std::max(1.0, m);
}

inline EqualityDiagnostic diagonal_diagnostic(const SymPDMatrix& m,
                                              std::string name, double tol) {
  EqualityDiagnostic d;
  d.condition_name = std::move(name);
  for (int i = 0; i < m.size(); ++i)
    for (int j = i + 1; j < m.size(); ++j)
      if (std::abs(m(i, j)) > d.max_violation) {
        d.max_violation = std::abs(m(i, j));
        d.witness = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      }
  d.holds = d.max_violation <= tol;
  return d;
}

inline EqualityDiagnostic block_zero_diagnostic(const SymPDMatrix& k,
                                                const IndexSet& s,
                                                const IndexSet& t,
                                                std::string name, double tol) {
  EqualityDiagnostic d;
  d.condition_name = std::move(name);
  const Matrix b = rect_submatrix(k, s, t);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j)
      if (std::abs(b.at(i, j)) > d.max_violation) {
        d.max_violation = std::abs(b.at(i, j));
        d.witness = "(" + std::to_string(s.indices()[i]) + "," +
                    std::to_string(t.indices()[j]) + ")";
      }
  d.holds = d.max_violation <= tol;
  return d;
}

}  // namespace detail

/// Conditions under which the strengthened Szász chain is tight:
///  - SS1 (k < p): the Schur complement of K(P^c) in K is diagonal;
///  - SS2 (k = 1, p < n): K(P,P^c) = 0 and K(P^c) diagonal;
///  - SS2 (2 <= k <= p < n): K diagonal.
/// Trivial cases (k = p, p = n) are reported as always-holding.
inline std::vector<EqualityDiagnostic> strong_szasz_equality_diagnostics(
    const SymPDMatrix& k_mat, int k, int p, double tol = kDefaultTol) {
  const int n = k_mat.size();
  if (k < 1 || p < 1 || p > n || k > p)
    throw InvalidParams("needs 1 <= k <= p <= n");
  const double entry_tol = tol * detail::entry_scale(k_mat);
  std::vector<EqualityDiagnostic> out;
  if (k == p) {
    out.push_back({"SS1 equality: holds trivially (k = p)", true, 0.0, ""});
  } else {
    const SymPDMatrix m =
        p < n ? schur_complement(k_mat, IndexSet::range(1, p, n)) : k_mat;
    out.push_back(detail::diagonal_diagnostic(
        m, "SS1 equality: Schur complement of K(P^c) is diagonal", entry_tol));
  }
  if (p == n) {
    out.push_back({"SS2 equality: holds trivially (p = n)", true, 0.0, ""});
  } else if (k == 1) {
    const IndexSet p_set = IndexSet::range(1, p, n);
    out.push_back(detail::block_zero_diagnostic(
        k_mat, p_set, p_set.complement(), "SS2 equality: K(P,P^c) = 0",
        entry_tol));
    out.push_back(detail::diagonal_diagnostic(
        principal_submatrix(k_mat, p_set.complement()),
        "SS2 equality: K(P^c) is diagonal", entry_tol));
  } else {
    out.push_back(detail::diagonal_diagnostic(
        k_mat, "SS2 equality: K is diagonal", entry_tol));
  }
  return out;
}

/// Conditions under which the strengthened Fischer chain is tight:
///  - SF1: M(S,S') = 0 for distinct S, S' in the induced partition, with M
///    the Schur complement of K(P^c) in K;
///  - SF2 (i): K(A,C) = K(A,B) K(B)^{-1} K(B,C) per block S with A = S∩P,
///    B = S∩P^c, C = S^c∩P^c;
///  - SF2 (ii): zero cross-blocks K(S∩P^c, S'∩P^c) for distinct S, S'.
inline std::vector<EqualityDiagnostic> strong_fischer_equality_diagnostics(
    const SymPDMatrix& k_mat, int p, const Partition& part,
    double tol = kDefaultTol) {
  const int n = k_mat.size();
  if (part.ground_n() != n)
    throw InvalidPartition("partition ground does not match matrix dimension");
  if (p < 1 || p > n) throw InvalidParams("prefix length outside [1:n]");
  const double entry_tol = tol * detail::entry_scale(k_mat);
  std::vector<EqualityDiagnostic> out;

  const SymPDMatrix m =
      p < n ? schur_complement(k_mat, IndexSet::range(1, p, n))
            : k_mat;  // empty complement: the complement block is void
  const auto induced = induced_prefix_blocks(part, p);
  EqualityDiagnostic sf1;
  sf1.condition_name =
      "SF1 equality: Schur complement block-diagonal over induced partition";
  for (std::size_t a = 0; a < induced.size(); ++a)
    for (std::size_t b = a + 1; b < induced.size(); ++b)
      for (int i : induced[a].indices())
        for (int j : induced[b].indices())
          // Indices within [1:p] are their own positions in M.
          if (std::abs(m(i - 1, j - 1)) > sf1.max_violation) {
            sf1.max_violation = std::abs(m(i - 1, j - 1));
            sf1.witness =
                "(" + std::to_string(i) + "," + std::to_string(j) + ")";
          }
  sf1.holds = sf1.max_violation <= entry_tol;
  out.push_back(std::move(sf1));

  const IndexSet p_set = IndexSet::range(1, p, n);
  const IndexSet pc = p_set.complement();
  for (const IndexSet& s : part.blocks()) {
    EqualityDiagnostic d;
    d.condition_name =
        "SF2(i) equality: K(A,C) = K(A,B)K(B)^{-1}K(B,C) for block " +
        s.to_string();
    const IndexSet a = s.set_intersection(p_set);
    const IndexSet b = s.set_intersection(pc);
    const IndexSet c = s.complement().set_intersection(pc);
    if (!a.empty() && !c.empty()) {
      Matrix resid = rect_submatrix(k_mat, a, c);
      if (!b.empty()) {
        const Matrix lb = cholesky(principal_submatrix(k_mat, b));
        const Matrix x = detail::cholesky_solve(lb, rect_submatrix(k_mat, b, c));
        const Matrix ab_x = matmul(rect_submatrix(k_mat, a, b), x);
        for (int i = 0; i < resid.rows; ++i)
          for (int j = 0; j < resid.cols; ++j)
            resid.at(i, j) -= ab_x.at(i, j);
      }
      for (int i = 0; i < resid.rows; ++i)
        for (int j = 0; j < resid.cols; ++j)
          if (std::abs(resid.at(i, j)) > d.max_violation) {
            d.max_violation = std::abs(resid.at(i, j));
            d.witness = "(" + std::to_string(a.indices()[i]) + "," +
                        std::to_string(c.indices()[j]) + ")";
          }
    }
    d.holds = d.max_violation <= entry_tol;
    out.push_back(std::move(d));
  }

  EqualityDiagnostic d2;
  d2.condition_name = "SF2(ii) equality: zero cross-blocks within K(P^c)";
  const auto& blocks = part.blocks();
  for (std::size_t a = 0; a < blocks.size(); ++a)
    for (std::size_t b = a + 1; b < blocks.size(); ++b) {
      const IndexSet sa = blocks[a].set_intersection(pc);
      const IndexSet sb = blocks[b].set_intersection(pc);
      if (sa.empty() || sb.empty()) continue;
      const Matrix blk = rect_submatrix(k_mat, sa, sb);
      for (int i = 0; i < blk.rows; ++i)
        for (int j = 0; j < blk.cols; ++j)
          if (std::abs(blk.at(i, j)) > d2.max_violation) {
            d2.max_violation = std::abs(blk.at(i, j));
            d2.witness = "(" + std::to_string(sa.indices()[i]) + "," +
                         std::to_string(sb.indices()[j]) + ")";
          }
    }
  d2.holds = d2.max_violation <= entry_tol;
  out.push_back(std::move(d2));
  return out;
}

/// Eigenvalue interlacing: for |S| = n−m, the eigenvalues μ of K(S) satisfy
/// λ_i <= μ_i <= λ_{i+m} within the given absolute slack.
inline bool interlacing_check(const SymPDMatrix& k, const IndexSet& s,
                              double tol = kDefaultTol) {
  if (s.ground_n() != k.size())
    throw IndexOutOfRange("index set ground does not match matrix dimension");
  const int n = k.size();
  const int m = n - s.size();
  const EigenSpectrum outer = eigenvalues_sorted(k);
  const EigenSpectrum inner = eigenvalues_sorted(principal_submatrix(k, s));
  for (int i = 0; i < s.size(); ++i) {
    if (outer.values[i] > inner.values[i] + tol) return false;
    if (inner.values[i] > outer.values[i + m] + tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Aggregated report
// ---------------------------------------------------------------------------

struct BoundParams {
  std::optional<int> k, p, l, h;
  std::optional<std::string> partition;
};

struct BoundEntry {
  std::string name;
  BoundParams params;
  double log_bound = 0.0;
  double bound = 0.0;     // exp(log_bound), display only
  double slack_log = 0.0; // log_bound − ln|K|
  bool equality = false;
};

struct OrderingCheck {
  std::string description;
  double lhs_log = 0.0;
  double rhs_log = 0.0;
  bool holds = false;
  bool strict = false;  // slack above the strictness threshold
};

struct BoundReport {
  std::string matrix_label;
  double log_det = 0.0;
  std::vector<BoundEntry> entries;          // sorted tightest first
  std::vector<OrderingCheck> ordering_checks;
  std::vector<EqualityDiagnostic> diagnostics;
  std::vector<int> permutation;  // recorded when a non-prefix P was moved
};

struct ReportConfig {
  std::string matrix_label = "K";
  std::vector<int> k_values;  // empty: all k in [1:n]
  std::vector<int> p_values;  // empty: all p in [1:n]
  std::optional<Partition> partition;
  bool with_hadamard = true;
  bool with_szasz = true;
  bool with_kyfan = true;
  bool with_strong_szasz = true;
  bool with_diagnostics = true;
  double tol = kDefaultTol;
};

/// Evaluates the requested bound grid, sorts entries by tightness, and runs
/// the ordering checks (strengthened vs k = 1, strictness for non-diagonal
/// matrices). Per-entry reductions are sequential and deterministic.
inline BoundReport bound_report(const SymPDMatrix& k_mat,
                                const ReportConfig& cfg) {
  const int n = k_mat.size();
  if (n < 1) throw InvalidParams("bound_report needs n >= 1");
  std::vector<int> ks = cfg.k_values;
  std::vector<int> ps = cfg.p_values;
  if (ks.empty())
    for (int k = 1; k <= n; ++k) ks.push_back(k);
  if (ps.empty())
    for (int p = 1; p <= n; ++p) ps.push_back(p);
  for (int k : ks)
    if (k < 1 || k > n) throw InvalidParams("grid k outside [1:n]");
  for (int p : ps)
    if (p < 1 || p > n) throw InvalidParams("grid p outside [1:n]");

  BoundReport rep;
  rep.matrix_label = cfg.matrix_label;
  rep.log_det = detail::log_minor_mask(k_mat, low_bits(n));
  const double tol = cfg.tol;

  auto add_entry = [&](std::string name, BoundParams params, double log_bound) {
    BoundEntry e;
    e.name = std::move(name);
    e.params = std::move(params);
    e.log_bound = log_bound;
    e.bound = std::exp(log_bound);
    e.slack_log = log_bound - rep.log_det;
    e.equality = std::abs(e.slack_log) <= tol * std::max(1.0, std::abs(log_bound));
    rep.entries.push_back(std::move(e));
  };

  if (cfg.with_hadamard) add_entry("hadamard", {}, hadamard_bound(k_mat));
  if (cfg.with_szasz)
    for (int k : ks) add_entry("szasz", {.k = k}, szasz_bound(k_mat, k));
  if (cfg.with_kyfan)
    for (int p : ps) add_entry("ky-fan", {.p = p}, kyfan_bound(k_mat, p));

  if (cfg.with_strong_szasz) {
    for (int p : ps) {
      std::optional<double> ss1_k1;
      const bool k1_in_grid =
          std::find(ks.begin(), ks.end(), 1) != ks.end();
      for (int k : ks) {
        if (k > p) continue;
        const StrongSzasz ss = strong_szasz_bound(k_mat, k, p, tol);
        add_entry("strong-szasz", {.k = k, .p = p}, ss.ss1);
        if (k == 1) ss1_k1 = ss.ss1;
        rep.ordering_checks.push_back(
            {"strong-szasz(k=" + std::to_string(k) + ",p=" + std::to_string(p) +
                 ") <= szasz(k=" + std::to_string(k) + ")",
             ss.ss1, ss.ss2, ss.ss1_vs_ss2.holds,
             ss.ss2 - ss.ss1 > kStrictTol * std::max(1.0, std::abs(ss.ss2))});
      }
      if (k1_in_grid && !ss1_k1) ss1_k1 = strong_szasz_bound(k_mat, 1, p, tol).ss1;
      if (ss1_k1) {
        for (int k : ks) {
          if (k < 2 || k > p) continue;
          const double ss1_k = strong_szasz_bound(k_mat, k, p, tol).ss1;
          const bool holds =
              ss1_k <= *ss1_k1 + tol * std::max(1.0, std::abs(*ss1_k1));
          rep.ordering_checks.push_back(
              {"strong-szasz(k=" + std::to_string(k) + ",p=" + std::to_string(p) +
                   ") <= strong-szasz(k=1,p=" + std::to_string(p) + ")",
               ss1_k, *ss1_k1, holds,
               *ss1_k1 - ss1_k > kStrictTol * std::max(1.0, std::abs(*ss1_k1))});
        }
      }
    }
  }

  if (cfg.partition) {
    add_entry("fischer", {.partition = cfg.partition->to_string()},
              fischer_bound(k_mat, *cfg.partition));
    for (int p : ps) {
      const StrongFischer sf = strong_fischer_bound(k_mat, p, *cfg.partition, tol);
      add_entry("strong-fischer",
                {.p = p, .partition = cfg.partition->to_string()}, sf.sf1);
      rep.ordering_checks.push_back(
          {"strong-fischer(p=" + std::to_string(p) + ") <= fischer", sf.sf1,
           sf.sf2, sf.sf1_vs_sf2.holds,
           sf.sf2 - sf.sf1 > kStrictTol * std::max(1.0, std::abs(sf.sf2))});
    }
  }

  if (cfg.with_diagnostics) {
    // Keep the diagnostic list proportionate: every grid point for small
    // grids, otherwise only the tightest strengthened entry.
    std::vector<std::pair<int, int>> kp;
    for (int p : ps)
      for (int k : ks)
        if (k <= p) kp.emplace_back(k, p);
    if (kp.size() > 16) {
      const BoundEntry* best = nullptr;
      for (const auto& e : rep.entries)
        if (e.name == "strong-szasz" && (!best || e.log_bound < best->log_bound))
          best = &e;
      kp.clear();
      if (best) kp.emplace_back(*best->params.k, *best->params.p);
    }
    for (auto [k, p] : kp) {
      auto diags = strong_szasz_equality_diagnostics(k_mat, k, p, tol);
      for (auto& d : diags) {
        d.condition_name += " [k=" + std::to_string(k) +
                            ",p=" + std::to_string(p) + "]";
        rep.diagnostics.push_back(std::move(d));
      }
    }
    if (cfg.partition) {
      for (int p : ps) {
        auto diags =
            strong_fischer_equality_diagnostics(k_mat, p, *cfg.partition, tol);
        for (auto& d : diags) {
          d.condition_name += " [p=" + std::to_string(p) + "]";
          rep.diagnostics.push_back(std::move(d));
        }
      }
    }
  }

  std::stable_sort(rep.entries.begin(), rep.entries.end(),
                   [](const BoundEntry& a, const BoundEntry& b) {
                     return a.log_bound < b.log_bound;
                   });
  return rep;
}

}  // namespace subdet

#endif  // SUBDET_DETINEQ_HPP_
