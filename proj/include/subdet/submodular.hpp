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

#ifndef SUBDET_SUBMODULAR_HPP_
#define SUBDET_SUBMODULAR_HPP_

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "subdet/combinatorics.hpp"
#include "subdet/errors.hpp"
#include "subdet/linalg.hpp"
#include "subdet/sets.hpp"
#include "subdet/verdict.hpp"

namespace subdet {

// Exhaustive checks (submodularity, chain rule, equality conditions) refuse
// ground sets beyond this unless the caller raises the cap explicitly.
inline constexpr int kDefaultCheckCap = 16;

inline constexpr double kLogTwoPiE = 2.837877066409345483560659472811;  // ln(2*pi*e)

/// Normalized submodular set-function oracle over [1:n]. f(∅) = 0 is enforced
/// by subtracting the raw oracle's value at ∅ once at construction.
/// Evaluations are memoized per subset (bitmask key); the cache is shared by
/// copies and safe under concurrent use. The oracle must be a pure function
/// of the subset, so concurrent and sequential runs give identical results.
class SetFunction {
 public:
  SetFunction(int ground_n, std::function<double(const IndexSet&)> oracle,
              std::string label)
      : SetFunction(ground_n,
                    [oracle = std::move(oracle), ground_n](std::uint64_t m) {
                      return oracle(IndexSet::from_mask(m, ground_n));
                    },
                    std::move(label)) {}

  static SetFunction from_mask_oracle(int ground_n,
                                      std::function<double(std::uint64_t)> raw,
                                      std::string label) {
    return SetFunction(ground_n, std::move(raw), std::move(label));
  }

  int ground_n() const { return s_->n; }
  const std::string& label() const { return s_->label; }

  /// Index map recorded by contract()/relabel(): position i (1-based) of the
  /// new ground set corresponds to original index index_map()[i-1].
  /// Empty for functions over their original ground set.
  const std::vector<int>& index_map() const { return s_->index_map; }

  double operator()(const IndexSet& s) const {
    if (s.ground_n() != s_->n)
      throw IndexOutOfRange("set ground does not match function ground");
    return value(s.mask());
  }

  double value(std::uint64_t mask) const {
    State& st = *s_;
    if (st.n < 64 && (mask >> st.n) != 0)
      throw IndexOutOfRange("mask has bits beyond ground set");
    std::lock_guard<std::mutex> lock(st.mu);
    if (!st.flat.empty()) {
      if (st.flat_has[mask]) return st.flat[mask];
      const double v = st.raw(mask) - st.offset;
      st.flat[mask] = v;
      st.flat_has[mask] = 1;
      return v;
    }
    auto it = st.map.find(mask);
    if (it != st.map.end()) return it->second;
    const double v = st.raw(mask) - st.offset;
    st.map.emplace(mask, v);
    return v;
  }

 private:
  static constexpr int kFlatCacheBits = 20;

  struct State {
    int n = 0;
    std::function<double(std::uint64_t)> raw;
    double offset = 0.0;
    std::string label;
    std::vector<int> index_map;
    mutable std::mutex mu;
    mutable std::vector<double> flat;
    mutable std::vector<char> flat_has;
    mutable std::unordered_map<std::uint64_t, double> map;
  };

  SetFunction(int ground_n, std::function<double(std::uint64_t)> raw,
              std::string label)
      : s_(std::make_shared<State>()) {
    if (ground_n < 1 || ground_n > 64)
      throw InvalidParams("ground set size must be in [1,64]");
    s_->n = ground_n;
    s_->raw = std::move(raw);
    s_->label = std::move(label);
    s_->offset = s_->raw(0);
    if (ground_n <= kFlatCacheBits) {
      s_->flat.assign(std::size_t{1} << ground_n, 0.0);
      s_->flat_has.assign(std::size_t{1} << ground_n, 0);
    }
  }

  friend SetFunction with_index_map(SetFunction f, std::vector<int> map);

  std::shared_ptr<State> s_;
};

inline SetFunction with_index_map(SetFunction f, std::vector<int> map) {
  f.s_->index_map = std::move(map);
  return f;
}

/// f(S | T) = f(S ∪ T) − f(T). S and T need not be disjoint.
inline double conditional_value(const SetFunction& f, const IndexSet& s,
                                const IndexSet& t) {
  if (s.ground_n() != f.ground_n() || t.ground_n() != f.ground_n())
    throw IndexOutOfRange("set ground does not match function ground");
  return f.value(s.mask() | t.mask()) - f.value(t.mask());
}

/// Contraction by C: the function S ↦ f(S | C) on the ground set [1:n] \ C,
/// re-indexed 1..n−|C|. The new-to-original index map is recorded on the
/// result. Contraction preserves submodularity.
inline SetFunction contract(const SetFunction& f, const IndexSet& c) {
  if (c.ground_n() != f.ground_n())
    throw IndexOutOfRange("set ground does not match function ground");
  if (c.empty()) return f;
  if (c.size() >= f.ground_n())
    throw InvalidParams("contraction set must be a proper subset");
  std::vector<int> map;  // new 1-based position -> original index
  for (int i = 1; i <= f.ground_n(); ++i)
    if (!c.contains(i)) map.push_back(i);
  const std::uint64_t cmask = c.mask();
  const int m = static_cast<int>(map.size());
  auto raw = [f, map, cmask](std::uint64_t small) {
    std::uint64_t big = cmask;
    std::uint64_t rest = small;
    while (rest) {
      const int pos = std::countr_zero(rest);
      big |= std::uint64_t{1} << (map[pos] - 1);
      rest &= rest - 1;
    }
    return f.value(big) - f.value(cmask);
  };
  SetFunction g = SetFunction::from_mask_oracle(
      m, std::move(raw), f.label() + " | " + c.to_string());
  return with_index_map(std::move(g), std::move(map));
}

/// Permutes the ground set: g(S) = f({perm[i] : i ∈ S}) with perm given as
/// 1-based original indices. Lets callers condition on arbitrary sets by
/// moving them to the suffix before applying the prefix-form bounds.
inline SetFunction relabel(const SetFunction& f, const std::vector<int>& perm) {
  const int n = f.ground_n();
  if (static_cast<int>(perm.size()) != n)
    throw InvalidParams("permutation length does not match ground set");
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 1 || v > n || seen[v - 1])
      throw InvalidParams("not a permutation of [1:n]");
    seen[v - 1] = true;
  }
  auto raw = [f, perm](std::uint64_t mask) {
    std::uint64_t big = 0;
    std::uint64_t rest = mask;
    while (rest) {
      const int pos = std::countr_zero(rest);
      big |= std::uint64_t{1} << (perm[pos] - 1);
      rest &= rest - 1;
    }
    return f.value(big);
  };
  SetFunction g = SetFunction::from_mask_oracle(n, std::move(raw),
                                                f.label() + " (relabeled)");
  return with_index_map(std::move(g), perm);
}

struct RelabeledFunction {
  SetFunction fn;
  std::vector<int> permutation;  // new position -> original index
  int prefix_len = 0;            // p such that the suffix [p+1:n] is the moved set
};

/// Relabels so that the given conditioning set becomes the suffix [p+1:n];
/// the prefix keeps the remaining indices in ascending order.
inline RelabeledFunction move_to_suffix(const SetFunction& f, const IndexSet& c) {
  if (c.ground_n() != f.ground_n())
    throw IndexOutOfRange("set ground does not match function ground");
  std::vector<int> perm;
  for (int i = 1; i <= f.ground_n(); ++i)
    if (!c.contains(i)) perm.push_back(i);
  const int p = static_cast<int>(perm.size());
  for (int i : c.indices()) perm.push_back(i);
  return RelabeledFunction{relabel(f, perm), perm, p};
}

// ---------------------------------------------------------------------------
// Exhaustive structural checks
// ---------------------------------------------------------------------------

/// Result of the diminishing-returns scan. On failure, witness_mask/i/j name
/// the first violating triple (S, i, j) in enumeration order.
struct SubmodularityCheck {
  bool ok = true;
  double max_violation = 0.0;
  std::uint64_t witness_mask = 0;
  int witness_i = 0;
  int witness_j = 0;
};

inline void require_check_cap(int n, int cap, const std::string& op,
                              double cost) {
  if (n > cap) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", cost);
    throw GroundTooLarge(op + " on n=" + std::to_string(n) +
                         " needs about " + buf +
                         " oracle evaluations; cap is " + std::to_string(cap));
  }
}

/// Checks f(S∪{i}) − f(S) >= f(S∪{i,j}) − f(S∪{j}) for every S and i,j ∉ S,
/// with slack tolerance −tol·scale where scale = max(1, max |f|).
inline SubmodularityCheck check_submodular(const SetFunction& f,
                                           int cap = kDefaultCheckCap,
                                           double tol = kDefaultTol) {
  const int n = f.ground_n();
  require_check_cap(n, cap, "check_submodular",
                    std::ldexp(static_cast<double>(n) * n, n));
  double scale = 1.0;
  for_each_subset(n, [&](std::uint64_t m) {
    scale = std::max(scale, std::abs(f.value(m)));
  });
  SubmodularityCheck out;
  for_each_subset(n, [&](std::uint64_t s) {
    for (int i = 0; i < n; ++i) {
      if (s & (std::uint64_t{1} << i)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (s & (std::uint64_t{1} << j)) continue;
        const std::uint64_t si = s | (std::uint64_t{1} << i);
        const std::uint64_t sj = s | (std::uint64_t{1} << j);
        const double viol =
            (f.value(si | sj) + f.value(s)) - (f.value(si) + f.value(sj));
        if (viol > out.max_violation) {
          out.max_violation = viol;
          out.witness_mask = s;
          out.witness_i = i + 1;
          out.witness_j = j + 1;
        }
      }
    }
  });
  out.ok = out.max_violation <= tol * scale;
  return out;
}

struct ChainRuleCheck {
  bool ok = true;
  double chain_identity_error = 0.0;  // |f([1:n]) − Σ f({i}|[1:i−1])|
  double max_conditioning_violation = 0.0;  // max f(S|T,U) − f(S|T)
};

/// Verifies the telescoping chain identity and that conditioning on more
/// never increases the value, over all disjoint (S, T, U).
inline ChainRuleCheck check_chain_rule(const SetFunction& f,
                                       int cap = kDefaultCheckCap,
                                       double tol = kDefaultTol) {
  const int n = f.ground_n();
  require_check_cap(n, cap, "check_chain_rule", std::pow(4.0, n));
  ChainRuleCheck out;
  double sum = 0.0;
  std::uint64_t prefix = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    sum += f.value(prefix | bit) - f.value(prefix);
    prefix |= bit;
  }
  const double total = f.value(prefix);
  out.chain_identity_error = std::abs(total - sum);
  double scale = std::max(1.0, std::abs(total));
  const std::uint64_t full = low_bits(n);
  for_each_subset(n, [&](std::uint64_t t) {
    const std::uint64_t rest1 = full & ~t;
    std::uint64_t u = rest1;
    while (true) {
      const std::uint64_t rest2 = rest1 & ~u;
      std::uint64_t s = rest2;
      while (true) {
        if (s) {
          const double lhs = f.value(s | t | u) - f.value(t | u);
          const double rhs = f.value(s | t) - f.value(t);
          out.max_conditioning_violation =
              std::max(out.max_conditioning_violation, lhs - rhs);
          scale = std::max(scale, std::abs(rhs));
        }
        if (s == 0) break;
        s = (s - 1) & rest2;
      }
      if (u == 0) break;
      u = (u - 1) & rest1;
    }
  });
  out.ok = out.chain_identity_error <= tol * scale &&
           out.max_conditioning_violation <= tol * scale;
  return out;
}

// ---------------------------------------------------------------------------
// Han-type and partition-type bounds
// ---------------------------------------------------------------------------

namespace detail {

// (1 / C(m−1, k−1)) Σ_{S ⊆ universe, |S| = k} [f(S ∪ cond) − f(cond)] where
// m = |universe|. Subsets run in lexicographic bitmask order and the sum is
// accumulated sequentially in that order. The same routine backs the plain
// and strengthened bounds so that the p = n collapse is arithmetically exact.
inline double averaged_ksubset_conditional(const SetFunction& f,
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
  const double fcond = f.value(cond);
  double sum = 0.0;
  for_each_subset_of_size(m, k, [&](std::uint64_t local) {
    std::uint64_t s = 0;
    std::uint64_t r = local;
    while (r) {
      s |= std::uint64_t{1} << members[std::countr_zero(r)];
      r &= r - 1;
    }
    sum += f.value(s | cond) - fcond;
  });
  return sum / static_cast<double>(binomial(m - 1, k - 1));
}

}  // namespace detail

/// Han's inequality: f([1:n]) <= (1/C(n−1,k−1)) Σ_{|S|=k} f(S).
inline InequalityVerdict han_bound(const SetFunction& f, int k,
                                   double tol = kDefaultTol) {
  const int n = f.ground_n();
  if (k < 1 || k > n) throw InvalidParams("han_bound: k outside [1:n]");
  const std::uint64_t full = low_bits(n);
  const double bound = detail::averaged_ksubset_conditional(f, full, k, 0);
  return make_verdict(f.value(full), bound, tol);
}

/// Conditionally strengthened Han chain for k <= p:
///   f([1:n]) <= inner <= outer,
/// where inner conditions the k-subset average of [1:p] on [p+1:n] and outer
/// is the plain Han bound.
struct StrengthenedHan {
  double lhs = 0.0;
  double inner = 0.0;
  double outer = 0.0;
  InequalityVerdict lhs_vs_inner;   // the conditional bound
  InequalityVerdict inner_vs_outer; // comparison against plain Han
};

inline StrengthenedHan strengthened_han_bound(const SetFunction& f, int k,
                                              int p, double tol = kDefaultTol) {
  const int n = f.ground_n();
  if (k < 1 || p < 1 || p > n || k > p)
    throw InvalidParams("strengthened_han_bound needs 1 <= k <= p <= n");
  const std::uint64_t full = low_bits(n);
  const std::uint64_t prefix = low_bits(p);
  const std::uint64_t cond = full & ~prefix;
  StrengthenedHan out;
  out.lhs = f.value(full);
  out.inner =
      detail::averaged_ksubset_conditional(f, prefix, k, cond) + f.value(cond);
  out.outer = detail::averaged_ksubset_conditional(f, full, k, 0);
  out.lhs_vs_inner = make_verdict(out.lhs, out.inner, tol);
  out.inner_vs_outer = make_verdict(out.inner, out.outer, tol);
  return out;
}

/// Partition subadditivity: f([1:n]) <= Σ_{S ∈ P} f(S).
inline InequalityVerdict partition_bound(const SetFunction& f,
                                         const Partition& part,
                                         double tol = kDefaultTol) {
  if (part.ground_n() != f.ground_n())
    throw InvalidPartition("partition ground does not match function ground");
  double bound = 0.0;
  for (const IndexSet& b : part.blocks()) bound += f.value(b.mask());
  return make_verdict(f.value(low_bits(f.ground_n())), bound, tol);
}

/// Conditionally strengthened partition chain:
///   f([1:n]) <= Σ_{S ∈ P'} f(S | [p+1:n]) + f([p+1:n]) <= Σ_{S ∈ P} f(S),
/// with P' the induced partition of [1:p].
struct StrengthenedPartition {
  double lhs = 0.0;
  double inner = 0.0;
  double outer = 0.0;
  InequalityVerdict lhs_vs_inner;
  InequalityVerdict inner_vs_outer;
};

inline StrengthenedPartition strengthened_partition_bound(
    const SetFunction& f, int p, const Partition& part,
    double tol = kDefaultTol) {
  const int n = f.ground_n();
  if (part.ground_n() != n)
    throw InvalidPartition("partition ground does not match function ground");
  if (p < 1 || p > n) throw InvalidParams("prefix length outside [1:n]");
  const std::uint64_t full = low_bits(n);
  const std::uint64_t cond = full & ~low_bits(p);
  const double fcond = f.value(cond);
  StrengthenedPartition out;
  out.lhs = f.value(full);
  double inner = 0.0;
  for (const IndexSet& b : induced_prefix_blocks(part, p))
    inner += f.value(b.mask() | cond) - fcond;
  out.inner = inner + fcond;
  double outer = 0.0;
  for (const IndexSet& b : part.blocks()) outer += f.value(b.mask());
  out.outer = outer;
  out.lhs_vs_inner = make_verdict(out.lhs, out.inner, tol);
  out.inner_vs_outer = make_verdict(out.inner, out.outer, tol);
  return out;
}

/// a_k = Σ_{S ⊆ [1:p], |S| = k} f(S) / (C(p,k)·k) for k = 1..p. For
/// submodular f this sequence is non-increasing in k.
inline std::vector<double> subset_average_sequence(const SetFunction& f, int p,
                                                   int cap = kDefaultCheckCap) {
  const int n = f.ground_n();
  if (p < 1 || p > n) throw InvalidParams("prefix length outside [1:n]");
  require_check_cap(p, cap, "subset_average_sequence", std::ldexp(1.0, p));
  std::vector<double> out(p, 0.0);
  for (int k = 1; k <= p; ++k) {
    double sum = 0.0;
    for_each_subset_of_size(p, k, [&](std::uint64_t s) { sum += f.value(s); });
    out[k - 1] = sum / (static_cast<double>(binomial(p, k)) * k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Equality-condition diagnostics
// ---------------------------------------------------------------------------

/// One testable equality condition: holds ⇔ max_violation <= tol·scale at
/// evaluation time; witness names the first offending subset when false.
struct EqualityCondition {
  std::string name;
  bool holds = true;
  double max_violation = 0.0;
  std::string witness;
};

namespace detail {

inline void update_condition(EqualityCondition& cond, double violation,
                             const std::string& witness) {
  if (violation > cond.max_violation) {
    cond.max_violation = violation;
    cond.witness = witness;
  }
}

}  // namespace detail

/// Equality diagnostics for the strengthened Han chain. Reports
///  - contraction modularity (the iff condition for the first inequality when
///    k < p), and
///  - conditions (i)-(iii) (the iff conditions for the second inequality),
/// each cross-checked against the observed slacks.
struct Thm1EqualityReport {
  int k = 0;
  int p = 0;
  EqualityCondition contraction_modular;  // f(S|[p+1:n]) = Σ_i f({i}|[p+1:n])
  EqualityCondition cond_i;    // f(S) = Σ f({i}), S ⊆ [1:p], |S| <= k
  EqualityCondition cond_ii;   // f(S ∪ [p+1:n]) = f(S) + f([p+1:n]), |S| <= k
  EqualityCondition cond_iii;  // f(S) = Σ f({i}), S ⊆ [p+1:n]
  double inner_slack = 0.0;
  double outer_slack = 0.0;
  bool inner_equality = false;
  bool outer_equality = false;
  // Forward soundness: predicted equality was actually observed.
  bool inner_consistent = true;
  bool outer_consistent = true;
};

inline Thm1EqualityReport check_thm1_equality(const SetFunction& f, int k,
                                              int p, int cap = kDefaultCheckCap,
                                              double tol = kDefaultTol) {
  const int n = f.ground_n();
  if (k < 1 || p < 1 || p > n || k > p)
    throw InvalidParams("check_thm1_equality needs 1 <= k <= p <= n");
  require_check_cap(n, cap, "check_thm1_equality", std::ldexp(1.0, n));
  const std::uint64_t full = low_bits(n);
  const std::uint64_t cond = full & ~low_bits(p);
  const double fcond = f.value(cond);

  Thm1EqualityReport rep;
  rep.k = k;
  rep.p = p;
  rep.contraction_modular.name = "contraction-modularity";
  rep.cond_i.name = "(i) modularity on small subsets of [1:p]";
  rep.cond_ii.name = "(ii) separation from [p+1:n]";
  rep.cond_iii.name = "(iii) modularity on [p+1:n]";

  double scale = std::max(1.0, std::abs(f.value(full)));
  double singles_cond[64];
  double singles[64];
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    singles[i] = f.value(bit);
    singles_cond[i] = f.value(bit | cond) - fcond;
    scale = std::max({scale, std::abs(singles[i]), std::abs(singles_cond[i])});
  }

  for_each_subset(p, [&](std::uint64_t s) {
    if (std::popcount(s) < 2) return;
    double mod_cond = 0.0;
    double mod = 0.0;
    std::uint64_t rest = s;
    while (rest) {
      const int i = std::countr_zero(rest);
      mod_cond += singles_cond[i];
      mod += singles[i];
      rest &= rest - 1;
    }
    const double fs = f.value(s);
    const double fs_cond = f.value(s | cond) - fcond;
    scale = std::max({scale, std::abs(fs), std::abs(fs_cond)});
    const std::string w = IndexSet::from_mask(s, n).to_string();
    detail::update_condition(rep.contraction_modular,
                             std::abs(fs_cond - mod_cond), w);
    if (std::popcount(s) <= k)
      detail::update_condition(rep.cond_i, std::abs(fs - mod), w);
  });
  for_each_subset(p, [&](std::uint64_t s) {
    const int sz = std::popcount(s);
    if (sz < 1 || sz > k) return;
    const double lhs = f.value(s | cond);
    const double rhs = f.value(s) + fcond;
    scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
    detail::update_condition(rep.cond_ii, std::abs(lhs - rhs),
                             IndexSet::from_mask(s, n).to_string());
  });
  const int suffix_len = n - p;
  for_each_subset(suffix_len, [&](std::uint64_t local) {
    if (std::popcount(local) < 2) return;
    const std::uint64_t s = local << p;
    double mod = 0.0;
    std::uint64_t rest = s;
    while (rest) {
      mod += singles[std::countr_zero(rest)];
      rest &= rest - 1;
    }
    const double fs = f.value(s);
    scale = std::max(scale, std::abs(fs));
    detail::update_condition(rep.cond_iii, std::abs(fs - mod),
                             IndexSet::from_mask(s, n).to_string());
  });

  const double cond_tol = tol * scale;
  rep.contraction_modular.holds = rep.contraction_modular.max_violation <= cond_tol;
  rep.cond_i.holds = rep.cond_i.max_violation <= cond_tol;
  rep.cond_ii.holds = rep.cond_ii.max_violation <= cond_tol;
  rep.cond_iii.holds = rep.cond_iii.max_violation <= cond_tol;

  const StrengthenedHan sh = strengthened_han_bound(f, k, p, tol);
  rep.inner_slack = sh.lhs_vs_inner.slack;
  rep.outer_slack = sh.inner_vs_outer.slack;
  rep.inner_equality = sh.lhs_vs_inner.equality;
  rep.outer_equality = sh.inner_vs_outer.equality;
  // For k = p the first inequality is an identity regardless of modularity.
  rep.inner_consistent =
      k == p || !rep.contraction_modular.holds || rep.inner_equality;
  rep.outer_consistent =
      !(rep.cond_i.holds && rep.cond_ii.holds && rep.cond_iii.holds) ||
      rep.outer_equality;
  return rep;
}

/// Equality diagnostics for the strengthened partition chain: the
/// conditional-modularity condition for the first inequality and conditions
/// (i)-(ii) for the second, cross-checked against the observed slacks.
struct Thm3EqualityReport {
  int p = 0;
  EqualityCondition conditional_modular;  // f([1:p]|[p+1:n]) = Σ_{P'} f(S|..)
  EqualityCondition cond_i;   // f(S) = f(S∩[p+1:n]) + f(S∩[1:p] | [p+1:n])
  EqualityCondition cond_ii;  // f([p+1:n]) = Σ f(S∩[p+1:n])
  double inner_slack = 0.0;
  double outer_slack = 0.0;
  bool inner_equality = false;
  bool outer_equality = false;
  bool inner_consistent = true;
  bool outer_consistent = true;
};

inline Thm3EqualityReport check_thm3_equality(const SetFunction& f, int p,
                                              const Partition& part,
                                              int cap = kDefaultCheckCap,
                                              double tol = kDefaultTol) {
  const int n = f.ground_n();
  if (part.ground_n() != n)
    throw InvalidPartition("partition ground does not match function ground");
  if (p < 1 || p > n) throw InvalidParams("prefix length outside [1:n]");
  require_check_cap(n, cap, "check_thm3_equality", std::ldexp(1.0, n));
  const std::uint64_t full = low_bits(n);
  const std::uint64_t prefix = low_bits(p);
  const std::uint64_t cond = full & ~prefix;
  const double fcond = f.value(cond);

  Thm3EqualityReport rep;
  rep.p = p;
  rep.conditional_modular.name = "conditional modularity over induced blocks";
  rep.cond_i.name = "(i) block separation across the prefix boundary";
  rep.cond_ii.name = "(ii) independence of block tails in [p+1:n]";

  double scale = std::max(1.0, std::abs(f.value(full)));
  double sum_blocks = 0.0;
  for (const IndexSet& b : induced_prefix_blocks(part, p))
    sum_blocks += f.value(b.mask() | cond) - fcond;
  const double whole = f.value(prefix | cond) - fcond;
  scale = std::max({scale, std::abs(whole), std::abs(sum_blocks)});
  detail::update_condition(rep.conditional_modular, std::abs(whole - sum_blocks),
                           "[1:p]");

  double tail_sum = 0.0;
  for (const IndexSet& b : part.blocks()) {
    const std::uint64_t head = b.mask() & prefix;
    const std::uint64_t tail = b.mask() & cond;
    const double fs = f.value(b.mask());
    const double split = f.value(tail) + (f.value(head | cond) - fcond);
    scale = std::max({scale, std::abs(fs), std::abs(split)});
    detail::update_condition(rep.cond_i, std::abs(fs - split), b.to_string());
    tail_sum += f.value(tail);
  }
  scale = std::max(scale, std::abs(tail_sum));
  detail::update_condition(rep.cond_ii, std::abs(fcond - tail_sum), "[p+1:n]");

  const double cond_tol = tol * scale;
  rep.conditional_modular.holds =
      rep.conditional_modular.max_violation <= cond_tol;
  rep.cond_i.holds = rep.cond_i.max_violation <= cond_tol;
  rep.cond_ii.holds = rep.cond_ii.max_violation <= cond_tol;

  const StrengthenedPartition sp = strengthened_partition_bound(f, p, part, tol);
  rep.inner_slack = sp.lhs_vs_inner.slack;
  rep.outer_slack = sp.inner_vs_outer.slack;
  rep.inner_equality = sp.lhs_vs_inner.equality;
  rep.outer_equality = sp.inner_vs_outer.equality;
  rep.inner_consistent = !rep.conditional_modular.holds || rep.inner_equality;
  rep.outer_consistent =
      !(rep.cond_i.holds && rep.cond_ii.holds) || rep.outer_equality;
  return rep;
}

// ---------------------------------------------------------------------------
// Built-in instances
// ---------------------------------------------------------------------------

/// Differential entropy of a zero-mean Gaussian vector with covariance K:
/// f(S) = (|S|/2) ln(2πe) + ½ ln|K(S)|.
inline SetFunction gaussian_entropy_fn(const SymPDMatrix& k) {
  if (k.size() < 1) throw InvalidParams("gaussian instance needs n >= 1");
  auto shared = std::make_shared<SymPDMatrix>(k);
  auto raw = [shared](std::uint64_t mask) {
    return 0.5 * std::popcount(mask) * kLogTwoPiE +
           0.5 * detail::log_minor_mask(*shared, mask);
  };
  return SetFunction::from_mask_oracle(
      k.size(), std::move(raw),
      "gaussian-entropy[n=" + std::to_string(k.size()) + "]");
}

/// Shannon entropy (natural log) of the S-marginal of a finite joint PMF.
/// The joint table is row-major with the last variable fastest; 0·ln 0 = 0.
inline SetFunction discrete_entropy_fn(const std::vector<int>& alphabet_sizes,
                                       const std::vector<double>& pmf) {
  const int n = static_cast<int>(alphabet_sizes.size());
  if (n < 1 || n > 64) throw InvalidParams("need between 1 and 64 variables");
  std::uint64_t cells = 1;
  for (int a : alphabet_sizes) {
    if (a < 1) throw InvalidParams("alphabet sizes must be positive");
    if (cells > kSubsetEnumLimit / static_cast<std::uint64_t>(a))
      throw GroundTooLarge("joint table exceeds " +
                           std::to_string(kSubsetEnumLimit) + " cells");
    cells *= static_cast<std::uint64_t>(a);
  }
  if (pmf.size() != cells)
    throw InvalidParams("pmf size does not match alphabet product");
  double total = 0.0;
  for (double q : pmf) {
    if (q < 0.0) throw InvalidParams("pmf has a negative entry");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidParams("pmf does not sum to 1 within 1e-12");

  auto sizes = std::make_shared<std::vector<int>>(alphabet_sizes);
  auto table = std::make_shared<std::vector<double>>(pmf);
  auto raw = [sizes, table, n](std::uint64_t mask) {
    std::uint64_t msize = 1;
    for (int i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) msize *= (*sizes)[i];
    std::vector<double> marginal(msize, 0.0);
    const std::uint64_t cells = table->size();
    for (std::uint64_t cell = 0; cell < cells; ++cell) {
      std::uint64_t idx = 0;
      std::uint64_t rem = cell;
      // Digits from the fastest-varying variable upward.
      std::uint64_t place = 1;
      for (int i = n - 1; i >= 0; --i) {
        const int a = (*sizes)[i];
        const int digit = static_cast<int>(rem % a);
        rem /= a;
        if (mask & (std::uint64_t{1} << i)) {
          idx += place * digit;
          place *= a;
        }
      }
      marginal[idx] += (*table)[cell];
    }
    double h = 0.0;
    for (double q : marginal)
      if (q > 0.0) h -= q * std::log(q);
    return h;
  };
  return SetFunction::from_mask_oracle(
      n, std::move(raw), "discrete-entropy[n=" + std::to_string(n) + "]");
}

/// Weighted graph cut: f(S) = Σ w({u,v}) over edges with exactly one end in
/// S. Weights must be nonnegative for submodularity.
inline SetFunction graph_cut_fn(
    int vertex_count, const std::vector<std::tuple<int, int, double>>& edges) {
  if (vertex_count < 1 || vertex_count > 64)
    throw InvalidParams("vertex count must be in [1,64]");
  for (const auto& [u, v, w] : edges) {
    if (u < 1 || u > vertex_count || v < 1 || v > vertex_count || u == v)
      throw InvalidParams("edge endpoints must be distinct vertices in [1:n]");
    if (w < 0.0) throw InvalidParams("cut weights must be nonnegative");
  }
  auto shared = std::make_shared<std::vector<std::tuple<int, int, double>>>(edges);
  auto raw = [shared](std::uint64_t mask) {
    double cut = 0.0;
    for (const auto& [u, v, w] : *shared) {
      const bool inu = mask & (std::uint64_t{1} << (u - 1));
      const bool inv = mask & (std::uint64_t{1} << (v - 1));
      if (inu != inv) cut += w;
    }
    return cut;
  };
  return SetFunction::from_mask_oracle(
      vertex_count, std::move(raw),
      "graph-cut[n=" + std::to_string(vertex_count) + "]");
}

/// Weighted coverage: f(S) = Σ_{u ∈ ∪_{i∈S} U_i} w_u.
inline SetFunction set_cover_fn(const std::vector<double>& universe_weights,
                                const std::vector<std::vector<int>>& subsets) {
  const int n = static_cast<int>(subsets.size());
  if (n < 1 || n > 64) throw InvalidParams("need between 1 and 64 subsets");
  const int universe = static_cast<int>(universe_weights.size());
  for (double w : universe_weights)
    if (w < 0.0) throw InvalidParams("universe weights must be nonnegative");
  for (const auto& sub : subsets)
    for (int u : sub)
      if (u < 1 || u > universe)
        throw InvalidParams("subset element outside the universe");
  auto weights = std::make_shared<std::vector<double>>(universe_weights);
  auto subs = std::make_shared<std::vector<std::vector<int>>>(subsets);
  auto raw = [weights, subs, universe](std::uint64_t mask) {
    std::vector<char> covered(universe, 0);
    std::uint64_t rest = mask;
    while (rest) {
      const int i = std::countr_zero(rest);
      for (int u : (*subs)[i]) covered[u - 1] = 1;
      rest &= rest - 1;
    }
    double total = 0.0;
    for (int u = 0; u < universe; ++u)
      if (covered[u]) total += (*weights)[u];
    return total;
  };
  return SetFunction::from_mask_oracle(n, std::move(raw),
                                       "set-cover[n=" + std::to_string(n) + "]");
}

/// Uniform matroid rank: f(S) = min(|S|, r).
inline SetFunction matroid_rank_fn(int ground_n, int uniform_rank) {
  if (ground_n < 1 || ground_n > 64)
    throw InvalidParams("ground set size must be in [1,64]");
  if (uniform_rank < 0) throw InvalidParams("rank must be nonnegative");
  auto raw = [uniform_rank](std::uint64_t mask) {
    return static_cast<double>(std::min(std::popcount(mask), uniform_rank));
  };
  return SetFunction::from_mask_oracle(
      ground_n, std::move(raw),
      "uniform-matroid[n=" + std::to_string(ground_n) +
          ",r=" + std::to_string(uniform_rank) + "]");
}

/// Partition matroid rank: f(S) = Σ_j min(|S ∩ B_j|, c_j).
inline SetFunction matroid_rank_fn(const Partition& blocks,
                                   const std::vector<int>& capacities) {
  if (capacities.size() != static_cast<std::size_t>(blocks.size()))
    throw InvalidParams("one capacity per block required");
  for (int c : capacities)
    if (c < 0) throw InvalidParams("capacities must be nonnegative");
  std::vector<std::uint64_t> masks;
  for (const IndexSet& b : blocks.blocks()) masks.push_back(b.mask());
  auto raw = [masks, capacities](std::uint64_t mask) {
    double r = 0.0;
    for (std::size_t j = 0; j < masks.size(); ++j)
      r += std::min(std::popcount(mask & masks[j]), capacities[j]);
    return r;
  };
  return SetFunction::from_mask_oracle(
      blocks.ground_n(), std::move(raw),
      "partition-matroid[n=" + std::to_string(blocks.ground_n()) + "]");
}

/// Facility location: f(S) = Σ_i max_{j∈S} s_ij with similarities s_ij >= 0;
/// the max over the empty set is 0.
inline SetFunction facility_location_fn(
    const std::vector<std::vector<double>>& similarity) {
  const int n = static_cast<int>(similarity.size());
  if (n < 1 || n > 64) throw InvalidParams("need an n x n similarity matrix");
  for (const auto& row : similarity) {
    if (static_cast<int>(row.size()) != n)
      throw InvalidParams("similarity matrix must be square");
    for (double s : row)
      if (s < 0.0) throw InvalidParams("similarities must be nonnegative");
  }
  auto sim = std::make_shared<std::vector<std::vector<double>>>(similarity);
  auto raw = [sim, n](std::uint64_t mask) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double best = 0.0;
      std::uint64_t rest = mask;
      while (rest) {
        const int j = std::countr_zero(rest);
        best = std::max(best, (*sim)[i][j]);
        rest &= rest - 1;
      }
      total += best;
    }
    return total;
  };
  return SetFunction::from_mask_oracle(
      n, std::move(raw), "facility-location[n=" + std::to_string(n) + "]");
}

/// Modular function f(S) = Σ_{i∈S} w_i; every bound in this module is tight
/// on it, which makes it the canonical equality witness.
inline SetFunction modular_fn(const std::vector<double>& weights) {
  const int n = static_cast<int>(weights.size());
  if (n < 1 || n > 64) throw InvalidParams("need between 1 and 64 weights");
  auto w = std::make_shared<std::vector<double>>(weights);
  auto raw = [w](std::uint64_t mask) {
    double total = 0.0;
    std::uint64_t rest = mask;
    while (rest) {
      total += (*w)[std::countr_zero(rest)];
      rest &= rest - 1;
    }
    return total;
  };
  return SetFunction::from_mask_oracle(n, std::move(raw),
                                       "modular[n=" + std::to_string(n) + "]");
}

}  // namespace subdet

#endif  // SUBDET_SUBMODULAR_HPP_
