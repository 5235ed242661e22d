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

#ifndef SUBDET_LINALG_HPP_
#define SUBDET_LINALG_HPP_

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "subdet/errors.hpp"
#include "subdet/sets.hpp"

namespace subdet {

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPivotTol = 1e-12;
inline constexpr int kJacobiSweepCap = 100;

/// Minimal dense row-major matrix; used for rectangular blocks and factors.
/// Element access is 0-based, as usual for C++ matrices; set-valued slicing
/// goes through IndexSet, whose contents are 1-based.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  bool empty() const { return rows == 0 || cols == 0; }
};

inline Matrix matmul(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw InvalidParams("matmul: dimension mismatch");
  Matrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const double v = x.at(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

inline Matrix transpose(const Matrix& x) {
  Matrix z(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
  return z;
}

namespace detail {

// In-place lower Cholesky on a row-major n x n buffer. Returns false when a
// pivot falls at or below pivot_floor (absolute threshold).
inline bool cholesky_inplace(int n, double* a, double pivot_floor) {
  for (int j = 0; j < n; ++j) {
    double d = a[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) {
      const double l = a[static_cast<std::size_t>(j) * n + k];
      d -= l * l;
    }
    if (!(d > pivot_floor)) return false;
    const double ljj = std::sqrt(d);
    a[static_cast<std::size_t>(j) * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        s -= a[static_cast<std::size_t>(i) * n + k] *
             a[static_cast<std::size_t>(j) * n + k];
      a[static_cast<std::size_t>(i) * n + j] = s / ljj;
    }
    for (int k = j + 1; k < n; ++k) a[static_cast<std::size_t>(j) * n + k] = 0.0;
  }
  return true;
}

inline double max_diagonal(int n, const double* a) {
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    m = std::max(m, a[static_cast<std::size_t>(i) * n + i]);
  return m;
}

inline void check_square_symmetric(int n, const std::vector<double>& entries) {
  if (n < 0 || entries.size() != static_cast<std::size_t>(n) * n)
    throw InvalidParams("matrix entries do not form an n x n block");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double x = entries[static_cast<std::size_t>(i) * n + j];
      const double y = entries[static_cast<std::size_t>(j) * n + i];
      if (std::abs(x - y) > kSymmetryTol * std::max(1.0, std::abs(x)))
        throw InvalidParams("matrix not symmetric at (" + std::to_string(i + 1) +
                            "," + std::to_string(j + 1) + ")");
    }
}

}  // namespace detail

/// Real symmetric positive definite matrix. Construction validates symmetry
/// (1e-12 relative) and positive definiteness (Cholesky pivots above 1e-12
/// relative to the largest diagonal entry), then stores the exactly
/// symmetrized entries. The 0 x 0 matrix is allowed and has determinant 1.
class SymPDMatrix {
 public:
  SymPDMatrix(int n, std::vector<double> entries)
      : n_(n), a_(std::move(entries)) {
    if (n_ > 64) throw InvalidParams("dimension beyond supported n <= 64");
    detail::check_square_symmetric(n_, a_);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        const double m = 0.5 * (at(i, j) + at(j, i));
        a_[static_cast<std::size_t>(i) * n_ + j] = m;
        a_[static_cast<std::size_t>(j) * n_ + i] = m;
      }
    std::vector<double> work = a_;
    const double floor = kPivotTol * detail::max_diagonal(n_, work.data());
    if (!detail::cholesky_inplace(n_, work.data(), floor))
      throw NotPositiveDefinite("matrix is not positive definite");
  }

  static SymPDMatrix identity(int n) {
    std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = 1.0;
    return SymPDMatrix(n, std::move(e));
  }

  static SymPDMatrix diagonal(const std::vector<double>& d) {
    const int n = static_cast<int>(d.size());
    std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = d[i];
    return SymPDMatrix(n, std::move(e));
  }

  int size() const { return n_; }
  double operator()(int i, int j) const { return at(i, j); }
  const std::vector<double>& entries() const { return a_; }

 private:
  double at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  int n_;
  std::vector<double> a_;
};

/// Ascending eigenvalues with the largest off-diagonal magnitude left at
/// convergence of the Jacobi iteration.
struct EigenSpectrum {
  std::vector<double> values;
  double residual = 0.0;
};

/// Lower Cholesky factor of a raw symmetric candidate matrix. Throws
/// NotPositiveDefinite when a pivot falls at or below the threshold, which
/// signals that the input fails the theorems' hypotheses.
inline Matrix cholesky(int n, const std::vector<double>& entries) {
  detail::check_square_symmetric(n, entries);
  std::vector<double> work = entries;
  const double floor = kPivotTol * detail::max_diagonal(n, work.data());
  if (!detail::cholesky_inplace(n, work.data(), floor))
    throw NotPositiveDefinite("matrix is not positive definite");
  Matrix l(n, n);
  l.a = std::move(work);
  return l;
}

inline Matrix cholesky(const SymPDMatrix& k) {
  return cholesky(k.size(), k.entries());
}

/// ln|K| via the Cholesky factor; the empty matrix has log-determinant 0,
/// matching the |K(∅)| = 1 convention.
inline double log_det(const SymPDMatrix& k) {
  if (k.size() == 0) return 0.0;
  const Matrix l = cholesky(k);
  double s = 0.0;
  for (int i = 0; i < k.size(); ++i) s += std::log(l.at(i, i));
  return 2.0 * s;
}

namespace detail {

// ln|K(S)| for the principal minor selected by a bitmask, without building a
// SymPDMatrix. Singleton minors take log(K_ii) directly so that averaging
// paths coincide bit-for-bit with the diagonal-product path.
inline double log_minor_mask(const SymPDMatrix& k, std::uint64_t mask) {
  const int m = std::popcount(mask);
  if (m == 0) return 0.0;
  if (m == 1) {
    const int i = std::countr_zero(mask);
    const double d = k(i, i);
    if (!(d > 0.0)) throw NotPositiveDefinite("nonpositive diagonal entry");
    return std::log(d);
  }
  int idx[64];
  int t = 0;
  std::uint64_t rest = mask;
  while (rest) {
    idx[t++] = std::countr_zero(rest);
    rest &= rest - 1;
  }
  std::vector<double> sub(static_cast<std::size_t>(m) * m);
  double maxd = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j)
      sub[static_cast<std::size_t>(i) * m + j] = k(idx[i], idx[j]);
    maxd = std::max(maxd, sub[static_cast<std::size_t>(i) * m + i]);
  }
  if (!cholesky_inplace(m, sub.data(), kPivotTol * maxd))
    throw NotPositiveDefinite("principal minor is not positive definite");
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += std::log(sub[static_cast<std::size_t>(i) * m + i]);
  return 2.0 * s;
}

}  // namespace detail

/// ln|K(S)|; ln|K(∅)| = 0.
inline double log_minor(const SymPDMatrix& k, const IndexSet& s) {
  if (s.ground_n() != k.size())
    throw IndexOutOfRange("index set ground does not match matrix dimension");
  return detail::log_minor_mask(k, s.mask());
}

/// K(S): rows and columns restricted to S, order preserved.
inline SymPDMatrix principal_submatrix(const SymPDMatrix& k, const IndexSet& s) {
  if (s.ground_n() != k.size())
    throw IndexOutOfRange("index set ground does not match matrix dimension");
  const auto& idx = s.indices();
  const int m = s.size();
  std::vector<double> e(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      e[static_cast<std::size_t>(i) * m + j] = k(idx[i] - 1, idx[j] - 1);
  return SymPDMatrix(m, std::move(e));
}

/// K(S,T): the rows-by-S, columns-by-T block.
inline Matrix rect_submatrix(const SymPDMatrix& k, const IndexSet& s,
                             const IndexSet& t) {
  if (s.ground_n() != k.size() || t.ground_n() != k.size())
    throw IndexOutOfRange("index set ground does not match matrix dimension");
  Matrix z(s.size(), t.size());
  for (int i = 0; i < s.size(); ++i)
    for (int j = 0; j < t.size(); ++j)
      z.at(i, j) = k(s.indices()[i] - 1, t.indices()[j] - 1);
  return z;
}

namespace detail {

// Solves A X = B for SPD A given its lower Cholesky factor.
inline Matrix cholesky_solve(const Matrix& l, const Matrix& b) {
  const int n = l.rows;
  Matrix x = b;
  for (int col = 0; col < x.cols; ++col) {
    for (int i = 0; i < n; ++i) {
      double s = x.at(i, col);
      for (int k = 0; k < i; ++k) s -= l.at(i, k) * x.at(k, col);
      x.at(i, col) = s / l.at(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = x.at(i, col);
      for (int k = i + 1; k < n; ++k) s -= l.at(k, i) * x.at(k, col);
      x.at(i, col) = s / l.at(i, i);
    }
  }
  return x;
}

}  // namespace detail

/// Schur complement of K(P^c) in K: M = K(P) − K(P,P^c) K(P^c)^{-1} K(P^c,P).
/// M is positive definite and ln|M| = ln|K| − ln|K(P^c)|.
inline SymPDMatrix schur_complement(const SymPDMatrix& k, const IndexSet& p) {
  if (p.ground_n() != k.size())
    throw IndexOutOfRange("index set ground does not match matrix dimension");
  if (p.empty()) throw InvalidParams("schur_complement: P must be nonempty");
  const IndexSet pc = p.complement();
  if (pc.empty())
    throw EmptyComplement("schur_complement: P = [1:n] leaves no complement");
  const SymPDMatrix kpc = principal_submatrix(k, pc);
  const Matrix l = cholesky(kpc);
  const Matrix b = rect_submatrix(k, p, pc);          // K(P, P^c)
  const Matrix x = detail::cholesky_solve(l, transpose(b));
  const Matrix bx = matmul(b, x);                     // K(P,P^c) K(P^c)^-1 K(P^c,P)
  const int m = p.size();
  std::vector<double> e(static_cast<std::size_t>(m) * m);
  const auto& idx = p.indices();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      e[static_cast<std::size_t>(i) * m + j] =
          k(idx[i] - 1, idx[j] - 1) - bx.at(i, j);
  return SymPDMatrix(m, std::move(e));
}

/// Ascending eigenvalues by cyclic Jacobi rotations, iterated until the
/// largest off-diagonal magnitude is at most 1e-12 times the Frobenius norm
/// of the input. Throws NoConvergence past the sweep cap.
inline EigenSpectrum eigenvalues_sorted(const SymPDMatrix& k) {
  const int n = k.size();
  EigenSpectrum spec;
  if (n == 0) return spec;
  std::vector<double> w = k.entries();
  auto at = [&](int i, int j) -> double& {
    return w[static_cast<std::size_t>(i) * n + j];
  };
  double fro = 0.0;
  for (double v : w) fro += v * v;
  fro = std::sqrt(fro);
  const double thresh = 1e-12 * fro;
  auto max_off = [&]() {
    double m = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) m = std::max(m, std::abs(at(i, j)));
    return m;
  };
  double off = max_off();
  int sweeps = 0;
  while (off > thresh) {
    if (sweeps++ >= kJacobiSweepCap)
      throw NoConvergence("Jacobi sweep cap (" +
                          std::to_string(kJacobiSweepCap) + ") exceeded");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double app = at(p, p);
        const double aqq = at(q, q);
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = at(r, p);
          const double arq = at(r, q);
          at(r, p) = arp - s * (arq + tau * arp);
          at(p, r) = at(r, p);
          at(r, q) = arq + s * (arp - tau * arq);
          at(q, r) = at(r, q);
        }
      }
    }
    off = max_off();
  }
  spec.residual = off;
  spec.values.resize(n);
  for (int i = 0; i < n; ++i) spec.values[i] = at(i, i);
  std::sort(spec.values.begin(), spec.values.end());
  return spec;
}

/// True when every off-diagonal entry has magnitude at most tol.
/// A negative tol selects the default 1e-9 * max|entry|.
inline bool is_diagonal(const SymPDMatrix& k, double tol = -1.0) {
  if (tol < 0.0) {
    double m = 0.0;
    for (double v : k.entries()) m = std::max(m, std::abs(v));
    tol = 1e-9 * m;
  }
  for (int i = 0; i < k.size(); ++i)
    for (int j = i + 1; j < k.size(); ++j)
      if (std::abs(k(i, j)) > tol) return false;
  return true;
}

/// True when every entry of the block K(S,T) has magnitude at most tol.
inline bool block_is_zero(const SymPDMatrix& k, const IndexSet& s,
                          const IndexSet& t, double tol = -1.0) {
  if (tol < 0.0) {
    double m = 0.0;
    for (double v : k.entries()) m = std::max(m, std::abs(v));
    tol = 1e-9 * m;
  }
  const Matrix b = rect_submatrix(k, s, t);
  for (double v : b.a)
    if (std::abs(v) > tol) return false;
  return true;
}

/// Reorders K by a permutation given as 1-based original indices:
/// result(i,j) = K(perm[i], perm[j]).
inline SymPDMatrix permute(const SymPDMatrix& k, const std::vector<int>& perm) {
  const int n = k.size();
  if (static_cast<int>(perm.size()) != n)
    throw InvalidParams("permutation length does not match dimension");
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 1 || v > n || seen[v - 1])
      throw InvalidParams("not a permutation of [1:n]");
    seen[v - 1] = true;
  }
  std::vector<double> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      e[static_cast<std::size_t>(i) * n + j] = k(perm[i] - 1, perm[j] - 1);
  return SymPDMatrix(n, std::move(e));
}

}  // namespace subdet

#endif  // SUBDET_LINALG_HPP_
