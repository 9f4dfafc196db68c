#pragma once
// Exact linear algebra over Z and Q used throughout: fraction-free
// determinants, row-style Hermite normal form (lattices are row spans),
// Smith normal form with a left transform (for turning a sublattice into a
// list of congruence conditions), integer linear solving, and dense rational
// elimination.

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "fuchsian/errors.hpp"

namespace fuchsian {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;
using QVec = std::vector<mpq_class>;
using QMat = std::vector<QVec>;

inline ZMat zmat(size_t rows, size_t cols) { return ZMat(rows, ZVec(cols, 0)); }

inline ZMat z_identity(size_t n) {
  ZMat m = zmat(n, n);
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Determinant by fraction-free (Bareiss) elimination; exact for mpz entries.
inline mpz_class z_det(ZMat a) {
  const size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        mpz_class num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : mpz_class(-a[n - 1][n - 1]);
}

// Row-style Hermite normal form of the lattice spanned by the rows of `a`.
// Returns the nonzero rows in echelon form: pivots positive, entries above a
// pivot reduced into [0, pivot).
inline ZMat hnf_rows(ZMat a) {
  if (a.empty()) return a;
  const size_t cols = a[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < a.size(); ++col) {
    // Euclidean elimination in this column below `row`.
    while (true) {
      size_t piv = row;
      bool found = false;
      mpz_class best;
      for (size_t i = row; i < a.size(); ++i) {
        if (a[i][col] != 0) {
          mpz_class v = abs(a[i][col]);
          if (!found || v < best) {
            best = v;
            piv = i;
            found = true;
          }
        }
      }
      if (!found) break;
      std::swap(a[row], a[piv]);
      if (a[row][col] < 0)
        for (auto& x : a[row]) x = -x;
      bool clean = true;
      for (size_t i = row + 1; i < a.size(); ++i) {
        if (a[i][col] != 0) {
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(),
                     a[row][col].get_mpz_t());
          for (size_t j = col; j < cols; ++j) a[i][j] -= q * a[row][j];
          if (a[i][col] != 0) clean = false;
        }
      }
      if (clean) break;
    }
    if (a[row][col] == 0) continue;
    // Reduce entries above the pivot.
    for (size_t i = 0; i < row; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[row][col].get_mpz_t());
      if (q != 0)
        for (size_t j = col; j < cols; ++j) a[i][j] -= q * a[row][j];
    }
    ++row;
  }
  a.resize(row);
  return a;
}

// Membership of `v` in the row span of an HNF matrix `h` (as produced by
// hnf_rows).  Returns the coefficient vector if inside.
inline std::optional<ZVec> hnf_solve(const ZMat& h, ZVec v) {
  ZVec coeff(h.size(), 0);
  size_t row = 0;
  for (size_t col = 0; col < v.size(); ++col) {
    size_t pivcol = 0;
    bool have = false;
    if (row < h.size()) {
      for (pivcol = 0; pivcol < v.size(); ++pivcol)
        if (h[row][pivcol] != 0) break;
      have = (pivcol == col);
    }
    if (have) {
      mpz_class q, r;
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v[col].get_mpz_t(),
                  h[row][col].get_mpz_t());
      if (r != 0) return std::nullopt;
      if (q != 0)
        for (size_t j = col; j < v.size(); ++j) v[j] -= q * h[row][j];
      coeff[row] = q;
      ++row;
    } else if (v[col] != 0) {
      return std::nullopt;
    }
  }
  return coeff;
}

inline bool hnf_contains(const ZMat& h, const ZVec& v) {
  return hnf_solve(h, v).has_value();
}

inline bool lattice_equal(const ZMat& h1, const ZMat& h2) { return h1 == h2; }

// Reduce `v` to the canonical coset representative modulo the row span of a
// full-rank square HNF matrix `h` (entries end up in [0, pivot) positionwise).
inline ZVec hnf_reduce(const ZMat& h, ZVec v) {
  const size_t n = v.size();
  for (size_t i = 0; i < n; ++i) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v[i].get_mpz_t(), h[i][i].get_mpz_t());
    if (q != 0)
      for (size_t j = i; j < n; ++j) v[j] -= q * h[i][j];
  }
  return v;
}

// Smith normal form D = P * A * Q.  Returns diag(D) (padded with zeros up to
// min(rows, cols)) and the unimodular left transform P (rows x rows).  The
// right transform is accumulated only if `q` is non-null.
inline std::vector<mpz_class> snf_with_left(ZMat a, ZMat* p_out,
                                            ZMat* q_out = nullptr) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  ZMat p = z_identity(rows);
  ZMat q = z_identity(cols);
  size_t t = 0;
  const size_t lim = std::min(rows, cols);
  auto swap_rows = [&](size_t i, size_t j) {
    std::swap(a[i], a[j]);
    std::swap(p[i], p[j]);
  };
  auto swap_cols = [&](size_t i, size_t j) {
    for (auto& r : a) std::swap(r[i], r[j]);
    for (auto& r : q) std::swap(r[i], r[j]);
  };
  auto addmul_row = [&](size_t dst, size_t src, const mpz_class& c) {
    for (size_t j = 0; j < cols; ++j) a[dst][j] += c * a[src][j];
    for (size_t j = 0; j < rows; ++j) p[dst][j] += c * p[src][j];
  };
  auto addmul_col = [&](size_t dst, size_t src, const mpz_class& c) {
    for (size_t i = 0; i < rows; ++i) a[i][dst] += c * a[i][src];
    for (size_t i = 0; i < cols; ++i) q[i][dst] += c * q[i][src];
  };
  while (t < lim) {
    // Find a nonzero pivot of minimal absolute value in the trailing block.
    size_t pi = t, pj = t;
    bool found = false;
    mpz_class best;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (a[i][j] != 0) {
          mpz_class v = abs(a[i][j]);
          if (!found || v < best) {
            best = v;
            pi = i;
            pj = j;
            found = true;
          }
        }
    if (!found) break;
    if (pi != t) swap_rows(t, pi);
    if (pj != t) swap_cols(t, pj);
    bool dirty = false;
    for (size_t i = t + 1; i < rows; ++i)
      if (a[i][t] != 0) {
        mpz_class qq;
        mpz_fdiv_q(qq.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        addmul_row(i, t, -qq);
        if (a[i][t] != 0) dirty = true;
      }
    for (size_t j = t + 1; j < cols; ++j)
      if (a[t][j] != 0) {
        mpz_class qq;
        mpz_fdiv_q(qq.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        addmul_col(j, t, -qq);
        if (a[t][j] != 0) dirty = true;
      }
    if (dirty) continue;
    // Enforce divisibility of the rest of the block by the pivot.
    bool divides = true;
    for (size_t i = t + 1; i < rows && divides; ++i)
      for (size_t j = t + 1; j < cols && divides; ++j)
        if (a[i][j] % a[t][t] != 0) {
          addmul_row(t, i, 1);
          divides = false;
        }
    if (!divides) continue;
    if (a[t][t] < 0) {
      for (size_t j = 0; j < cols; ++j) a[t][j] = -a[t][j];
      for (size_t j = 0; j < rows; ++j) p[t][j] = -p[t][j];
    }
    ++t;
  }
  std::vector<mpz_class> diag(lim, 0);
  for (size_t i = 0; i < t; ++i) diag[i] = a[i][i];
  if (p_out) *p_out = std::move(p);
  if (q_out) *q_out = std::move(q);
  return diag;
}

// One integer solution x of A x = b (A rows x cols, x length cols), or
// nullopt when none exists.
inline std::optional<ZVec> z_solve(const ZMat& a, const ZVec& b) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  ZMat p, q;
  std::vector<mpz_class> d = snf_with_left(a, &p, &q);
  ZVec pb(rows, 0);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < rows; ++j) pb[i] += p[i][j] * b[j];
  ZVec s(cols, 0);
  for (size_t i = 0; i < rows; ++i) {
    if (i < d.size() && d[i] != 0) {
      mpz_class quo, rem;
      mpz_tdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), pb[i].get_mpz_t(),
                  d[i].get_mpz_t());
      if (rem != 0) return std::nullopt;
      s[i] = quo;
    } else if (pb[i] != 0) {
      return std::nullopt;
    }
  }
  ZVec x(cols, 0);
  for (size_t i = 0; i < cols; ++i)
    for (size_t j = 0; j < cols; ++j) x[i] += q[i][j] * s[j];
  return x;
}

// ---------------------------------------------------------------------------
// Dense rational elimination.

inline QMat qmat(size_t rows, size_t cols) { return QMat(rows, QVec(cols, 0)); }

inline mpq_class q_det(QMat a) {
  const size_t n = a.size();
  mpq_class det = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      mpq_class f = a[i][k] / a[k][k];
      for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

// Solve A x = b over Q; throws DivisionByZero when A is singular.
inline QVec q_solve(QMat a, QVec b) {
  const size_t n = a.size();
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) throw DivisionByZero("singular rational system");
    if (piv != k) {
      std::swap(a[piv], a[k]);
      std::swap(b[piv], b[k]);
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      mpq_class f = a[i][k] / a[k][k];
      for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  QVec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace fuchsian
