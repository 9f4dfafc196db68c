// Real cyclotomic subfields k_m = Q(2cos(pi/m)) and admissible periods.
//
// A totally real field K contains k_m exactly when the trace polynomial
// psi_m (the minimal polynomial of 2cos(pi/m) over Q) has a root in K.  Such
// a root is an algebraic integer all of whose real embeddings lie in (-2, 2),
// so the search space is a finite box in exact power-basis coordinates; we
// enumerate it with interval pruning and verify candidates exactly.

#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <vector>

#include "fuchsian/errors.hpp"
#include "fuchsian/numberfield.hpp"
#include "fuchsian/poly.hpp"

namespace fuchsian {

inline long euler_phi(long x) {
  long r = x;
  for (long q = 2; q * q <= x; ++q) {
    if (x % q == 0) {
      r -= r / q;
      while (x % q == 0) x /= q;
    }
  }
  if (x > 1) r -= r / x;
  return r;
}

// Minimal polynomial of 2cos(pi/m) over Q, ascending coefficients, monic of
// degree phi(2m)/2.  Entries cover every m that can occur for fields of
// degree up to 14; anything beyond is reported as unsupported.
inline const ZPoly* trace_polynomial(long m) {
  static const std::map<long, std::vector<long>> kLeadingFirst = {
      {2, {1, 0}},
      {3, {1, -1}},
      {4, {1, 0, -2}},
      {5, {1, -1, -1}},
      {6, {1, 0, -3}},
      {7, {1, -1, -2, 1}},
      {8, {1, 0, -4, 0, 2}},
      {9, {1, 0, -3, -1}},
      {10, {1, 0, -5, 0, 5}},
      {11, {1, -1, -4, 3, 3, -1}},
      {12, {1, 0, -4, 0, 1}},
      {13, {1, -1, -5, 4, 6, -3, -1}},
      {14, {1, 0, -7, 0, 14, 0, -7}},
      {15, {1, 1, -4, -4, 1}},
      {16, {1, 0, -8, 0, 20, 0, -16, 0, 2}},
      {17, {1, -1, -7, 6, 15, -10, -10, 4, 1}},
      {18, {1, 0, -6, 0, 9, 0, -3}},
      {19, {1, -1, -8, 7, 21, -15, -20, 10, 5, -1}},
      {20, {1, 0, -8, 0, 19, 0, -12, 0, 1}},
      {21, {1, 1, -6, -6, 8, 8, 1}},
      {22, {1, 0, -11, 0, 44, 0, -77, 0, 55, 0, -11}},
      {23, {1, -1, -10, 9, 36, -28, -56, 35, 35, -15, -6, 1}},
      {24, {1, 0, -8, 0, 20, 0, -16, 0, 1}},
      {25, {1, 0, -10, 0, 35, -1, -50, 5, 25, -5, -1}},
      {26, {1, 0, -13, 0, 65, 0, -156, 0, 182, 0, -91, 0, 13}},
      {27, {1, 0, -9, 0, 27, 0, -30, 0, 9, -1}},
      {28, {1, 0, -12, 0, 53, 0, -104, 0, 86, 0, -24, 0, 1}},
      {30, {1, 0, -7, 0, 14, 0, -8, 0, 1}},
  };
  static std::map<long, ZPoly> cache;
  auto hit = cache.find(m);
  if (hit != cache.end()) return &hit->second;
  auto row = kLeadingFirst.find(m);
  if (row == kLeadingFirst.end()) return nullptr;
  cache[m] = poly_from_leading(row->second);
  return &cache[m];
}

// A root of psi_m in K, if one exists.  Roots are algebraic integers with all
// embeddings in (-2, 2); we bound the integer coordinate box through the
// inverse of the numeric embedding matrix and check candidates exactly.
inline std::optional<FieldElement> find_psi_root(const NumberField& K, long m) {
  const long deg = euler_phi(2 * m) / 2;
  const ZPoly* psi = trace_polynomial(m);
  if (psi == nullptr) throw PeriodNotSupported("no trace polynomial on record for m=" + std::to_string(m));
  const int n = K.degree;
  if (deg > n || n % deg != 0) return std::nullopt;
  QPoly psi_q = q_poly(*psi);
  if (deg == 1) {
    // psi is x - c; the root is the rational integer c, present in any field.
    FieldElement w = K.element_rational(-psi_q[0]);
    return w;
  }

  // Numeric embedding matrix V[j][i] = sigma_j(alpha)^i and its inverse.
  std::vector<std::vector<double>> V(n, std::vector<double>(n));
  for (int j = 0; j < n; ++j) {
    const std::vector<double>& pw = K.power_embeddings(j);
    for (int i = 0; i < n; ++i) V[j][i] = pw[i];
  }
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
  {
    std::vector<std::vector<double>> a = V;
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r) {
        if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
      }
      std::swap(a[piv], a[col]);
      std::swap(inv[piv], inv[col]);
      double d = a[col][col];
      for (int c = 0; c < n; ++c) {
        a[col][c] /= d;
        inv[col][c] /= d;
      }
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        double f = a[r][col];
        if (f == 0.0) continue;
        for (int c = 0; c < n; ++c) {
          a[r][c] -= f * a[col][c];
          inv[r][c] -= f * inv[col][c];
        }
      }
    }
  }
  // Coordinate bounds: z = V^{-1} s with |s_j| <= 2.
  std::vector<long> bound(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += std::fabs(inv[i][j]);
    bound[i] = static_cast<long>(std::floor(2.0 * s * (1.0 + 1e-9) + 1e-6)) + 1;
  }

  // Depth-first enumeration over coordinates, highest power first, pruning on
  // per-place partial sums.  remtail[j][t] bounds |sum_{i<t} z_i sigma_j^i|.
  std::vector<std::vector<double>> remtail(n, std::vector<double>(n + 1, 0.0));
  for (int j = 0; j < n; ++j) {
    for (int t = 0; t < n; ++t) {
      remtail[j][t + 1] = remtail[j][t] + static_cast<double>(bound[t]) * std::fabs(V[j][t]);
    }
  }
  std::vector<long> z(n, 0);
  std::vector<double> partial(n, 0.0);
  std::optional<FieldElement> found;
  // Recursive lambda over coordinate index t = n-1 down to 0.
  auto search = [&](auto&& self, int t) -> bool {
    if (t < 0) {
      QVec coords(n);
      for (int i = 0; i < n; ++i) coords[i] = mpq_class(z[i]);
      FieldElement w = K.element(coords);
      FieldElement val = K.eval_poly(psi_q, w);
      if (val.is_zero()) {
        found = w;
        return true;
      }
      return false;
    }
    for (long v = -bound[t]; v <= bound[t]; ++v) {
      bool ok = true;
      for (int j = 0; j < n; ++j) {
        double pj = partial[j] + static_cast<double>(v) * V[j][t];
        double slack = remtail[j][t];
        if (pj - slack > 2.0 + 1e-6 || pj + slack < -2.0 - 1e-6) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      z[t] = v;
      for (int j = 0; j < n; ++j) partial[j] += static_cast<double>(v) * V[j][t];
      if (self(self, t - 1)) return true;
      for (int j = 0; j < n; ++j) partial[j] -= static_cast<double>(v) * V[j][t];
      z[t] = 0;
    }
    return false;
  };
  search(search, n - 1);
  return found;
}

// Whether k_m is contained in K.  Degree divisibility and field discriminant
// divisibility act as filters; the decisive test is an exact root of the
// trace polynomial.  Always true for m = 2 and m = 3 (k_2 = k_3 = Q).
inline bool period_admissible(const NumberField& K, long m) {
  if (m < 2) return false;
  const int n = K.degree;
  long phi2m = euler_phi(2 * m);
  if (phi2m > 2 * n) return false;
  long deg = phi2m / 2;
  if (n % deg != 0) return false;
  const ZPoly* psi = trace_polynomial(m);
  if (psi == nullptr) throw PeriodNotSupported("no trace polynomial on record for m=" + std::to_string(m));
  if (deg == 1) return true;
  // Field discriminant of k_m divides the discriminant of K whenever
  // k_m is a subfield; Z[2cos(pi/m)] is the full ring of integers of
  // k_m, so the polynomial discriminant is the field discriminant.
  mpz_class dm = z_discriminant(*psi);
  if (!mpz_divisible_p(K.disc.get_mpz_t(), dm.get_mpz_t())) return false;
  return find_psi_root(K, m).has_value();
}

// All m >= 2 with k_m contained in K.
inline std::vector<long> admissible_periods(const NumberField& K) {
  std::vector<long> out;
  for (long m = 2; m <= 200; ++m) {
    if (period_admissible(K, m)) out.push_back(m);
  }
  return out;
}

}  // namespace fuchsian
