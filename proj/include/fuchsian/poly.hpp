#pragma once
// Univariate polynomials with exact rational coefficients (ascending order),
// Sylvester resultants/discriminants over Z, Sturm sequences, and certified
// real root isolation with rational interval endpoints.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "fuchsian/errors.hpp"
#include "fuchsian/linalg.hpp"

namespace fuchsian {

using ZPoly = std::vector<mpz_class>;  // ascending: p[i] * x^i
using QPoly = std::vector<mpq_class>;

inline int sgn(const mpq_class& x) { return mpq_sgn(x.get_mpq_t()); }
inline int sgn(const mpz_class& x) { return mpz_sgn(x.get_mpz_t()); }

inline QPoly q_poly(const ZPoly& p) {
  QPoly out(p.size());
  for (size_t i = 0; i < p.size(); ++i) out[i] = p[i];
  return out;
}

// Reads coefficients written leading-first (the usual way a defining
// polynomial is quoted) into ascending order.
inline ZPoly poly_from_leading(const std::vector<long>& lead_first) {
  ZPoly p(lead_first.rbegin(), lead_first.rend());
  return p;
}

inline void poly_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int poly_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

inline QPoly poly_add(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  poly_trim(a);
  return a;
}

inline QPoly poly_scale(QPoly a, const mpq_class& c) {
  for (auto& x : a) x *= c;
  poly_trim(a);
  return a;
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  poly_trim(out);
  return out;
}

inline QPoly poly_derivative(const QPoly& p) {
  QPoly out;
  for (size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * mpq_class(i));
  return out;
}

inline mpq_class poly_eval(const QPoly& p, const mpq_class& x) {
  mpq_class v = 0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

// Euclidean remainder over Q.
inline QPoly poly_rem(QPoly a, const QPoly& b) {
  poly_trim(a);
  while (poly_deg(a) >= poly_deg(b) && !a.empty()) {
    mpq_class c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    poly_trim(a);
  }
  return a;
}

inline std::optional<QPoly> poly_divexact(QPoly a, const QPoly& b) {
  poly_trim(a);
  if (b.empty()) return std::nullopt;
  QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (poly_deg(a) >= poly_deg(b) && !a.empty()) {
    mpq_class c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    poly_trim(a);
  }
  if (!a.empty()) return std::nullopt;
  return q;
}

// Resultant via the Sylvester matrix with fraction-free elimination.
inline mpz_class z_resultant(const ZPoly& f, const ZPoly& g) {
  const int m = static_cast<int>(f.size()) - 1;
  const int n = static_cast<int>(g.size()) - 1;
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  ZMat s = zmat(m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = f[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = g[n - j];
  return z_det(s);
}

// Discriminant of a monic integer polynomial.
inline mpz_class z_discriminant(const ZPoly& f) {
  const int n = static_cast<int>(f.size()) - 1;
  ZPoly df;
  for (int i = 1; i <= n; ++i) df.push_back(f[i] * i);
  mpz_class res = z_resultant(f, df);
  return ((n * (n - 1) / 2) % 2 == 0) ? res : mpz_class(-res);
}

// ---------------------------------------------------------------------------
// Sturm sequences and root isolation.

inline std::vector<QPoly> sturm_sequence(const QPoly& f) {
  std::vector<QPoly> seq;
  QPoly a = f;
  poly_trim(a);
  seq.push_back(a);
  QPoly b = poly_derivative(a);
  poly_trim(b);
  while (!b.empty()) {
    seq.push_back(b);
    QPoly r = poly_rem(a, b);
    for (auto& c : r) c = -c;
    a = std::move(b);
    b = std::move(r);
  }
  return seq;
}

inline int sturm_sign_changes(const std::vector<QPoly>& seq,
                              const mpq_class& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    int s = sgn(poly_eval(p, x));
    if (s != 0) {
      if (last != 0 && s != last) ++changes;
      last = s;
    }
  }
  return changes;
}

inline int sturm_sign_changes_inf(const std::vector<QPoly>& seq, int dir) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    if (p.empty()) continue;
    int s = sgn(p.back());
    if (dir < 0 && poly_deg(p) % 2 == 1) s = -s;
    if (s != 0) {
      if (last != 0 && s != last) ++changes;
      last = s;
    }
  }
  return changes;
}

// Number of distinct real roots in the half-open interval (a, b].
inline int count_roots(const std::vector<QPoly>& seq, const mpq_class& a,
                       const mpq_class& b) {
  return sturm_sign_changes(seq, a) - sturm_sign_changes(seq, b);
}

inline int count_real_roots(const QPoly& f) {
  auto seq = sturm_sequence(f);
  return sturm_sign_changes_inf(seq, -1) - sturm_sign_changes_inf(seq, +1);
}

// An isolating interval for one real root: either lo == hi (exact rational
// root) or f(lo) * f(hi) < 0 with exactly one root inside.
struct RootInterval {
  mpq_class lo, hi;
  bool exact() const { return lo == hi; }
  mpq_class mid() const { return (lo + hi) / 2; }
  mpq_class width() const { return hi - lo; }
  double approx() const { return mid().get_d(); }
};

// Cauchy bound: every real root lies in (-M, M).
inline mpq_class root_bound(const QPoly& f) {
  mpq_class m = 0;
  for (size_t i = 0; i + 1 < f.size(); ++i) {
    mpq_class v = abs(f[i] / f.back());
    if (v > m) m = v;
  }
  return m + 1;
}

// Ascending list of isolating intervals for all distinct real roots.
// Requires f squarefree (true for irreducible defining polynomials).
inline std::vector<RootInterval> isolate_real_roots(const QPoly& f) {
  auto seq = sturm_sequence(f);
  std::vector<RootInterval> out;
  mpq_class bound = root_bound(f);
  struct Seg {
    mpq_class lo, hi;
    int count;
  };
  std::vector<Seg> stack;
  int total = count_roots(seq, -bound, bound);
  if (poly_eval(f, -bound) == 0)
    throw PrecisionExhausted("root bound touches a root");
  stack.push_back({-bound, bound, total});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.count == 0) continue;
    if (s.count == 1 && poly_eval(f, s.hi) != 0) {
      out.push_back({s.lo, s.hi});
      continue;
    }
    mpq_class mid = (s.lo + s.hi) / 2;
    if (poly_eval(f, mid) == 0) {
      out.push_back({mid, mid});
      // Count on each side excluding the exact root.
      int left = count_roots(seq, s.lo, mid) - 1;
      int right = count_roots(seq, mid, s.hi);
      stack.push_back({s.lo, mid, left});
      stack.push_back({mid, s.hi, right});
    } else {
      int left = count_roots(seq, s.lo, mid);
      stack.push_back({s.lo, mid, left});
      stack.push_back({mid, s.hi, s.count - left});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RootInterval& a, const RootInterval& b) {
              return a.lo + a.hi < b.lo + b.hi;
            });
  return out;
}

// Shrink an isolating interval below `width` by bisection.
inline void refine_root(const QPoly& f, RootInterval& r,
                        const mpq_class& width) {
  if (r.exact()) return;
  int slo = sgn(poly_eval(f, r.lo));
  while (r.width() > width) {
    mpq_class mid = r.mid();
    int sm = sgn(poly_eval(f, mid));
    if (sm == 0) {
      r.lo = r.hi = mid;
      return;
    }
    if (sm == slo)
      r.lo = mid;
    else
      r.hi = mid;
  }
}

// ---------------------------------------------------------------------------
// Rational interval arithmetic (used for certified sign evaluation).

struct QInterval {
  mpq_class lo, hi;
  QInterval() : lo(0), hi(0) {}
  QInterval(mpq_class l, mpq_class h) : lo(std::move(l)), hi(std::move(h)) {}
  static QInterval point(const mpq_class& x) { return {x, x}; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  // 0 when the interval straddles zero.
  int sign() const {
    if (sgn(lo) > 0) return 1;
    if (sgn(hi) < 0) return -1;
    return 0;
  }
  mpq_class width() const { return hi - lo; }
  double approx() const { return mpq_class((lo + hi) / 2).get_d(); }
};

inline QInterval operator+(const QInterval& a, const QInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}
inline QInterval operator-(const QInterval& a, const QInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}
inline QInterval operator-(const QInterval& a) { return {-a.hi, -a.lo}; }
inline QInterval operator*(const QInterval& a, const QInterval& b) {
  mpq_class c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo,
            c4 = a.hi * b.hi;
  return {std::min(std::min(c1, c2), std::min(c3, c4)),
          std::max(std::max(c1, c2), std::max(c3, c4))};
}
inline QInterval operator*(const mpq_class& c, const QInterval& a) {
  return sgn(c) >= 0 ? QInterval{c * a.lo, c * a.hi}
                     : QInterval{c * a.hi, c * a.lo};
}

inline QInterval poly_eval_interval(const QPoly& p, const QInterval& x) {
  QInterval v;
  for (size_t i = p.size(); i-- > 0;)
    v = v * x + QInterval::point(p[i]);
  return v;
}

}  // namespace fuchsian
