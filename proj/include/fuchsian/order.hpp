#pragma once

// Orders inside quaternion algebras over a totally real field: discriminants,
// maximality tests, construction of maximal orders with half-integral basis
// elements, denominator bounds for that construction, and congruence systems
// describing the underlying Z-lattice.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "hilbert.hpp"
#include "ideals.hpp"
#include "linalg.hpp"
#include "numberfield.hpp"
#include "quaternion.hpp"
#include "residuering.hpp"

namespace fuchsian {

// ---------------------------------------------------------------------------
// Coordinates.  A quaternion over a degree-n field occupies the 4n-dimensional
// rational space with coordinates (x | y | u | v), each block in the power
// basis of the field.

inline QVec quat_rational_coords(const QuaternionElement& q) {
  QVec out;
  out.reserve(4 * q.x.c.size());
  for (const FieldElement* part : {&q.x, &q.y, &q.u, &q.v})
    for (const auto& c : part->c) out.push_back(c);
  return out;
}

// Integer coordinates of denom*q, or nullopt when denom*q is not integral.
inline std::optional<ZVec> quat_scaled_coords(const QuaternionElement& q,
                                              const FieldElement& denom) {
  QVec c = quat_rational_coords(quat_scale(denom, q));
  ZVec out;
  out.reserve(c.size());
  for (const auto& x : c) {
    if (x.get_den() != 1) return std::nullopt;
    out.push_back(x.get_num());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orders.  An order is stored through a free basis over the ring of integers
// (four quaternions) together with the Z-lattice it spans: the lattice rows
// are the integer coordinate vectors of denom*(alpha^k * e_j), so membership
// of q reduces to an HNF test on the coordinates of denom*q.

struct QuaternionOrder {
  const QuaternionAlgebra* algebra = nullptr;
  std::vector<QuaternionElement> r_basis;  // four elements, first is 1
  FieldElement denom;                      // common denominator scale
  ZMat z_basis;                            // 4n generating rows (unreduced)
  ZMat hnf;                                // canonical 4n x 4n HNF
};

namespace detail {

// Validate a basis and assemble the order, or report the reason it fails.
inline std::optional<QuaternionOrder> try_order(
    const QuaternionAlgebra& A, std::vector<QuaternionElement> basis,
    const FieldElement& denom, std::string* why = nullptr) {
  const NumberField& K = *A.base;
  const size_t n = static_cast<size_t>(K.degree);
  const size_t dim = 4 * n;
  auto fail = [&](const std::string& msg) -> std::optional<QuaternionOrder> {
    if (why) *why = msg;
    return std::nullopt;
  };
  if (basis.size() != 4) return fail("basis must have four elements");
  if (denom.is_zero()) return fail("zero denominator");
  ZMat rows;
  rows.reserve(dim);
  for (const auto& e : basis) {
    QuaternionElement cur = quat_scale(denom, e);
    for (size_t k = 0; k < n; ++k) {
      QVec c = quat_rational_coords(cur);
      ZVec row(dim);
      for (size_t t = 0; t < dim; ++t) {
        if (c[t].get_den() != 1)
          return fail("basis multiples are not integral at the given scale");
        row[t] = c[t].get_num();
      }
      rows.push_back(std::move(row));
      if (k + 1 < n) cur = quat_scale(K.alpha(), cur);
    }
  }
  ZMat h = hnf_rows(rows);
  if (h.size() != dim) return fail("basis does not span a full lattice");
  auto inside = [&](const QuaternionElement& q) {
    auto v = quat_scaled_coords(q, denom);
    return v && hnf_contains(h, *v);
  };
  if (!inside(quat_one(A))) return fail("lattice does not contain 1");
  for (const auto& e : basis) {
    if (!quat_trace(e).is_integral() || !quat_norm(e).is_integral())
      return fail("basis element with non-integral reduced trace or norm");
  }
  for (const auto& p : basis)
    for (const auto& q : basis) {
      QuaternionElement prod = quat_mul(p, q);
      if (!inside(prod)) return fail("basis products leave the lattice");
      if (!quat_trace(prod).is_integral())
        return fail("basis product with non-integral reduced trace");
    }
  QuaternionOrder O;
  O.algebra = &A;
  O.r_basis = std::move(basis);
  O.denom = denom;
  O.z_basis = std::move(rows);
  O.hnf = std::move(h);
  return O;
}

}  // namespace detail

inline QuaternionOrder order_from_basis(const QuaternionAlgebra& A,
                                        std::vector<QuaternionElement> basis,
                                        const FieldElement& denom) {
  std::string why;
  auto O = detail::try_order(A, std::move(basis), denom, &why);
  if (!O) throw std::invalid_argument("not an order: " + why);
  return *std::move(O);
}

inline std::optional<ZVec> order_coords(const QuaternionOrder& O,
                                        const QuaternionElement& q) {
  return quat_scaled_coords(q, O.denom);
}

// Rebuild a quaternion from numerator coordinates at a given denominator.
inline QuaternionElement quat_from_scaled_coords(const QuaternionAlgebra& A,
                                                 const ZVec& v,
                                                 const FieldElement& denom) {
  const NumberField& K = *A.base;
  const size_t n = static_cast<size_t>(K.degree);
  if (v.size() != 4 * n)
    throw std::invalid_argument("coordinate vector has the wrong dimension");
  std::vector<FieldElement> parts;
  parts.reserve(4);
  for (size_t t = 0; t < 4; ++t) {
    QVec c(n);
    for (size_t k = 0; k < n; ++k) c[k] = mpq_class(v[t * n + k]);
    parts.push_back(K.element(std::move(c)));
  }
  FieldElement dinv = K.inv(denom);
  return quat_element(A, K.mul(dinv, parts[0]), K.mul(dinv, parts[1]),
                      K.mul(dinv, parts[2]), K.mul(dinv, parts[3]));
}

inline bool order_contains(const QuaternionOrder& O,
                           const QuaternionElement& q) {
  auto v = order_coords(O, q);
  return v && hnf_contains(O.hnf, *v);
}

// Equality as sets of quaternions, independent of the denominator scales the
// two orders happen to use.
inline bool same_order(const QuaternionOrder& O1, const QuaternionOrder& O2) {
  if (O1.algebra->base != O2.algebra->base || O1.algebra->a != O2.algebra->a ||
      O1.algebra->b != O2.algebra->b)
    return false;
  for (const auto& row : O1.hnf)
    if (!order_contains(O2,
                        quat_from_scaled_coords(*O1.algebra, row, O1.denom)))
      return false;
  for (const auto& row : O2.hnf)
    if (!order_contains(O1,
                        quat_from_scaled_coords(*O2.algebra, row, O2.denom)))
      return false;
  return true;
}

// The ring of integers acting on the standard generators.
inline QuaternionOrder standard_order(const QuaternionAlgebra& A) {
  if (!A.a.is_integral() || !A.b.is_integral())
    throw NotIntegral("standard order requires integral structure constants");
  return order_from_basis(
      A, {quat_one(A), quat_i(A), quat_j(A), quat_ij(A)}, A.base->one());
}

// ---------------------------------------------------------------------------
// Discriminant: determinant of the 4x4 reduced-trace Gram matrix of the
// basis, an integral field element determined up to the square of a unit.

namespace detail {

inline FieldElement field_det4(const NumberField& K,
                               const std::vector<std::vector<FieldElement>>& m) {
  static const int perms[24][4] = {
      {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2},
      {0, 3, 2, 1}, {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0},
      {1, 3, 0, 2}, {1, 3, 2, 0}, {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3},
      {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0}, {3, 0, 1, 2}, {3, 0, 2, 1},
      {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};
  static const int signs[24] = {+1, -1, -1, +1, +1, -1, -1, +1, +1, -1, -1, +1,
                                +1, -1, -1, +1, +1, -1, -1, +1, +1, -1, -1, +1};
  FieldElement det = K.zero();
  for (int t = 0; t < 24; ++t) {
    FieldElement term = m[0][perms[t][0]];
    for (int i = 1; i < 4; ++i) term = K.mul(term, m[i][perms[t][i]]);
    det = (signs[t] > 0) ? K.add(det, term) : K.sub(det, term);
  }
  return det;
}

}  // namespace detail

inline FieldElement order_discriminant(const QuaternionOrder& O) {
  const NumberField& K = *O.algebra->base;
  std::vector<std::vector<FieldElement>> gram(4, std::vector<FieldElement>());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      gram[i].push_back(quat_trace(quat_mul(O.r_basis[i], O.r_basis[j])));
  return detail::field_det4(K, gram);
}

// Maximality: the discriminant ideal must equal the square of the product of
// the finitely ramified primes — checked through the absolute norm and the
// exact valuation at every ramified prime.
inline bool is_maximal(const QuaternionOrder& O, const RamificationData& ram) {
  const NumberField& K = *O.algebra->base;
  FieldElement d = order_discriminant(O);
  mpq_class nd = K.norm(d);
  if (nd.get_den() != 1) return false;
  mpz_class num = abs(nd.get_num());
  mpz_class target = 1;
  for (const auto& P : ram.finite_primes) target *= P.norm * P.norm;
  if (num != target) return false;
  for (const auto& P : ram.finite_primes) {
    PrimeLocal loc(P);
    if (loc.val(d, 3) != 2) return false;
  }
  return true;
}

inline bool is_maximal(const QuaternionOrder& O) {
  return is_maximal(O, ramification_set(*O.algebra));
}

// ---------------------------------------------------------------------------
// The quadratic congruence x^2 - a y^2 - b = 0 mod 4R.  Residue classes mod
// 2R determine the left side mod 4R, so the scan over (R/2R)^2 box
// representatives (x outer, y inner, both in ascending enumeration order) is
// a complete decision procedure; the square-root hypotheses are only used to
// explain a failure.

inline std::pair<FieldElement, FieldElement> solve_quadratic_mod4(
    const NumberField& K, const FieldElement& a, const FieldElement& b) {
  if (!a.is_integral() || !b.is_integral())
    throw NotIntegral("quadratic congruence requires integral coefficients");
  ResidueRing R2 = residue_ring_mod(K, 2);
  auto hit = [&](const FieldElement& x, const FieldElement& y) {
    FieldElement e = K.sub(K.sub(K.mul(x, x), K.mul(a, K.mul(y, y))), b);
    for (const auto& c : e.c) {
      if (c.get_den() != 1) return false;
      if (!mpz_divisible_ui_p(c.get_num().get_mpz_t(), 4)) return false;
    }
    return true;
  };
  const long m = R2.size();
  for (long ix = 0; ix < m; ++ix) {
    FieldElement x = R2.to_element(R2.element_at(ix));
    for (long iy = 0; iy < m; ++iy) {
      FieldElement y = R2.to_element(R2.element_at(iy));
      if (hit(x, y)) return {x, y};
    }
  }
  // No solution: report which square-root hypothesis breaks down.
  ResidueRing R4 = residue_ring_mod(K, 4);
  auto has_sqrt = [&](const FieldElement& t) {
    ResidueRing::Elt target = R4.from_element(t);
    for (long i = 0; i < R4.size(); ++i) {
      ResidueRing::Elt s = R4.element_at(i);
      if (R4.mul(s, s) == target) return true;
    }
    return false;
  };
  std::string msg = "quadratic congruence has no solution mod 4R;";
  msg += " sqrt(a) mod 4R ";
  msg += has_sqrt(a) ? "exists" : "is absent";
  msg += ", sqrt(b) mod 4R ";
  msg += has_sqrt(b) ? "exists" : "is absent";
  msg += K.sub(b, K.mul_scalar(K.one(), -1)).is_zero() ? ", b = -1"
                                                       : ", b != -1";
  throw HypothesisFails(msg);
}

// ---------------------------------------------------------------------------
// Maximal order constructions.

namespace detail {

// Basis {1, i, beta, i*beta} at denominator scale 2: the direct construction
// when x^2 - a y^2 - b lies in 4R.
inline QuaternionOrder half_basis_order(const QuaternionAlgebra& A,
                                        const FieldElement& x,
                                        const FieldElement& y) {
  const NumberField& K = *A.base;
  FieldElement half = K.element_rational(mpq_class(1, 2));
  QuaternionElement beta =
      quat_scale(half, quat_element(A, x, y, K.one(), K.zero()));
  std::vector<QuaternionElement> basis = {quat_one(A), quat_i(A), beta,
                                          quat_mul(quat_i(A), beta)};
  std::string why;
  auto O = try_order(A, std::move(basis), K.element_rational(2), &why);
  if (!O)
    throw MaximalityCheckFailed("half-integral basis failed validation: " +
                                why);
  return *std::move(O);
}

}  // namespace detail

// Direct construction, applicable when the structure constants generate the
// discriminant ideal: abR = Delta(A).
inline QuaternionOrder build_maximal_order_nice(
    const QuaternionAlgebra& A, const RamificationData* ram_in = nullptr) {
  const NumberField& K = *A.base;
  RamificationData ram = ram_in ? *ram_in : ramification_set(A);
  if (!A.a.is_integral() || !A.b.is_integral())
    throw NotIntegral("construction requires integral structure constants");
  FieldElement ab = K.mul(A.a, A.b);
  mpz_class nab = abs(K.norm(ab).get_num());
  mpz_class target = 1;
  for (const auto& P : ram.finite_primes) target *= P.norm;
  bool gate = (nab == target);
  if (gate)
    for (const auto& P : ram.finite_primes) {
      PrimeLocal loc(P);
      if (loc.val(ab, 2) != 1) gate = false;
    }
  if (!gate)
    throw HypothesisFails(
        "structure-constant product does not generate the discriminant "
        "ideal (|N(ab)| = " +
        nab.get_str() + ", discriminant norm = " + target.get_str() + ")");
  auto [x, y] = solve_quadratic_mod4(K, A.a, A.b);
  QuaternionOrder O = detail::half_basis_order(A, x, y);
  if (!is_maximal(O, ram))
    throw MaximalityCheckFailed(
        "constructed order is not maximal despite the discriminant gate");
  return O;
}

// Search construction: start from the best directly constructible order, and
// if that is not maximal scan candidates beta = w/r where w runs over the
// residue classes of the starting order modulo r.  Candidates are ordered by
// the largest absolute numerator coordinate and then lexicographically, and
// both R[1,i,beta,i*beta] and R[1,j,beta,j*beta] are tried.
inline QuaternionOrder build_maximal_order_search(
    const QuaternionAlgebra& A, const FieldElement& r,
    const RamificationData* ram_in = nullptr) {
  const NumberField& K = *A.base;
  RamificationData ram = ram_in ? *ram_in : ramification_set(A);
  if (!r.is_integral() || r.is_zero())
    throw NotIntegral("denominator scale must be a nonzero integral element");
  QuaternionOrder start = [&] {
    try {
      auto [x, y] = solve_quadratic_mod4(K, A.a, A.b);
      return detail::half_basis_order(A, x, y);
    } catch (const HypothesisFails&) {
      return standard_order(A);
    }
  }();
  if (is_maximal(start, ram)) return start;

  const int n = K.degree;
  ZMat rlat;
  FieldElement pw = r;
  for (int k = 0; k < n; ++k) {
    rlat.push_back(pw.int_coords());
    pw = K.mul(pw, K.alpha());
  }
  ResidueRing Rr(K, rlat);
  const long s = Rr.size();
  if (s > 37)
    throw std::invalid_argument("denominator search space too large");

  // Minimal representative of every residue class: the first vector in
  // (max-abs, L1, lex) order.  Small representatives keep the unit scalings
  // among the coefficients small, which is what makes a class usable.
  std::vector<std::vector<long>> reps(static_cast<size_t>(s));
  std::vector<bool> seen(static_cast<size_t>(s), false);
  long found = 0;
  for (long bound = 0; found < s; ++bound) {
    if (bound > 64) throw Error("residue representatives not found");
    std::vector<std::pair<long, std::vector<long>>> shell;  // (L1, vector)
    std::vector<long> v(static_cast<size_t>(n), -bound);
    while (true) {
      long mx = 0, l1 = 0;
      for (long d : v) {
        mx = std::max(mx, d < 0 ? -d : d);
        l1 += d < 0 ? -d : d;
      }
      if (mx == bound) shell.emplace_back(l1, v);
      int k = 0;
      for (; k < n; ++k) {
        if (++v[static_cast<size_t>(k)] <= bound) break;
        v[static_cast<size_t>(k)] = -bound;
      }
      if (k == n) break;
    }
    std::sort(shell.begin(), shell.end());
    for (const auto& entry : shell) {
      const std::vector<long>& vec = entry.second;
      ResidueRing::Elt e(vec.begin(), vec.end());
      Rr.reduce(e);
      long cls = Rr.encode(e);
      if (!seen[static_cast<size_t>(cls)]) {
        seen[static_cast<size_t>(cls)] = true;
        reps[static_cast<size_t>(cls)] = vec;
        ++found;
      }
    }
  }

  const long total = s * s * s * s;
  struct Candidate {
    long key_max;
    long key_l1;
    std::vector<long> key_vec;
    long idx;
  };
  std::vector<Candidate> cands;
  cands.reserve(static_cast<size_t>(total));
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    std::vector<long> vec;
    vec.reserve(static_cast<size_t>(4 * n));
    long mx = 0, l1 = 0;
    for (int k = 0; k < 4; ++k) {
      const std::vector<long>& e = reps[static_cast<size_t>(rest % s)];
      rest /= s;
      for (long d : e) {
        vec.push_back(d);
        mx = std::max(mx, d < 0 ? -d : d);
        l1 += d < 0 ? -d : d;
      }
    }
    cands.push_back({mx, l1, std::move(vec), idx});
  }
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& p, const Candidate& q) {
              if (p.key_max != q.key_max) return p.key_max < q.key_max;
              if (p.key_l1 != q.key_l1) return p.key_l1 < q.key_l1;
              return p.key_vec < q.key_vec;
            });

  FieldElement denom_new = K.mul(start.denom, r);
  FieldElement rinv = K.inv(r);
  long tried = 0;
  for (const Candidate& cand : cands) {
    if (cand.key_max == 0) continue;  // the zero class is the starting order
    ++tried;
    long rest = cand.idx;
    QuaternionElement w = quat_zero(A);
    for (int k = 0; k < 4; ++k) {
      FieldElement c = K.element_int(reps[static_cast<size_t>(rest % s)]);
      rest /= s;
      w = quat_add(w, quat_scale(c, start.r_basis[static_cast<size_t>(k)]));
    }
    QuaternionElement beta = quat_scale(rinv, w);
    if (!quat_trace(beta).is_integral() || !quat_norm(beta).is_integral())
      continue;
    for (const QuaternionElement& gen : {quat_i(A), quat_j(A)}) {
      std::vector<QuaternionElement> basis = {quat_one(A), gen, beta,
                                              quat_mul(gen, beta)};
      auto O = detail::try_order(A, std::move(basis), denom_new);
      if (O && is_maximal(*O, ram)) return *std::move(O);
    }
  }
  throw SearchExhausted("no maximal order among " + std::to_string(tried) +
                        " residue classes at denominator scale " + r.str());
}

namespace detail {

// A uniformizer chosen to keep the residue ring of the search small: among
// the valuation-1 rows of the prime's lattice basis, take one of minimal
// absolute norm (ties broken by row order).
inline FieldElement small_uniformizer(PrimeLocal& loc) {
  const NumberField& K = loc.field();
  std::optional<FieldElement> best;
  mpz_class best_norm;
  for (const ZVec& row : loc.power_lattice(1)) {
    if (loc.val_int(row, 2) != 1) continue;
    FieldElement x = loc.element_from(row);
    mpz_class n = abs(K.norm(x).get_num());
    if (!best || n < best_norm) {
      best = x;
      best_norm = n;
    }
  }
  if (!best) throw Error("no uniformizer among the lattice basis rows");
  return *best;
}

}  // namespace detail

// Denominator bound for the search: the product of uniformizers of the
// primes dividing abR but not the discriminant.  Requires ab square-free
// and the discriminant dividing abR.
inline FieldElement denominator_bound(const QuaternionAlgebra& A,
                                      const RamificationData* ram_in = nullptr) {
  const NumberField& K = *A.base;
  if (!A.a.is_integral() || !A.b.is_integral())
    throw NotIntegral("denominator bound requires integral structure constants");
  RamificationData ram = ram_in ? *ram_in : ramification_set(A);
  FieldElement ab = K.mul(A.a, A.b);
  mpz_class nab = abs(K.norm(ab).get_num());
  auto ramified = [&](const PrimeIdeal& P) {
    for (const auto& Q : ram.finite_primes)
      if (Q == P) return true;
    return false;
  };
  FieldElement r = K.one();
  mpz_class rest = nab;
  for (mpz_class p = 2; rest > 1; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
    if (!mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) continue;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) rest /= p;
    for (const auto& P : factor_prime(K, p.get_si())) {
      PrimeLocal loc(P);
      int v = loc.val(ab, 2);
      if (v >= 2)
        throw HypothesisFails(
            "structure-constant product is not square-free at " +
            P.describe());
      if (v == 1 && !ramified(P))
        r = K.mul(r, detail::small_uniformizer(loc));
    }
  }
  for (const auto& P : ram.finite_primes) {
    PrimeLocal loc(P);
    if (loc.val(ab, 1) < 1)
      throw HypothesisFails(
          "discriminant ideal does not divide the structure-constant "
          "product at " +
          P.describe());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Membership congruences: linear forms with moduli on the 4n numerator
// coordinates whose solution set is exactly the order's lattice.

struct CongruenceSystem {
  size_t dim = 0;
  std::vector<mpz_class> moduli;  // one per form
  ZMat forms;                     // rows over the numerator coordinates
};

inline bool congruences_hold(const CongruenceSystem& S, const ZVec& v) {
  if (v.size() != S.dim)
    throw std::invalid_argument("coordinate vector has the wrong dimension");
  for (size_t i = 0; i < S.forms.size(); ++i) {
    mpz_class acc = 0;
    for (size_t j = 0; j < S.dim; ++j) acc += S.forms[i][j] * v[j];
    if (!mpz_divisible_p(acc.get_mpz_t(), S.moduli[i].get_mpz_t()))
      return false;
  }
  return true;
}

// Derive the system from the Smith normal form of the lattice: with
// D = P*M*Q, a vector v lies in the row space of M exactly when every
// coordinate of v*Q vanishes modulo the corresponding diagonal entry.
inline CongruenceSystem membership_congruences(const QuaternionOrder& O) {
  const size_t dim = O.hnf.size();
  ZMat p, q;
  std::vector<mpz_class> d = snf_with_left(O.hnf, &p, &q);
  CongruenceSystem S;
  S.dim = dim;
  for (size_t i = 0; i < dim; ++i) {
    if (d[i] == 1) continue;
    ZVec form(dim);
    for (size_t j = 0; j < dim; ++j) {
      mpz_class e;
      mpz_fdiv_r(e.get_mpz_t(), q[j][i].get_mpz_t(), d[i].get_mpz_t());
      form[j] = e;
    }
    S.forms.push_back(std::move(form));
    S.moduli.push_back(d[i]);
  }
  return S;
}

// The full solution lattice of an arbitrary congruence system, as an HNF
// basis: solutions are the projection of the integer kernel of [F | -D].
inline ZMat congruence_solution_lattice(const CongruenceSystem& S) {
  const size_t m = S.dim;
  const size_t k = S.forms.size();
  if (k == 0) return hnf_rows(z_identity(m));
  ZMat a(k, ZVec(m + k, 0));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < m; ++j) a[i][j] = S.forms[i][j];
    a[i][m + i] = -S.moduli[i];
  }
  ZMat p, q;
  std::vector<mpz_class> d = snf_with_left(a, &p, &q);
  ZMat rows;
  for (size_t i = 0; i < m + k; ++i) {
    if (i < d.size() && d[i] != 0) continue;
    ZVec v(m);
    for (size_t j = 0; j < m; ++j) v[j] = q[j][i];
    rows.push_back(std::move(v));
  }
  return hnf_rows(rows);
}

// ---------------------------------------------------------------------------
// Serialization: a deterministic, line-oriented golden-fixture format.

inline std::string order_to_text(const QuaternionOrder& O) {
  std::ostringstream out;
  const NumberField& K = *O.algebra->base;
  out << "order degree=" << K.degree << " a=" << O.algebra->a.str()
      << " b=" << O.algebra->b.str() << "\n";
  out << "denominator " << O.denom.str() << "\n";
  out << "hnf " << O.hnf.size() << "\n";
  for (const auto& row : O.hnf) {
    for (size_t j = 0; j < row.size(); ++j)
      out << (j ? " " : "") << row[j].get_str();
    out << "\n";
  }
  return out.str();
}

}  // namespace fuchsian
