// Local invariants of quaternion algebras: the Hilbert symbol at finite
// primes, the full ramification set (real and finite places), and the
// isomorphism test by equality of ramification.

#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fuchsian/errors.hpp"
#include "fuchsian/ideals.hpp"
#include "fuchsian/quaternion.hpp"
#include "fuchsian/residuering.hpp"

namespace fuchsian {

namespace detail {

// The symbol is invariant under multiplying either argument by a nonzero
// square, so clear denominators by the square of the denominator.
inline FieldElement integral_square_model(const FieldElement& x) {
  mpz_class d = x.denominator();
  if (d == 1) return x;
  return x.field->mul_scalar(x, mpq_class(d * d));
}

// Odd residue characteristic: with a = pi^va * ua, b = pi^vb * ub,
//   (a,b)_P = (-1)^(va vb eps) chi(ua)^vb chi(ub)^va,
// where chi is the residue-field square character and eps = 1 exactly when
// the residue field has order q == 3 mod 4 (i.e. -1 is a nonsquare).
inline int hilbert_symbol_tame(PrimeLocal& loc, const FieldElement& a, const FieldElement& b) {
  const NumberField& K = loc.field();
  const int va = loc.val(a);
  const int vb = loc.val(b);
  const FieldElement& pi = loc.uniformizer();
  const bool alpha = (va % 2) != 0;
  const bool beta = (vb % 2) != 0;
  int s = 1;
  if (alpha && beta && loc.prime().norm % 4 == 3) s = -s;
  if (beta) {
    FieldElement ua = loc.quotient_mod(a, K.pow(pi, static_cast<unsigned long>(va)), 1);
    if (!loc.residue_is_square(loc.residue(ua))) s = -s;
  }
  if (alpha) {
    FieldElement ub = loc.quotient_mod(b, K.pow(pi, static_cast<unsigned long>(vb)), 1);
    if (!loc.residue_is_square(loc.residue(ub))) s = -s;
  }
  return s;
}

// Does c0 + c1 s^2 + c2 t^2 = 0 admit a solution mod P^T?  Enumerates the
// residues once per side and meets the two value sets through a dense table.
inline bool quadric_branch_hit(PrimeLocal& loc, int T, const FieldElement& c0,
                               const FieldElement& c1, const FieldElement& c2) {
  ResidueRing ring(loc.field(), loc.power_lattice(T));
  const long N = ring.size();
  const ResidueRing::Elt r0 = ring.from_element(c0);
  const ResidueRing::Elt r1 = ring.from_element(c1);
  const ResidueRing::Elt r2 = ring.from_element(c2);
  std::vector<char> seen(static_cast<std::size_t>(N), 0);
  for (long idx = 0; idx < N; ++idx) {
    ResidueRing::Elt s = ring.element_at(idx);
    ResidueRing::Elt w = ring.neg(ring.add(r0, ring.mul(r1, ring.mul(s, s))));
    seen[static_cast<std::size_t>(ring.encode(w))] = 1;
  }
  for (long idx = 0; idx < N; ++idx) {
    ResidueRing::Elt t = ring.element_at(idx);
    ResidueRing::Elt w = ring.mul(r2, ring.mul(t, t));
    if (seen[static_cast<std::size_t>(ring.encode(w))]) return true;
  }
  return false;
}

// Even residue characteristic: decide isotropy of x^2 - a y^2 - b z^2
// exactly.  After stripping even powers of the uniformizer (va, vb in {0,1}),
// any primitive zero can be scaled so that some coordinate equals 1, which
// puts it in one of three shapes.  For each shape we search for a solution of
// the congruence mod P^T with T one past twice the valuation of the relevant
// partial derivative (e = v(2), plus va or vb when a or b multiplies the
// squared term): a hit lifts to an exact zero, so no retry ladder is needed,
// and exhausting all three shapes certifies anisotropy.
inline int hilbert_symbol_dyadic(PrimeLocal& loc, const FieldElement& a0, const FieldElement& b0) {
  const NumberField& K = loc.field();
  const int e = loc.prime().e;
  const FieldElement& pi = loc.uniformizer();
  const int tmax = 2 * e + 3;
  int va = loc.val(a0);
  int vb = loc.val(b0);
  FieldElement a = loc.quotient_mod(a0, K.pow(pi, static_cast<unsigned long>(2 * (va / 2))), tmax);
  FieldElement b = loc.quotient_mod(b0, K.pow(pi, static_cast<unsigned long>(2 * (vb / 2))), tmax);
  va %= 2;
  vb %= 2;
  FieldElement na = K.neg(a);
  FieldElement nb = K.neg(b);
  // 1 - a y^2 - b z^2 = 0, lifting in the first coordinate
  if (quadric_branch_hit(loc, 2 * e + 1, K.one(), na, nb)) return 1;
  // x^2 - a - b z^2 = 0, lifting in the second coordinate
  if (quadric_branch_hit(loc, 2 * (e + va) + 1, na, K.one(), nb)) return 1;
  // x^2 - a y^2 - b = 0, lifting in the third coordinate
  if (quadric_branch_hit(loc, 2 * (e + vb) + 1, nb, K.one(), na)) return 1;
  return -1;
}

inline std::vector<long> rational_prime_divisors(mpz_class m) {
  m = abs(m);
  if (m == 0) throw std::invalid_argument("cannot factor zero");
  std::vector<long> out;
  for (mpz_class d = 2; d * d <= m; ++d) {
    if (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
      if (!d.fits_slong_p()) throw std::invalid_argument("prime divisor exceeds machine range");
      out.push_back(d.get_si());
      while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) m /= d;
    }
  }
  if (m > 1) {
    if (!m.fits_slong_p()) throw std::invalid_argument("prime divisor exceeds machine range");
    out.push_back(m.get_si());
  }
  return out;
}

}  // namespace detail

inline int hilbert_symbol_finite(const QuaternionAlgebra& A, const PrimeIdeal& P) {
  if (A.base != P.field) {
    throw std::invalid_argument("prime ideal belongs to a different field");
  }
  PrimeLocal loc(P);
  FieldElement a = detail::integral_square_model(A.a);
  FieldElement b = detail::integral_square_model(A.b);
  if (P.p == 2) return detail::hilbert_symbol_dyadic(loc, a, b);
  return detail::hilbert_symbol_tame(loc, a, b);
}

struct RamificationData {
  std::vector<int> real_places;           // indices of ramified real places, ascending
  std::vector<PrimeIdeal> finite_primes;  // ramified finite primes, by (p, label)

  std::string describe() const {
    std::string s = "{";
    for (std::size_t i = 0; i < real_places.size(); ++i) {
      if (i) s += ",";
      s += "sigma" + std::to_string(real_places[i]);
    }
    s += ";";
    for (std::size_t i = 0; i < finite_primes.size(); ++i) {
      if (i) s += ",";
      s += finite_primes[i].label;
    }
    s += "}";
    return s;
  }
};

// A prime can ramify only if it divides 2ab, so it suffices to test the
// primes over 2 and over the rational prime divisors of N(a) and N(b).
inline RamificationData ramification_set(const QuaternionAlgebra& A,
                                         std::uint64_t seed = kDefaultFactorSeed) {
  const NumberField& K = *A.base;
  RamificationData out;
  for (int place = 0; place < K.degree; ++place) {
    if (ramified_at_real_place(A, place)) out.real_places.push_back(place);
  }
  FieldElement a = detail::integral_square_model(A.a);
  FieldElement b = detail::integral_square_model(A.b);
  std::set<long> candidates{2};
  for (long p : detail::rational_prime_divisors(K.norm(a).get_num())) candidates.insert(p);
  for (long p : detail::rational_prime_divisors(K.norm(b).get_num())) candidates.insert(p);
  for (long p : candidates) {
    for (const PrimeIdeal& P : factor_prime(K, p, seed)) {
      if (hilbert_symbol_finite(A, P) == -1) out.finite_primes.push_back(P);
    }
  }
  if ((out.real_places.size() + out.finite_primes.size()) % 2 != 0) {
    throw ParityViolation("ramification set " + out.describe() + " has odd cardinality");
  }
  return out;
}

inline bool algebras_isomorphic(const QuaternionAlgebra& A, const QuaternionAlgebra& B,
                                std::uint64_t seed = kDefaultFactorSeed) {
  if (A.base != B.base) {
    throw std::invalid_argument("isomorphism test requires a common base field");
  }
  RamificationData ra = ramification_set(A, seed);
  RamificationData rb = ramification_set(B, seed);
  return ra.real_places == rb.real_places && ra.finite_primes == rb.finite_primes;
}

}  // namespace fuchsian
