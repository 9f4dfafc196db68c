// Univariate polynomial arithmetic and factorization over prime fields F_p.
//
// Polynomials are dense coefficient vectors in ascending order with entries
// reduced mod p.  The modulus is restricted to p < 2^31 so that products fit
// comfortably in 64 bits and sums of products in 128 bits; every prime we
// ever factor against is far below that.
//
// Factorization is the classical chain: squarefree split (including the
// p-th-power case in characteristic p), distinct-degree factorization, and
// randomized equal-degree splitting.  The random stream for the equal-degree
// stage is derived deterministically from the seed and the input polynomial,
// so results are reproducible and independent of call order.

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "fuchsian/errors.hpp"

namespace fuchsian {

struct FpPoly {
  std::uint64_t p = 2;
  std::vector<std::uint64_t> c;  // ascending, entries in [0, p)
};

inline void fp_trim(FpPoly& a) {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

inline int fp_deg(const FpPoly& a) { return static_cast<int>(a.c.size()) - 1; }

inline bool fp_is_zero(const FpPoly& a) { return a.c.empty(); }

inline FpPoly fp_zero(std::uint64_t p) { return FpPoly{p, {}}; }

inline FpPoly fp_const(std::uint64_t p, std::uint64_t v) {
  FpPoly r{p, {v % p}};
  fp_trim(r);
  return r;
}

inline FpPoly fp_x(std::uint64_t p) { return FpPoly{p, {0, 1}}; }

inline bool fp_equal(const FpPoly& a, const FpPoly& b) { return a.c == b.c; }

inline std::uint64_t fp_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t fp_powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = fp_mulmod(r, a, p);
    a = fp_mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DivisionByZero("inverse of zero in F_p");
  return fp_powmod(a, p - 2, p);
}

inline FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
  FpPoly r{a.p, {}};
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % a.p;
  fp_trim(r);
  return r;
}

inline FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
  FpPoly r{a.p, {}};
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + a.p - b.c[i]) % a.p;
  fp_trim(r);
  return r;
}

inline FpPoly fp_scale(const FpPoly& a, std::uint64_t s) {
  s %= a.p;
  FpPoly r{a.p, a.c};
  for (auto& x : r.c) x = fp_mulmod(x, s, a.p);
  fp_trim(r);
  return r;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  if (fp_is_zero(a) || fp_is_zero(b)) return fp_zero(a.p);
  FpPoly r{a.p, std::vector<std::uint64_t>(a.c.size() + b.c.size() - 1, 0)};
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    unsigned __int128 ai = a.c[i];
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      r.c[i + j] = static_cast<std::uint64_t>((ai * b.c[j] + r.c[i + j]) % a.p);
    }
  }
  fp_trim(r);
  return r;
}

// Remainder of a modulo b (b nonzero); quotient discarded.
inline FpPoly fp_rem(FpPoly a, const FpPoly& b) {
  if (fp_is_zero(b)) throw DivisionByZero("polynomial remainder by zero");
  const std::uint64_t p = a.p;
  const std::uint64_t linv = fp_inv(b.c.back(), p);
  while (!fp_is_zero(a) && a.c.size() >= b.c.size()) {
    std::uint64_t q = fp_mulmod(a.c.back(), linv, p);
    std::size_t shift = a.c.size() - b.c.size();
    for (std::size_t i = 0; i < b.c.size(); ++i) {
      std::uint64_t t = fp_mulmod(q, b.c[i], p);
      a.c[shift + i] = (a.c[shift + i] + p - t) % p;
    }
    fp_trim(a);
  }
  return a;
}

inline FpPoly fp_divexact(FpPoly a, const FpPoly& b) {
  if (fp_is_zero(b)) throw DivisionByZero("polynomial division by zero");
  const std::uint64_t p = a.p;
  const std::uint64_t linv = fp_inv(b.c.back(), p);
  FpPoly q{p, {}};
  if (a.c.size() < b.c.size()) {
    if (!fp_is_zero(a)) throw DivisionByZero("inexact polynomial division");
    return q;
  }
  q.c.assign(a.c.size() - b.c.size() + 1, 0);
  while (!fp_is_zero(a) && a.c.size() >= b.c.size()) {
    std::uint64_t qc = fp_mulmod(a.c.back(), linv, p);
    std::size_t shift = a.c.size() - b.c.size();
    q.c[shift] = qc;
    for (std::size_t i = 0; i < b.c.size(); ++i) {
      std::uint64_t t = fp_mulmod(qc, b.c[i], p);
      a.c[shift + i] = (a.c[shift + i] + p - t) % p;
    }
    fp_trim(a);
  }
  if (!fp_is_zero(a)) throw DivisionByZero("inexact polynomial division");
  fp_trim(q);
  return q;
}

inline FpPoly fp_monic(const FpPoly& a) {
  if (fp_is_zero(a)) return a;
  return fp_scale(a, fp_inv(a.c.back(), a.p));
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b) {
  while (!fp_is_zero(b)) {
    FpPoly r = fp_rem(a, b);
    a = b;
    b = r;
  }
  return fp_monic(a);
}

inline FpPoly fp_derivative(const FpPoly& a) {
  FpPoly r{a.p, {}};
  if (a.c.size() <= 1) return r;
  r.c.resize(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) {
    r.c[i - 1] = fp_mulmod(a.c[i], i % a.p, a.p);
  }
  fp_trim(r);
  return r;
}

// base^e mod m with an arbitrary-precision exponent.
inline FpPoly fp_powmod_poly(FpPoly base, const mpz_class& e, const FpPoly& m) {
  FpPoly r = fp_const(base.p, 1);
  base = fp_rem(base, m);
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = fp_rem(fp_mul(r, base), m);
    base = fp_rem(fp_mul(base, base), m);
    k >>= 1;
  }
  return r;
}

// When f' = 0 in characteristic p, f(x) = h(x)^p with h read off every p-th
// coefficient (the Frobenius is the identity on F_p).
inline FpPoly fp_pth_root(const FpPoly& f) {
  FpPoly h{f.p, {}};
  for (std::size_t i = 0; i < f.c.size(); i += f.p) h.c.push_back(f.c[i]);
  fp_trim(h);
  return h;
}

// Deterministic per-call random stream: splitmix64 seeded from the caller's
// seed mixed with the modulus and the polynomial being split.
class FpRng {
 public:
  FpRng(std::uint64_t seed, const FpPoly& f) {
    state_ = seed ^ (0x9e3779b97f4a7c15ULL * (f.p + 0x100000001b3ULL));
    for (std::uint64_t v : f.c) state_ = (state_ ^ v) * 0x100000001b3ULL + 0x9e3779b9ULL;
  }
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  FpPoly random_poly(std::uint64_t p, int max_deg) {
    FpPoly r{p, {}};
    r.c.resize(static_cast<std::size_t>(max_deg) + 1);
    for (auto& x : r.c) x = next() % p;
    fp_trim(r);
    return r;
  }

 private:
  std::uint64_t state_;
};

namespace detail {

// Equal-degree splitting of a monic squarefree product of irreducibles all of
// degree d.  Cantor–Zassenhaus for odd p; the trace construction for p = 2.
inline void fp_edf(const FpPoly& h, int d, FpRng& rng, std::vector<FpPoly>& out) {
  if (fp_deg(h) == d) {
    out.push_back(h);
    return;
  }
  const std::uint64_t p = h.p;
  FpPoly g = fp_const(p, 1);
  while (fp_deg(g) <= 0 || fp_deg(g) >= fp_deg(h)) {
    FpPoly a = rng.random_poly(p, fp_deg(h) - 1);
    if (fp_deg(a) < 1) continue;
    g = fp_gcd(h, a);
    if (fp_deg(g) > 0 && fp_deg(g) < fp_deg(h)) break;  // lucky common factor
    if (p == 2) {
      // Trace map T(a) = a + a^2 + a^4 + ... + a^(2^(d-1)) mod h.
      FpPoly t = fp_zero(p);
      FpPoly w = fp_rem(a, h);
      for (int i = 0; i < d; ++i) {
        t = fp_add(t, w);
        w = fp_rem(fp_mul(w, w), h);
      }
      g = fp_gcd(h, t);
    } else {
      mpz_class e;
      mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
      e = (e - 1) / 2;
      FpPoly b = fp_powmod_poly(a, e, h);
      b = fp_sub(b, fp_const(p, 1));
      g = fp_gcd(h, b);
    }
  }
  fp_edf(g, d, rng, out);
  fp_edf(fp_divexact(h, g), d, rng, out);
}

}  // namespace detail

// Irreducible factors (all monic, each exactly once) of a monic squarefree f.
inline std::vector<FpPoly> fp_factor_squarefree(const FpPoly& f, std::uint64_t seed) {
  std::vector<FpPoly> out;
  FpPoly w = fp_monic(f);
  if (fp_deg(w) <= 0) return out;
  FpRng rng(seed, w);
  const std::uint64_t p = w.p;
  // Distinct-degree stage: peel off the product of all irreducible factors of
  // degree d for d = 1, 2, ...
  FpPoly frob = fp_powmod_poly(fp_x(p), mpz_class(static_cast<unsigned long>(p)), w);
  FpPoly t = frob;  // x^(p^d) mod w, starting at d = 1
  for (int d = 1; 2 * d <= fp_deg(w); ++d) {
    FpPoly h = fp_gcd(w, fp_sub(t, fp_x(p)));
    if (fp_deg(h) > 0) {
      detail::fp_edf(h, d, rng, out);
      w = fp_divexact(w, h);
      if (fp_deg(w) <= 0) break;
      t = fp_rem(t, w);
    }
    t = fp_powmod_poly(t, mpz_class(static_cast<unsigned long>(p)), w);
  }
  if (fp_deg(w) > 0) out.push_back(w);
  return out;
}

// Multiset of factor degrees of a monic squarefree f: pairs (d, count) with
// count = number of irreducible factors of degree d.  Distinct-degree stage
// only — no equal-degree splitting — so it is cheap enough for zeta sums.
inline std::vector<std::pair<int, int>> fp_degree_pattern(const FpPoly& f) {
  std::vector<std::pair<int, int>> out;
  FpPoly w = fp_monic(f);
  const std::uint64_t p = w.p;
  FpPoly t = fp_powmod_poly(fp_x(p), mpz_class(static_cast<unsigned long>(p)), w);
  for (int d = 1; 2 * d <= fp_deg(w); ++d) {
    FpPoly h = fp_gcd(w, fp_sub(t, fp_x(p)));
    if (fp_deg(h) > 0) {
      out.emplace_back(d, fp_deg(h) / d);
      w = fp_divexact(w, h);
      if (fp_deg(w) <= 0) break;
      t = fp_rem(t, w);
    }
    t = fp_powmod_poly(t, mpz_class(static_cast<unsigned long>(p)), w);
  }
  if (fp_deg(w) > 0) out.emplace_back(fp_deg(w), 1);
  return out;
}

inline bool fp_is_squarefree(const FpPoly& f) {
  FpPoly d = fp_derivative(f);
  if (fp_is_zero(d)) return fp_deg(f) <= 0;
  return fp_deg(fp_gcd(f, d)) == 0;
}

// Canonical order on monic factors: by degree, then coefficient vectors
// lexicographically (constant term first).
inline bool fp_factor_less(const FpPoly& a, const FpPoly& b) {
  if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  }
  return false;
}

// Complete factorization of a nonzero polynomial into monic irreducibles with
// multiplicities, sorted canonically.  The leading coefficient is dropped
// (callers factor monic inputs; for others the unit is irrelevant to us).
inline std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f_in, std::uint64_t seed) {
  if (fp_is_zero(f_in)) throw DivisionByZero("factorization of the zero polynomial");
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly f = fp_monic(f_in);
  int outer_mult = 1;  // accumulated p-th-root exponent
  while (fp_deg(f) > 0) {
    FpPoly d = fp_derivative(f);
    if (fp_is_zero(d)) {
      f = fp_pth_root(f);
      outer_mult *= static_cast<int>(f.p);
      continue;
    }
    // Squarefree part: contains every irreducible factor whose multiplicity
    // is not divisible by p; the leftover after dividing those out has zero
    // derivative and re-enters the p-th-root branch above.
    FpPoly w = fp_divexact(f, fp_gcd(f, d));
    std::vector<FpPoly> irr = fp_factor_squarefree(w, seed);
    for (const FpPoly& q : irr) {
      int m = 0;
      while (true) {
        FpPoly r = fp_rem(f, q);
        if (!fp_is_zero(r)) break;
        f = fp_divexact(f, q);
        ++m;
      }
      out.emplace_back(q, m * outer_mult);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return fp_factor_less(a.first, b.first); });
  return out;
}

}  // namespace fuchsian
