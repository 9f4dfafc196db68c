// Dedekind zeta at 2 by truncated Euler products, unit-group coarea, and
// recognition of real numbers as rational multiples of pi.

#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "fuchsian/errors.hpp"
#include "fuchsian/fppoly.hpp"
#include "fuchsian/ideals.hpp"
#include "fuchsian/numberfield.hpp"

namespace fuchsian {

// Truncated Euler product for zeta_K(2) with a rigorous absolute error bound
// covering the discarded tail (and double-rounding slack).  The value always
// underestimates the limit, and doubling the truncation moves the value by
// less than the stated bound.
struct ZetaValue {
  double value = 0.0;
  double error_bound = 0.0;
  long truncation = 0;
};

inline ZetaValue dedekind_zeta2(const NumberField& K, long truncation = 1000000,
                                uint64_t seed = kDefaultFactorSeed) {
  if (truncation < 2) throw std::invalid_argument("zeta truncation must be at least 2");
  std::vector<bool> composite(static_cast<size_t>(truncation) + 1, false);
  for (long p = 2; p * p <= truncation; ++p) {
    if (composite[p]) continue;
    for (long q = p * p; q <= truncation; q += p) composite[q] = true;
  }

  double value = 1.0;
  for (long p = 2; p <= truncation; ++p) {
    if (composite[p]) continue;
    if (mpz_divisible_ui_p(K.disc.get_mpz_t(), static_cast<unsigned long>(p))) {
      // Finitely many primes divide the discriminant; take the full prime
      // ideal factorization there.
      for (const PrimeIdeal& P : factor_prime(K, p, seed)) {
        value /= 1.0 - std::pow(static_cast<double>(p), -2.0 * P.f);
      }
    } else {
      // Away from the discriminant the defining polynomial is squarefree
      // mod p and residue degrees are read off the distinct-degree split.
      FpPoly fp = fp_from_zpoly(K.f, p);
      for (const auto& [d, count] : fp_degree_pattern(fp)) {
        double factor = 1.0 - std::pow(static_cast<double>(p), -2.0 * d);
        for (long i = 0; i < count; ++i) value /= factor;
      }
    }
  }

  // Tail: each rational prime p > B contributes at most n ideal factors, and
  // -log(1 - p^{-2}) <= p^{-2}(1 + p^{-2}), so the discarded log-mass is at
  // most n * (1 + eps) * sum_{m > B} m^{-2} <= n * (1 + eps) / B.
  ZetaValue z;
  z.value = value;
  double log_tail = 1.0000001 * static_cast<double>(K.degree) / static_cast<double>(truncation);
  z.error_bound = value * (std::expm1(log_tail) + 1e-11);
  z.truncation = truncation;
  return z;
}

// Coarea (covolume) of the unit group attached to the field, its finite
// ramification set, and a zeta value:
//   mu = 8 pi d^{3/2} zeta_K(2) prod_{P in ram} (N(P) - 1) / (4 pi^2)^n.
struct CoareaValue {
  double value = 0.0;
  double error_bound = 0.0;
};

inline CoareaValue coarea(const NumberField& K, const std::vector<PrimeIdeal>& ram_finite,
                          const ZetaValue& zeta) {
  const double pi = std::numbers::pi;
  double prefactor = 8.0 * pi * std::pow(K.disc.get_d(), 1.5) /
                     std::pow(4.0 * pi * pi, static_cast<double>(K.degree));
  for (const PrimeIdeal& P : ram_finite) {
    prefactor *= P.norm.get_d() - 1.0;
  }
  CoareaValue out;
  out.value = prefactor * zeta.value;
  out.error_bound = prefactor * zeta.error_bound * 1.0000001 + std::fabs(out.value) * 1e-12;
  return out;
}

// The unique rational p/q with q <= max_denominator such that x is within
// err of (p/q) pi, when one exists.  Returns nullopt when no such rational
// fits; throws AmbiguousRecognition when two distinct rationals fit (which
// cannot happen if err < pi / (2 max_denominator^2)).
inline std::optional<mpq_class> recognize_pi_multiple(double x, double err, long max_denominator) {
  if (err < 0.0 || max_denominator < 1) {
    throw std::invalid_argument("recognize_pi_multiple needs err >= 0 and max_denominator >= 1");
  }
  const double lo = (x - err) / std::numbers::pi;
  const double hi = (x + err) / std::numbers::pi;
  std::optional<mpq_class> found;
  for (long q = 1; q <= max_denominator; ++q) {
    const long pmin = static_cast<long>(std::ceil(lo * static_cast<double>(q)));
    const long pmax = static_cast<long>(std::floor(hi * static_cast<double>(q)));
    for (long p = pmin; p <= pmax; ++p) {
      mpq_class cand(p, q);
      cand.canonicalize();
      if (found && *found != cand) {
        throw AmbiguousRecognition("both " + found->get_str() + " and " + cand.get_str() +
                                   " match within the stated error");
      }
      found = cand;
    }
  }
  return found;
}

}  // namespace fuchsian
