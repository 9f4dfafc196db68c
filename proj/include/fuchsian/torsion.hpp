// Counting and detecting finite-order elements in the unit groups attached
// to a totally real field with a prescribed finite ramification set.

#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "fuchsian/cmext.hpp"
#include "fuchsian/errors.hpp"
#include "fuchsian/ideals.hpp"
#include "fuchsian/numberfield.hpp"

namespace fuchsian {

// Number of conjugacy classes of order-m finite subgroups from relative
// class data:  (h_minus / unit_index) * prod_P (1 - artin(P)), where the
// Artin symbol of the CM extension is 1 / 0 / -1 for split / ramified /
// inert.  Any split prime kills the count.  The division must be exact.
inline mpz_class torsion_count(const mpz_class& h_minus, long unit_index,
                               const std::vector<SplittingBehavior>& behaviors) {
  if (h_minus < 1 || unit_index < 1) {
    throw std::invalid_argument("torsion_count needs h_minus >= 1 and unit_index >= 1");
  }
  mpz_class num = h_minus;
  for (SplittingBehavior b : behaviors) {
    switch (b) {
      case SplittingBehavior::Split:
        num = 0;
        break;
      case SplittingBehavior::Ramified:
        break;
      case SplittingBehavior::Inert:
        num *= 2;
        break;
    }
  }
  if (!mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(unit_index))) {
    throw HypothesisFails("unit index " + std::to_string(unit_index) +
                          " does not divide the class term " + num.get_str());
  }
  return num / unit_index;
}

// The closed count above needs the ring of integers of k(zeta_2m) to be
// generated over that of k by zeta_2m, with trivial unit index.  That holds
// for m = 2 when 2 does not divide disc(k), and for m = 3 when 3 does not
// divide disc(k); no other case is supported.
inline void require_torsion_basis(const NumberField& K, long m) {
  if (m == 2) {
    if (mpz_divisible_ui_p(K.disc.get_mpz_t(), 2)) {
      throw BasisHypothesisFails("order 2 requires an odd field discriminant");
    }
    return;
  }
  if (m == 3) {
    if (mpz_divisible_ui_p(K.disc.get_mpz_t(), 3)) {
      throw BasisHypothesisFails("order 3 requires a field discriminant prime to 3");
    }
    return;
  }
  throw BasisHypothesisFails("closed torsion count is only available for orders 2 and 3");
}

// Full count for order-m subgroups of the unit group of a maximal order with
// ramification set `ram`: checks the basis hypothesis, derives the splitting
// behavior of every ramified prime in the CM extension, and applies the
// closed count with unit index 1.
struct TorsionProfile {
  long m = 0;
  mpz_class h_minus;
  long unit_index = 1;
  std::vector<SplittingBehavior> behaviors;
  mpz_class count;
};

inline TorsionProfile torsion_count_for_order(const NumberField& K,
                                              const std::vector<PrimeIdeal>& ram, long m,
                                              const mpz_class& h_minus) {
  require_torsion_basis(K, m);
  TorsionProfile t;
  t.m = m;
  t.h_minus = h_minus;
  t.unit_index = 1;
  for (const PrimeIdeal& P : ram) {
    t.behaviors.push_back(splitting_in_cm_extension(K, P, m));
  }
  t.count = torsion_count(h_minus, t.unit_index, t.behaviors);
  return t;
}

// Whether the unit groups attached to (K, ram) contain elements of order m:
// k must contain the real cyclotomic field k_m, and no prime of the finite
// ramification set may split in the CM extension k(zeta_2m) | k.  (The real
// ramified places never split: the CM extension is totally imaginary.)
inline bool has_order_m_elements(const NumberField& K, const std::vector<PrimeIdeal>& ram,
                                 long m) {
  if (!period_admissible(K, m)) return false;
  for (const PrimeIdeal& P : ram) {
    if (splitting_in_cm_extension(K, P, m) == SplittingBehavior::Split) return false;
  }
  return true;
}

}  // namespace fuchsian
