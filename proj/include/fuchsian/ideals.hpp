// Prime ideals of the ring of integers, local valuations, residue fields,
// and splitting behavior in the quadratic extensions k(zeta_2m) | k.
//
// Every field we construct is monogenic with the power basis as an integral
// basis (enforced by the discriminant check in NumberField), so Dedekind's
// factorization criterion is unconditional: the shape of the minimal
// polynomial mod p is the shape of pR.
//
// Splitting in k(zeta_2m)|k is the splitting of the quadratic k(sqrt(D)) with
// D = w^2 - 4 for a root w of the trace polynomial of 2cos(pi/m).  At odd
// residue characteristic this reduces to a valuation parity check plus an
// Euler-criterion square test in the residue field.  At even residue
// characteristic we compute the quadratic defect of the unit part by direct
// enumeration modulo P^(2e+1): defect 2e+1 means square (split), defect
// exactly 2e means unramified non-square (inert), anything lower ramified.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuchsian/cmext.hpp"
#include "fuchsian/errors.hpp"
#include "fuchsian/fppoly.hpp"
#include "fuchsian/linalg.hpp"
#include "fuchsian/numberfield.hpp"

namespace fuchsian {

inline constexpr std::uint64_t kDefaultFactorSeed = 0x66756373ULL;

enum class SplittingBehavior { Split, Inert, Ramified };

inline const char* to_string(SplittingBehavior b) {
  switch (b) {
    case SplittingBehavior::Split: return "split";
    case SplittingBehavior::Inert: return "inert";
    default: return "ramified";
  }
}

struct PrimeIdeal {
  const NumberField* field = nullptr;
  long p = 0;          // rational prime below
  int e = 0;           // ramification index
  int f = 0;           // residue degree
  ZPoly gpoly;         // monic lift of the factor polynomial, coeffs in [0,p)
  mpz_class norm;      // p^f
  std::string label;   // "P2", or "P2a"/"P2b"/... when p splits

  bool operator==(const PrimeIdeal& o) const {
    return field == o.field && p == o.p && gpoly == o.gpoly;
  }
  bool operator!=(const PrimeIdeal& o) const { return !(*this == o); }
  const std::string& str() const { return label; }
  std::string describe() const {
    return label + "(p=" + std::to_string(p) + ", e=" + std::to_string(e) +
           ", f=" + std::to_string(f) + ", N=" + norm.get_str() + ")";
  }
};

inline FpPoly fp_from_zpoly(const ZPoly& a, std::uint64_t p) {
  FpPoly r{p, {}};
  r.c.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r.c[i] = mpz_fdiv_ui(a[i].get_mpz_t(), static_cast<unsigned long>(p));
  }
  fp_trim(r);
  return r;
}

inline ZPoly lift_fppoly(const FpPoly& a) {
  ZPoly r(a.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = mpz_class(static_cast<unsigned long>(a.c[i]));
  return r;
}

// Complete factorization over F_p into monic irreducibles with multiplicity,
// canonically ordered (degree, then coefficients).
inline std::vector<std::pair<FpPoly, int>> finite_field_factor(
    const FpPoly& g, std::uint64_t seed = kDefaultFactorSeed) {
  return fp_factor(g, seed);
}

// Primes above p via Dedekind's criterion (unconditional here: the power
// basis is an integral basis).  Order and labels follow the canonical factor
// order; a single prime above p is labeled "P<p>", several get "P<p>a", ...
inline std::vector<PrimeIdeal> factor_prime(const NumberField& K, long p,
                                            std::uint64_t seed = kDefaultFactorSeed) {
  FpPoly fmodp = fp_from_zpoly(K.f, static_cast<std::uint64_t>(p));
  auto factors = finite_field_factor(fmodp, seed);
  std::vector<PrimeIdeal> out;
  out.reserve(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    PrimeIdeal P;
    P.field = &K;
    P.p = p;
    P.f = fp_deg(factors[i].first);
    P.e = factors[i].second;
    P.gpoly = lift_fppoly(factors[i].first);
    mpz_ui_pow_ui(P.norm.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(P.f));
    P.label = "P" + std::to_string(p);
    if (factors.size() > 1) P.label += static_cast<char>('a' + i);
    out.push_back(std::move(P));
  }
  return out;
}

// Local arithmetic at one prime: valuation lattices P^t in exact power-basis
// coordinates, a uniformizer, the residue field F_p[x]/(g), coset
// enumeration, and exact division with controlled precision.
class PrimeLocal {
 public:
  explicit PrimeLocal(const PrimeIdeal& P) : K_(P.field), P_(P) {
    const int n = K_->degree;
    powers_.push_back(z_identity(n));
    // P = pR + g(alpha)R: generated as a Z-module by p*alpha^i and
    // g(alpha)*alpha^i.
    FieldElement galpha = K_->eval_poly(q_poly(P.gpoly), K_->alpha());
    ZMat rows;
    for (int i = 0; i < n; ++i) {
      ZVec r(n, 0);
      r[i] = P.p;
      rows.push_back(std::move(r));
    }
    FieldElement pw = K_->one();
    for (int i = 0; i < n; ++i) {
      rows.push_back(K_->mul(galpha, pw).int_coords());
      pw = K_->mul(pw, K_->alpha());
    }
    powers_.push_back(hnf_rows(rows));
    gfp_ = fp_from_zpoly(P.gpoly, static_cast<std::uint64_t>(P.p));
  }

  const PrimeIdeal& prime() const { return P_; }
  const NumberField& field() const { return *K_; }

  FieldElement element_from(const ZVec& coords) const {
    QVec c(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) c[i] = mpq_class(coords[i]);
    return K_->element(std::move(c));
  }

  // HNF basis of P^t as a Z-lattice.
  const ZMat& power_lattice(int t) {
    while (static_cast<int>(powers_.size()) <= t) {
      const ZMat& prev = powers_.back();
      const ZMat& first = powers_[1];
      ZMat rows;
      rows.reserve(prev.size() * first.size());
      for (const ZVec& a : prev) {
        FieldElement ea = element_from(a);
        for (const ZVec& b : first) {
          rows.push_back(K_->mul(ea, element_from(b)).int_coords());
        }
      }
      powers_.push_back(hnf_rows(rows));
    }
    return powers_[t];
  }

  // Valuation of the element with the given integer coordinates; a zero
  // vector (or a valuation reaching `cap` >= 0) reports `cap`.
  int val_int(const ZVec& coords, int cap = -1) {
    bool zero = true;
    for (const auto& c : coords) {
      if (c != 0) {
        zero = false;
        break;
      }
    }
    if (zero) {
      if (cap < 0) throw DivisionByZero("valuation of zero");
      return cap;
    }
    int t = 0;
    while (cap < 0 || t < cap) {
      if (!hnf_contains(power_lattice(t + 1), coords)) break;
      ++t;
    }
    return t;
  }

  int val(const FieldElement& x, int cap = -1) { return val_int(x.int_coords(), cap); }

  // An element of P \ P^2.
  const FieldElement& uniformizer() {
    if (!pi_) {
      for (const ZVec& row : power_lattice(1)) {
        if (val_int(row, 2) == 1) {
          pi_ = element_from(row);
          break;
        }
      }
      if (!pi_) throw Error("no uniformizer among lattice basis rows");
    }
    return *pi_;
  }

  // Image of an integral element in the residue field F_p[x]/(g).
  FpPoly residue(const FieldElement& x) const {
    ZVec coords = x.int_coords();
    FpPoly r{static_cast<std::uint64_t>(P_.p), {}};
    r.c.resize(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      r.c[i] = mpz_fdiv_ui(coords[i].get_mpz_t(), static_cast<unsigned long>(P_.p));
    }
    fp_trim(r);
    return fp_rem(r, gfp_);
  }

  // Euler-criterion square test for a nonzero residue; in characteristic 2
  // every residue is a square (the Frobenius is onto).
  bool residue_is_square(const FpPoly& r) const {
    if (fp_is_zero(r)) throw DivisionByZero("square test for the zero residue");
    if (P_.p == 2) return true;
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(P_.p),
                  static_cast<unsigned long>(P_.f));
    e = (e - 1) / 2;
    FpPoly pw = fp_powmod_poly(r, e, gfp_);
    return fp_deg(pw) == 0 && pw.c[0] == 1;
  }

  // Exhaustive square test (for cross-checking the Euler criterion).
  bool residue_is_square_exhaustive(const FpPoly& r) const {
    const std::uint64_t p = static_cast<std::uint64_t>(P_.p);
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(P_.f), 0);
    while (true) {
      FpPoly s{p, digits};
      fp_trim(s);
      if (fp_equal(fp_rem(fp_mul(s, s), gfp_), r)) return true;
      std::size_t i = 0;
      for (; i < digits.size(); ++i) {
        if (++digits[i] < p) break;
        digits[i] = 0;
      }
      if (i == digits.size()) return false;
    }
  }

  // Coset representatives of P^t in R: with the HNF basis upper triangular,
  // the box below its diagonal is an exact transversal.
  std::vector<ZVec> residues(int t) {
    const ZMat& h = power_lattice(t);
    const int n = K_->degree;
    std::vector<long> dims(n);
    long total = 1;
    for (int i = 0; i < n; ++i) {
      dims[i] = static_cast<long>(h[i][i].get_si());
      total *= dims[i];
    }
    std::vector<ZVec> out;
    out.reserve(total);
    ZVec cur(n, 0);
    std::vector<long> digit(n, 0);
    while (true) {
      for (int i = 0; i < n; ++i) cur[i] = digit[i];
      out.push_back(cur);
      int i = 0;
      for (; i < n; ++i) {
        if (++digit[i] < dims[i]) break;
        digit[i] = 0;
      }
      if (i == n) break;
    }
    return out;
  }

  // Integral u with u = num/den mod P^t (i.e. u*den = num mod P^(t+v(den))).
  // Requires val(num) >= val(den); solvability elsewhere is arranged by CRT.
  FieldElement quotient_mod(const FieldElement& num, const FieldElement& den, int t) {
    const int n = K_->degree;
    const int vden = val(den);
    const ZMat& L = power_lattice(t + vden);
    QMat A = K_->mult_matrix(den);
    ZMat M = zmat(n, 2 * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const mpq_class& a = A[i][j];
        if (a.get_den() != 1) throw NotIntegral("denominator in multiplication matrix");
        M[i][j] = a.get_num();
        M[i][n + j] = L[j][i];
      }
    }
    auto sol = z_solve(M, num.int_coords());
    if (!sol) throw Error("local division has no integral solution");
    ZVec u(sol->begin(), sol->begin() + n);
    return element_from(u);
  }

  // Quadratic defect of an integral element with even valuation 2s at an even
  // prime: the largest t <= 2e+1 such that x^2 = D/pi^(2s) mod P^t has a
  // solution.  2e+1 certifies a local square.
  int quadratic_defect(const FieldElement& D) {
    const int cap = 2 * P_.e + 1;
    const int v = val(D);
    if (v % 2 != 0) throw ParityViolation("defect needs even valuation");
    FieldElement u = quotient_mod(D, K_->pow(uniformizer(), v), cap);
    int best = 0;
    for (const ZVec& xc : residues(cap)) {
      FieldElement x = element_from(xc);
      FieldElement diff = K_->sub(K_->mul(x, x), u);
      int d = val_int(diff.int_coords(), cap);
      if (d > best) {
        best = d;
        if (best >= cap) break;
      }
    }
    return best;
  }

 private:
  const NumberField* K_;
  PrimeIdeal P_;
  std::vector<ZMat> powers_;
  std::optional<FieldElement> pi_;
  FpPoly gfp_;
};

// Splitting of P in the quadratic extension k(sqrt(D)) | k for a nonzero,
// nonsquare, integral D.
inline SplittingBehavior splitting_of_quadratic(const PrimeIdeal& P, const FieldElement& D) {
  PrimeLocal loc(P);
  const int v = loc.val(D);
  if (v % 2 != 0) return SplittingBehavior::Ramified;
  if (P.p != 2) {
    FieldElement u = loc.quotient_mod(D, P.field->pow(loc.uniformizer(), v), 1);
    return loc.residue_is_square(loc.residue(u)) ? SplittingBehavior::Split
                                                 : SplittingBehavior::Inert;
  }
  const int d = loc.quadratic_defect(D);
  if (d >= 2 * P.e + 1) return SplittingBehavior::Split;
  if (d == 2 * P.e) return SplittingBehavior::Inert;
  return SplittingBehavior::Ramified;
}

// Behavior of P in k(zeta_2m) | k, via D = w^2 - 4 for a root w of the trace
// polynomial of 2cos(pi/m).  (For m = 2 and 3 this is D = -4 and -3, the
// classical k(i) and k(omega) cases.)  Throws PeriodNotSupported when k_m is
// not a subfield.
inline SplittingBehavior splitting_in_cm_extension(const NumberField& K, const PrimeIdeal& P,
                                                   long m) {
  auto w = find_psi_root(K, m);
  if (!w) throw PeriodNotSupported("k_m is not a subfield for m=" + std::to_string(m));
  FieldElement D = K.sub(K.mul(*w, *w), K.element_rational(4));
  return splitting_of_quadratic(P, D);
}

// All primes of norm <= B, ordered by rational prime then label.
inline std::vector<PrimeIdeal> all_primes_up_to(const NumberField& K, long B,
                                                std::uint64_t seed = kDefaultFactorSeed) {
  std::vector<PrimeIdeal> out;
  std::vector<bool> composite(static_cast<std::size_t>(B) + 1, false);
  for (long p = 2; p <= B; ++p) {
    if (composite[p]) continue;
    for (long q = p * p; q <= B; q += p) composite[q] = true;
    for (PrimeIdeal& P : factor_prime(K, p, seed)) {
      if (P.norm <= B) out.push_back(std::move(P));
    }
  }
  return out;
}

// Number of nonzero ideals of norm <= B, assembled multiplicatively from the
// prime factorizations.
inline long count_ideals_up_to(const NumberField& K, long B) {
  std::vector<long> norms;
  for (const PrimeIdeal& P : all_primes_up_to(K, B)) norms.push_back(P.norm.get_si());
  std::sort(norms.begin(), norms.end());
  std::function<long(std::size_t, long)> rec = [&](std::size_t i, long rem) -> long {
    if (i == norms.size() || norms[i] > rem) return 1;
    long total = rec(i + 1, rem);  // exponent 0
    long pw = norms[i];
    while (pw <= rem) {
      total += rec(i + 1, rem / pw);
      if (pw > rem / norms[i]) break;
      pw *= norms[i];
    }
    return total;
  };
  return rec(0, B);
}

}  // namespace fuchsian
