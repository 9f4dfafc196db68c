#pragma once
// Totally real number fields K = Q[x]/(f) with exact element arithmetic on
// the power basis, certified real embeddings (every embedding is tracked as a
// shrinking rational interval around one real root of f), traces, norms, and
// square reconstruction.  All catalog fields are monogenic, so the power
// basis is an integral basis and integrality is coordinate integrality.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fuchsian/errors.hpp"
#include "fuchsian/linalg.hpp"
#include "fuchsian/poly.hpp"

namespace fuchsian {

class NumberField;

struct FieldElement {
  const NumberField* field = nullptr;
  QVec c;  // coordinates on 1, alpha, ..., alpha^(n-1)

  FieldElement() = default;
  FieldElement(const NumberField* k, QVec coords)
      : field(k), c(std::move(coords)) {}

  bool is_zero() const {
    for (const auto& x : c)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0) return false;
    return true;
  }
  bool is_integral() const {
    for (const auto& x : c)
      if (x.get_den() != 1) return false;
    return true;
  }
  ZVec int_coords() const {
    ZVec out(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i].get_den() != 1) throw NotIntegral("non-integral coordinates");
      out[i] = c[i].get_num();
    }
    return out;
  }
  mpz_class denominator() const {
    mpz_class d = 1;
    for (const auto& x : c) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(),
                                    x.get_den().get_mpz_t());
    return d;
  }
  std::string str() const {
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += c[i].get_str();
    }
    return s;
  }
  bool operator==(const FieldElement& o) const { return c == o.c; }
  bool operator!=(const FieldElement& o) const { return c != o.c; }
};

class NumberField {
 public:
  ZPoly f;        // monic defining polynomial, ascending coefficients
  QPoly fq;       // same with rational coefficients
  int degree;
  mpz_class disc;
  std::string label;

  // Creates the field, verifying the advertised invariants:
  //   * monic integer polynomial whose discriminant matches expected_disc,
  //   * irreducible over Q (certified via factor-coefficient intervals),
  //   * totally real (as many real roots as the degree).
  NumberField(ZPoly poly, const mpz_class& expected_disc,
              std::string name = "")
      : f(std::move(poly)), degree(static_cast<int>(f.size()) - 1),
        label(std::move(name)) {
    if (degree < 1 || f.back() != 1)
      throw Reducible("defining polynomial must be monic of degree >= 1");
    fq = q_poly(f);
    disc = z_discriminant(f);
    if (disc != expected_disc)
      throw DiscriminantMismatch("discriminant " + disc.get_str() +
                                 " != expected " + expected_disc.get_str());
    if (disc == 0) throw Reducible("repeated roots");
    if (count_real_roots(fq) != degree)
      throw NotTotallyReal("field is not totally real");
    roots_ = isolate_real_roots(fq);
    if (static_cast<int>(roots_.size()) != degree)
      throw NotTotallyReal("expected as many real roots as the degree");
    certify_irreducible();
    // Reduction table: alpha^(degree+k) as a combination of lower powers.
    QPoly reduce(fq.begin(), fq.end() - 1);
    for (auto& x : reduce) x = -x;
    power_reduction_.push_back(reduce);  // alpha^degree
    for (int k = 1; k < degree - 1; ++k) {
      QPoly next(degree, 0);
      const QPoly& prev = power_reduction_.back();
      // multiply prev by alpha
      for (int i = 0; i < degree - 1; ++i) next[i + 1] = prev[i];
      if (prev[degree - 1] != 0)
        for (int i = 0; i < degree; ++i)
          next[i] += prev[degree - 1] * power_reduction_[0][i];
      power_reduction_.push_back(next);
    }
  }

  NumberField(const NumberField&) = delete;
  NumberField& operator=(const NumberField&) = delete;

  int n_real_places() const { return degree; }

  FieldElement zero() const { return {this, QVec(degree, 0)}; }
  FieldElement one() const { return element_rational(1); }
  FieldElement element_rational(const mpq_class& q) const {
    QVec c(degree, 0);
    c[0] = q;
    return {this, c};
  }
  FieldElement alpha() const {
    QVec c(degree, 0);
    if (degree == 1)
      c[0] = 0;  // the defining polynomial is x, so alpha = 0
    else
      c[1] = 1;
    return {this, c};
  }
  FieldElement element(QVec coords) const {
    if (static_cast<int>(coords.size()) != degree)
      throw Error("coordinate length mismatch");
    return {this, std::move(coords)};
  }
  FieldElement element_int(const std::vector<long>& coords) const {
    QVec c(degree, 0);
    for (size_t i = 0; i < coords.size() && i < c.size(); ++i) c[i] = coords[i];
    return {this, c};
  }

  // --- arithmetic -----------------------------------------------------------

  FieldElement add(const FieldElement& a, const FieldElement& b) const {
    QVec c(degree);
    for (int i = 0; i < degree; ++i) c[i] = a.c[i] + b.c[i];
    return {this, std::move(c)};
  }
  FieldElement sub(const FieldElement& a, const FieldElement& b) const {
    QVec c(degree);
    for (int i = 0; i < degree; ++i) c[i] = a.c[i] - b.c[i];
    return {this, std::move(c)};
  }
  FieldElement neg(const FieldElement& a) const {
    QVec c(degree);
    for (int i = 0; i < degree; ++i) c[i] = -a.c[i];
    return {this, std::move(c)};
  }
  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    QVec prod(2 * degree - 1, 0);
    for (int i = 0; i < degree; ++i) {
      if (a.c[i] == 0) continue;
      for (int j = 0; j < degree; ++j)
        if (b.c[j] != 0) prod[i + j] += a.c[i] * b.c[j];
    }
    QVec c(prod.begin(), prod.begin() + degree);
    for (int k = 0; k < degree - 1; ++k) {
      const mpq_class& top = prod[degree + k];
      if (top == 0) continue;
      const QPoly& red = power_reduction_[k];
      for (int i = 0; i < degree; ++i) c[i] += top * red[i];
    }
    return {this, std::move(c)};
  }
  FieldElement mul_scalar(const FieldElement& a, const mpq_class& s) const {
    QVec c(degree);
    for (int i = 0; i < degree; ++i) c[i] = a.c[i] * s;
    return {this, std::move(c)};
  }

  // Matrix of multiplication by x on the power basis; column j holds the
  // coordinates of x * alpha^j.
  QMat mult_matrix(const FieldElement& x) const {
    QMat m = qmat(degree, degree);
    FieldElement cur = x;
    for (int j = 0; j < degree; ++j) {
      for (int i = 0; i < degree; ++i) m[i][j] = cur.c[i];
      if (j + 1 < degree) cur = mul(cur, alpha());
    }
    return m;
  }

  mpq_class trace(const FieldElement& x) const {
    QMat m = mult_matrix(x);
    mpq_class t = 0;
    for (int i = 0; i < degree; ++i) t += m[i][i];
    return t;
  }
  mpq_class norm(const FieldElement& x) const { return q_det(mult_matrix(x)); }

  FieldElement inv(const FieldElement& x) const {
    if (x.is_zero()) throw DivisionByZero("inverse of zero");
    QMat m = mult_matrix(x);
    QVec e0(degree, 0);
    e0[0] = 1;
    return {this, q_solve(std::move(m), std::move(e0))};
  }
  FieldElement div(const FieldElement& a, const FieldElement& b) const {
    return mul(a, inv(b));
  }
  FieldElement pow(FieldElement base, unsigned long e) const {
    FieldElement acc = one();
    while (e) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  FieldElement eval_poly(const QPoly& p, const FieldElement& x) const {
    FieldElement v = zero();
    for (size_t i = p.size(); i-- > 0;) {
      v = mul(v, x);
      v.c[0] += p[i];
    }
    return v;
  }

  // --- embeddings -----------------------------------------------------------

  // Isolating interval of the `place`-th real embedding of alpha (embeddings
  // are ordered by the ascending real roots of f), refined below `width`.
  QInterval root_interval(int place, const mpq_class& width) const {
    refine_root(fq, roots_[place], width);
    return {roots_[place].lo, roots_[place].hi};
  }

  // Certified enclosure of the image of x under the `place`-th embedding.
  QInterval embed(const FieldElement& x, int place,
                  const mpq_class& width) const {
    mpq_class root_width = width;
    for (int rounds = 0; rounds < 64; ++rounds) {
      QInterval r = root_interval(place, root_width);
      QInterval v = poly_eval_interval(x.c, r);
      if (v.width() <= width) return v;
      root_width /= 1024;
    }
    throw PrecisionExhausted("embedding refinement stalled");
  }

  // Sign of the `place`-th embedding of x (+1/-1; 0 only for x == 0).
  int sign_at(const FieldElement& x, int place) const {
    if (x.is_zero()) return 0;
    mpq_class width(1, 16);
    for (int rounds = 0; rounds < 256; ++rounds) {
      QInterval v = poly_eval_interval(x.c, root_interval(place, width));
      if (v.sign() != 0) return v.sign();
      width /= 1024;
    }
    throw PrecisionExhausted("sign refinement stalled");
  }

  std::vector<int> signs_at_places(const FieldElement& x) const {
    std::vector<int> s(degree);
    for (int j = 0; j < degree; ++j) s[j] = sign_at(x, j);
    return s;
  }

  bool totally_positive(const FieldElement& x) const {
    for (int j = 0; j < degree; ++j)
      if (sign_at(x, j) <= 0) return false;
    return true;
  }

  // Double-precision powers of the `place`-th root (cached; the underlying
  // interval is refined far below double precision first).
  const std::vector<double>& power_embeddings(int place) const {
    if (pow_emb_.empty()) pow_emb_.resize(degree);
    if (pow_emb_[place].empty()) {
      mpq_class width(mpz_class(1), mpz_class(1) << 90);
      QInterval r = root_interval(place, width);
      long double root = mpq_class((r.lo + r.hi) / 2).get_d();
      std::vector<double> powers(degree);
      long double acc = 1.0L;
      for (int i = 0; i < degree; ++i) {
        powers[i] = static_cast<double>(acc);
        acc *= root;
      }
      pow_emb_[place] = std::move(powers);
    }
    return pow_emb_[place];
  }

  double embed_double(const FieldElement& x, int place) const {
    const auto& powers = power_embeddings(place);
    long double v = 0;
    for (int i = 0; i < degree; ++i)
      if (x.c[i] != 0) v += static_cast<long double>(x.c[i].get_d()) * powers[i];
    return static_cast<double>(v);
  }

  // --- squares --------------------------------------------------------------

  // If x = t^2 with d * t integral, reconstructs t (sign convention: first
  // embedding nonnegative).  Exact verification makes the numerical
  // reconstruction sound.
  std::optional<FieldElement> try_sqrt(const FieldElement& x,
                                       const mpz_class& d = 1) const {
    if (x.is_zero()) return zero();
    for (int j = 0; j < degree; ++j)
      if (sign_at(x, j) < 0) return std::nullopt;
    // Work with y = d^2 x, whose square root has integer coordinates.
    FieldElement y = mul_scalar(x, mpq_class(d * d));
    std::vector<double> target(degree);
    for (int j = 0; j < degree; ++j) {
      mpq_class width(mpz_class(1), mpz_class(1) << 80);
      QInterval v = embed(y, j, width);
      double val = v.approx();
      if (val < 0) val = 0;
      target[j] = std::sqrt(val);
    }
    // Solve V c = s for each sign pattern of the square roots.
    std::vector<std::vector<double>> vmat(degree);
    for (int j = 0; j < degree; ++j) vmat[j] = power_embeddings(j);
    const unsigned patterns = 1u << (degree - 1);
    for (unsigned mask = 0; mask < patterns; ++mask) {
      // Gaussian elimination on a copy.
      std::vector<std::vector<double>> a(degree,
                                         std::vector<double>(degree + 1));
      for (int j = 0; j < degree; ++j) {
        for (int i = 0; i < degree; ++i) a[j][i] = vmat[j][i];
        double s = target[j];
        if (j > 0 && (mask >> (j - 1)) & 1u) s = -s;
        a[j][degree] = s;
      }
      bool singular = false;
      for (int k = 0; k < degree && !singular; ++k) {
        int piv = k;
        for (int i = k + 1; i < degree; ++i)
          if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (std::abs(a[piv][k]) < 1e-12) {
          singular = true;
          break;
        }
        std::swap(a[k], a[piv]);
        for (int i = 0; i < degree; ++i) {
          if (i == k) continue;
          double fct = a[i][k] / a[k][k];
          for (int j = k; j <= degree; ++j) a[i][j] -= fct * a[k][j];
        }
      }
      if (singular) continue;
      QVec coords(degree);
      bool plausible = true;
      for (int i = 0; i < degree; ++i) {
        double ci = a[i][degree] / a[i][i];
        double rounded = std::nearbyint(ci);
        if (std::abs(ci - rounded) > 0.25 || std::abs(rounded) > 1e15) {
          plausible = false;
          break;
        }
        coords[i] = mpq_class(mpz_class(static_cast<long>(rounded)));
      }
      if (!plausible) continue;
      FieldElement t{this, coords};
      if (mul(t, t) == y) {
        FieldElement result = mul_scalar(t, mpq_class(1, d));
        if (sign_at(result, 0) < 0) result = neg(result);
        return result;
      }
    }
    return std::nullopt;
  }

  bool is_square(const FieldElement& x) const {
    // Squares of field elements have bounded denominators once scaled; the
    // callers only ever ask about algebraic integers (units and their
    // products), where denominator 1 suffices.
    return try_sqrt(x).has_value();
  }

 private:
  mutable std::vector<RootInterval> roots_;
  mutable std::vector<std::vector<double>> pow_emb_;
  std::vector<QPoly> power_reduction_;

  // Certifies that f has no monic integer factor of degree 1..degree/2 by
  // interval arithmetic on products of root subsets; a candidate factor whose
  // coefficients all straddle integers is checked by exact division.
  void certify_irreducible() {
    if (degree == 1) return;
    mpq_class width(1, 1024);
    for (int rounds = 0; rounds < 40; ++rounds) {
      std::vector<QInterval> rs(degree);
      for (int j = 0; j < degree; ++j) rs[j] = root_interval(j, width);
      bool all_certified = true;
      for (unsigned mask = 1; mask + 1 < (1u << degree); ++mask) {
        int k = __builtin_popcount(mask);
        if (k > degree / 2) continue;
        // Interval coefficients of prod_{i in mask} (x - r_i).
        std::vector<QInterval> coeff{QInterval::point(1)};
        for (int i = 0; i < degree; ++i) {
          if (!((mask >> i) & 1u)) continue;
          std::vector<QInterval> next(coeff.size() + 1);
          for (size_t t = 0; t < coeff.size(); ++t) {
            next[t + 1] = next[t + 1] + coeff[t];
            next[t] = next[t] - rs[i] * coeff[t];
          }
          coeff = std::move(next);
        }
        bool maybe_integer = true;
        ZPoly cand(coeff.size());
        for (size_t t = 0; t + 1 < coeff.size() && maybe_integer; ++t) {
          mpz_class lo_int, hi_int;
          mpz_cdiv_q(lo_int.get_mpz_t(), coeff[t].lo.get_num().get_mpz_t(),
                     coeff[t].lo.get_den().get_mpz_t());
          mpz_fdiv_q(hi_int.get_mpz_t(), coeff[t].hi.get_num().get_mpz_t(),
                     coeff[t].hi.get_den().get_mpz_t());
          if (lo_int > hi_int)
            maybe_integer = false;
          else
            cand[t] = lo_int;  // unique candidate once width < 1
        }
        if (!maybe_integer) continue;
        cand.back() = 1;
        QPoly candq = q_poly(cand);
        if (poly_divexact(fq, candq).has_value())
          throw Reducible("factor of degree " + std::to_string(k));
        all_certified = false;  // intervals too wide to exclude integers
      }
      if (all_certified) return;
      width /= 1 << 16;
    }
    throw PrecisionExhausted("irreducibility certification stalled");
  }
};

// Convenience free operators (elements must share a field).
inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  return a.field->add(a, b);
}
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  return a.field->sub(a, b);
}
inline FieldElement operator-(const FieldElement& a) {
  return a.field->neg(a);
}
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  return a.field->mul(a, b);
}
inline FieldElement operator*(const mpq_class& s, const FieldElement& a) {
  return a.field->mul_scalar(a, s);
}

}  // namespace fuchsian
