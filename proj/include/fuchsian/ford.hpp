#pragma once
// Ford fundamental domains for the norm-one unit groups of quaternion
// orders.  The pipeline: embed the algebra into M2(R) at the distinguished
// split real place, enumerate all order elements whose isometric circles in
// the disk model have radius above a cutoff, intersect the circle exteriors
// (performed as convex halfplane clipping in the Klein model), read off side
// pairings and vertex cycles, compute the signature and hyperbolic area, and
// finally extract genus-two surface subgroups by rewriting the presentation.
//
// Everything group-theoretic is exact (quaternion arithmetic over the field);
// floating point only steers geometry, and every geometric conclusion is
// cross-checked against an exact invariant (orders of cycle transformations,
// the Gauss-Bonnet area of the signature, relators evaluating to +-1).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fuchsian/errors.hpp"
#include "fuchsian/order.hpp"
#include "fuchsian/quaternion.hpp"
#include "fuchsian/signature.hpp"

namespace fuchsian {

// ---------------------------------------------------------------------------
// Real 2x2 matrices and the unit-disk model.

struct Mat2 {
  double a = 0, b = 0, c = 0, d = 0;
};

inline Mat2 mat_mul(const Mat2& p, const Mat2& q) {
  return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d,
          p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
}

// Conjugate of an SL2(R) matrix by the Cayley map; the result acts on the
// unit disk as z -> (A z + C) / (conj(C) z + conj(A)).
struct DiskMatrix {
  std::complex<double> A{1.0, 0.0};
  std::complex<double> C{0.0, 0.0};
};

inline DiskMatrix to_disk(const Mat2& m) {
  return {{(m.a + m.d) / 2.0, (m.b - m.c) / 2.0},
          {(m.b + m.c) / 2.0, (m.a - m.d) / 2.0}};
}

inline std::complex<double> mobius(const DiskMatrix& m, std::complex<double> z) {
  return (m.A * z + m.C) / (std::conj(m.C) * z + std::conj(m.A));
}

// Isometric circle of a disk-model isometry: the locus where the derivative
// has modulus one.  Transformations fixing the origin (C = 0) have none.
inline std::optional<std::pair<std::complex<double>, double>> isometric_circle(
    const Mat2& m) {
  DiskMatrix d = to_disk(m);
  double cc = std::abs(d.C);
  if (cc < 1e-12) return std::nullopt;
  return std::make_pair(-std::conj(d.A) / std::conj(d.C), 1.0 / cc);
}

inline std::optional<double> isometric_radius(const Mat2& m) {
  auto circ = isometric_circle(m);
  if (!circ) return std::nullopt;
  return circ->second;
}

// ---------------------------------------------------------------------------
// Embedding the algebra at a split real place.  For sigma(a) > 0 the algebra
// tensors to M2(R) there, and any factorization b1*b2 = sigma(b) gives the
// representation
//       x + y i + u j + v ij  ->  [ sx + sy*sqrt(sa)   b1*(su + sv*sqrt(sa)) ]
//                                 [ b2*(su - sv*sqrt(sa))   sx - sy*sqrt(sa) ]
// with determinant = reduced norm.  Two stock factorizations are provided:
// the lopsided b1 = 2, b2 = sigma(b)/2 and the symmetric b1 = sqrt(-sigma(b)),
// b2 = -b1 (the latter demands sigma(b) < 0 and makes the mixing coefficient
// t = (b1^2-b2^2)/(b1^2+b2^2) vanish).

struct RealEmbedding {
  const QuaternionAlgebra* alg = nullptr;
  int place = 0;
  double b1 = 0, b2 = 0;

  RealEmbedding(const QuaternionAlgebra& A, int place_, double b1_, double b2_)
      : alg(&A), place(place_), b1(b1_), b2(b2_) {
    const NumberField& K = *A.base;
    if (place < 0 || place >= K.n_real_places())
      throw WrongPlace("real place index out of range");
    if (K.embed_double(A.a, place) <= 0)
      throw WrongPlace("sigma(a) <= 0 at the requested real place");
    double sb = K.embed_double(A.b, place);
    if (std::abs(b1 * b2 - sb) > 1e-9 * (1.0 + std::abs(sb)))
      throw std::invalid_argument("b1*b2 must equal sigma(b) at the place");
  }

  static RealEmbedding lopsided(const QuaternionAlgebra& A, int place) {
    double sb = A.base->embed_double(A.b, place);
    return RealEmbedding(A, place, 2.0, sb / 2.0);
  }

  static RealEmbedding symmetric(const QuaternionAlgebra& A, int place) {
    double sb = A.base->embed_double(A.b, place);
    if (sb >= 0) throw WrongPlace("symmetric embedding needs sigma(b) < 0");
    double s = std::sqrt(-sb);
    return RealEmbedding(A, place, s, -s);
  }

  Mat2 matrix(const QuaternionElement& q) const {
    const NumberField& K = *alg->base;
    double sa = K.embed_double(alg->a, place);
    double ra = std::sqrt(sa);
    double sx = K.embed_double(q.x, place), sy = K.embed_double(q.y, place);
    double su = K.embed_double(q.u, place), sv = K.embed_double(q.v, place);
    return {sx + sy * ra, b1 * (su + sv * ra), b2 * (su - sv * ra),
            sx - sy * ra};
  }

  // Exact predicate for "acts trivially on the model origin": the lower-left
  // disk entry vanishes.  With b1 != +-b2 that forces y = u = v = 0; with
  // b1 = -b2 the u term drops out of b+c and only y = v = 0 is forced.
  bool fixes_origin(const QuaternionElement& q) const {
    if (!q.y.is_zero()) return false;
    bool symmetric_split = std::abs(b1 + b2) < 1e-12;
    if (symmetric_split) return q.v.is_zero();
    return q.u.is_zero() && q.v.is_zero();
  }
};

// The single real place where the algebra splits.  Errors out unless exactly
// one place is unramified (the cocompact Fuchsian situation) and sigma(a) is
// positive there.
inline int unramified_real_place(const QuaternionAlgebra& A) {
  const NumberField& K = *A.base;
  int found = -1;
  for (int i = 0; i < K.n_real_places(); ++i) {
    if (ramified_at_real_place(A, i)) continue;
    if (found >= 0)
      throw WrongPlace("algebra is unramified at more than one real place");
    found = i;
  }
  if (found < 0) throw WrongPlace("algebra is ramified at every real place");
  if (K.embed_double(A.a, found) <= 0)
    throw WrongPlace("sigma(a) <= 0 at the split real place");
  return found;
}

// Spec-level entry point: the matrix image of q at a place, for any exact
// factorization b1*b2 = b in the field.
inline Mat2 matrix_embedding(const QuaternionElement& q, const FieldElement& b1,
                             const FieldElement& b2, int place) {
  const QuaternionAlgebra& A = *q.alg;
  const NumberField& K = *A.base;
  if (!(K.mul(b1, b2) == A.b))
    throw std::invalid_argument("b1*b2 must equal b exactly");
  RealEmbedding emb(A, place, K.embed_double(b1, place),
                    K.embed_double(b2, place));
  return emb.matrix(q);
}

// ---------------------------------------------------------------------------
// Group elements carry the exact quaternion plus the cached numeric data the
// geometry needs.

struct GroupElement {
  QuaternionElement quat;
  Mat2 mat;
  DiskMatrix disk;
  bool has_circle = false;
  std::complex<double> center{0.0, 0.0};
  double radius = 0;
};

// Sign normalization for +-classes: flip so the first nonzero coordinate of
// (x|y|u|v) is positive.
inline QuaternionElement pm_normalize(const QuaternionElement& q) {
  for (const FieldElement* part : {&q.x, &q.y, &q.u, &q.v})
    for (const auto& c : part->c) {
      if (c > 0) return q;
      if (c < 0) return quat_neg(q);
    }
  return q;
}

inline bool pm_equal(const QuaternionElement& p, const QuaternionElement& q) {
  return pm_normalize(p) == pm_normalize(q);
}

inline bool quat_is_pm_one(const QuaternionElement& q) {
  const NumberField& K = *q.alg->base;
  if (!(q.y.is_zero() && q.u.is_zero() && q.v.is_zero())) return false;
  return q.x == K.one() || q.x == -K.one();
}

inline GroupElement make_group_element(const RealEmbedding& emb,
                                       QuaternionElement q) {
  GroupElement g;
  g.mat = emb.matrix(q);
  g.disk = to_disk(g.mat);
  g.has_circle = !emb.fixes_origin(q);
  if (g.has_circle) {
    double cc = std::abs(g.disk.C);
    g.center = -std::conj(g.disk.A) / std::conj(g.disk.C);
    g.radius = 1.0 / cc;
  }
  g.quat = std::move(q);
  return g;
}

// ---------------------------------------------------------------------------
// Enumeration of norm-one elements with isometric radius above epsilon.
// Writing the element as (1/r) * (X + Y i + U j + V ij) with X,Y,U,V integral
// in the power basis (r = the order's denominator), the radius condition
// r_g > eps is equivalent at the split place to
//   2 sx^2 + 2 sa sy^2 + (4 sa sb^2/B2) sv^2 + B2 (su + t sv sqrt(sa))^2
//       < sr^2 * M,   M = 2 + 4/eps^2,  B2 = b1^2 + b2^2,
// while at every ramified place the matrix image lands in a compact group,
// giving sx^2 - sa sy^2 - sb su^2 + sa sb sv^2 = sr^2 with every summand
// nonnegative.  Solving block by block (x, then y, then v, then u) yields an
// interval for each embedded value, and the integer coordinate vectors inside
// a box of embedded intervals are walked digit by digit with pruning.

namespace detail {

// Inverse of the n x n power matrix V[i][k] = alpha_i^k, by Gauss-Jordan.
inline std::vector<std::vector<double>> invert_power_matrix(
    const std::vector<std::vector<double>>& v) {
  std::size_t n = v.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(2 * n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) m[i][k] = v[i][k];
    m[i][n + i] = 1.0;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[piv], m[col]);
    double d = m[col][col];
    for (auto& x : m[col]) x /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = m[r][col];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < 2 * n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  std::vector<std::vector<double>> w(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) w[i][k] = m[i][n + k];
  return w;
}

// All integer vectors c with |sum_k c_k pw[i][k] - m[i]| <= w[i] at every
// place i, emitted in deterministic order.  pw is the power matrix, winv its
// inverse (from invert_power_matrix), and the recursion walks digits from the
// highest power down, intersecting the per-place windows with the coefficient
// box obtained by applying winv to the value box.
class BlockScanner {
 public:
  BlockScanner(const std::vector<std::vector<double>>& pw,
               const std::vector<std::vector<double>>& winv)
      : pw_(pw), winv_(winv), n_(pw.size()) {}

  std::vector<std::vector<long>> run(const std::vector<double>& m,
                                     const std::vector<double>& w) const {
    std::vector<std::vector<long>> out;
    std::vector<double> center(n_, 0.0), rad(n_, 0.0);
    for (std::size_t k = 0; k < n_; ++k) {
      for (std::size_t i = 0; i < n_; ++i) {
        center[k] += winv_[k][i] * m[i];
        rad[k] += std::abs(winv_[k][i]) * w[i];
      }
      rad[k] += kSlack;
    }
    std::vector<double> partial(n_, 0.0);
    std::vector<long> digits(n_, 0);
    descend(n_, m, w, center, rad, partial, digits, out);
    return out;
  }

 private:
  static constexpr double kSlack = 1e-6;

  void descend(std::size_t k, const std::vector<double>& m,
               const std::vector<double>& w, const std::vector<double>& center,
               const std::vector<double>& rad, std::vector<double>& partial,
               std::vector<long>& digits,
               std::vector<std::vector<long>>& out) const {
    if (k == 0) {
      for (std::size_t i = 0; i < n_; ++i)
        if (std::abs(partial[i] - m[i]) > w[i] + kSlack) return;
      out.push_back(digits);
      return;
    }
    std::size_t d = k - 1;
    // Coefficient-box range for this digit.
    double lo = std::ceil(center[d] - rad[d]);
    double hi = std::floor(center[d] + rad[d]);
    // Slack available to the remaining lower digits at each place.
    std::vector<double> tail(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t dd = 0; dd < d; ++dd)
        tail[i] += (std::abs(center[dd]) + rad[dd]) * std::abs(pw_[i][dd]);
    // Intersect with the per-place windows.
    for (std::size_t i = 0; i < n_; ++i) {
      double p = pw_[i][d];
      if (std::abs(p) < 1e-12) continue;
      double lo_i = (m[i] - w[i] - partial[i] - tail[i] - kSlack) / p;
      double hi_i = (m[i] + w[i] - partial[i] + tail[i] + kSlack) / p;
      if (p < 0) std::swap(lo_i, hi_i);
      lo = std::max(lo, std::ceil(lo_i));
      hi = std::min(hi, std::floor(hi_i));
    }
    for (long c = static_cast<long>(lo); c <= static_cast<long>(hi); ++c) {
      digits[d] = c;
      for (std::size_t i = 0; i < n_; ++i) partial[i] += c * pw_[i][d];
      descend(d, m, w, center, rad, partial, digits, out);
      for (std::size_t i = 0; i < n_; ++i) partial[i] -= c * pw_[i][d];
    }
    digits[d] = 0;
  }

  const std::vector<std::vector<double>>& pw_;
  const std::vector<std::vector<double>>& winv_;
  std::size_t n_;
};

struct ZVecLess {
  bool operator()(const ZVec& p, const ZVec& q) const {
    return std::lexicographical_compare(p.begin(), p.end(), q.begin(),
                                        q.end());
  }
};

}  // namespace detail

inline std::vector<GroupElement> enumerate_bounded_elements(
    const QuaternionOrder& O, double eps, const RealEmbedding& emb) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("epsilon must lie in (0,1)");
  const QuaternionAlgebra& A = *O.algebra;
  if (emb.alg != &A) throw std::invalid_argument("embedding/algebra mismatch");
  const NumberField& K = *A.base;
  const std::size_t n = static_cast<std::size_t>(K.degree);
  const int p0 = emb.place;
  for (int i = 0; i < K.n_real_places(); ++i) {
    if (i == p0) continue;
    if (!ramified_at_real_place(A, i))
      throw WrongPlace("algebra must be ramified at every other real place");
  }

  std::vector<std::vector<double>> pw(n);
  for (std::size_t i = 0; i < n; ++i) pw[i] = K.power_embeddings(int(i));
  auto winv = detail::invert_power_matrix(pw);
  detail::BlockScanner scan(pw, winv);

  std::vector<double> sr(n), sa(n), sb(n);
  for (std::size_t i = 0; i < n; ++i) {
    sr[i] = K.embed_double(O.denom, int(i));
    sa[i] = K.embed_double(A.a, int(i));
    sb[i] = K.embed_double(A.b, int(i));
  }
  const double M = 2.0 + 4.0 / (eps * eps);
  const double B2 = emb.b1 * emb.b1 + emb.b2 * emb.b2;
  const double tmix = (emb.b1 * emb.b1 - emb.b2 * emb.b2) / B2;
  const double sqrt_sa0 = std::sqrt(sa[p0]);
  const std::size_t u0 = static_cast<std::size_t>(p0);

  auto value = [&](const std::vector<long>& c, std::size_t i) {
    double s = 0;
    for (std::size_t k = 0; k < c.size(); ++k) s += double(c[k]) * pw[i][k];
    return s;
  };
  auto window = [](double budget, double den) {
    return std::sqrt(std::max(budget, 0.0) / den) + 1e-9;
  };

  std::vector<double> m0(n, 0.0), wx(n), wy(n), wv(n), wu(n), mu(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    wx[i] = (i == u0) ? std::abs(sr[i]) * std::sqrt(M / 2.0) : std::abs(sr[i]);

  std::map<ZVec, QuaternionElement, detail::ZVecLess> found;
  std::vector<double> bud1(n), bud2(n), bud3(n);

  for (const auto& xs : scan.run(m0, wx)) {
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      double sx = value(xs, i);
      bud1[i] = (i == u0) ? sr[i] * sr[i] * M - 2.0 * sx * sx
                          : sr[i] * sr[i] - sx * sx;
      if (bud1[i] < -1e-6) ok = false;
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < n; ++i)
      wy[i] = (i == u0) ? window(bud1[i], 2.0 * sa[i])
                        : window(bud1[i], -sa[i]);
    for (const auto& ys : scan.run(m0, wy)) {
      ok = true;
      for (std::size_t i = 0; i < n; ++i) {
        double sy = value(ys, i);
        bud2[i] = (i == u0) ? bud1[i] - 2.0 * sa[i] * sy * sy
                            : bud1[i] + sa[i] * sy * sy;
        if (bud2[i] < -1e-6) ok = false;
      }
      if (!ok) continue;
      for (std::size_t i = 0; i < n; ++i)
        wv[i] = (i == u0)
                    ? window(bud2[i] * B2, 4.0 * sa[i] * sb[i] * sb[i])
                    : window(bud2[i], sa[i] * sb[i]);
      for (const auto& vs : scan.run(m0, wv)) {
        ok = true;
        for (std::size_t i = 0; i < n; ++i) {
          double sv = value(vs, i);
          bud3[i] = (i == u0)
                        ? bud2[i] - (4.0 * sa[i] * sb[i] * sb[i] / B2) * sv * sv
                        : bud2[i] - sa[i] * sb[i] * sv * sv;
          if (bud3[i] < -1e-6) ok = false;
          mu[i] = (i == u0) ? -tmix * sv * sqrt_sa0 : 0.0;
        }
        if (!ok) continue;
        for (std::size_t i = 0; i < n; ++i)
          wu[i] = (i == u0) ? window(bud3[i], B2) : window(bud3[i], -sb[i]);
        for (const auto& us : scan.run(mu, wu)) {
          ZVec coords;
          coords.reserve(4 * n);
          for (const auto* blk : {&xs, &ys, &us, &vs})
            for (long c : *blk) coords.emplace_back(c);
          if (!hnf_contains(O.hnf, coords)) continue;
          QuaternionElement q = quat_from_scaled_coords(A, coords, O.denom);
          if (!(quat_norm(q) == K.one())) continue;
          for (auto& c : coords) {
            if (c > 0) break;
            if (c < 0) {
              q = quat_neg(q);
              for (auto& cc : coords) cc = -cc;
              break;
            }
          }
          found.emplace(std::move(coords), std::move(q));
        }
      }
    }
  }

  std::vector<GroupElement> out;
  out.reserve(found.size());
  std::size_t nontrivial = 0;
  for (auto& [coords, q] : found) {
    GroupElement g = make_group_element(emb, std::move(q));
    if (g.has_circle && g.radius <= eps * (1.0 - 1e-9)) continue;
    if (!quat_is_pm_one(g.quat)) ++nontrivial;
    out.push_back(std::move(g));
  }
  if (nontrivial == 0)
    throw EmptyEnumeration("no nontrivial elements with radius above epsilon");
  return out;
}

inline std::vector<GroupElement> enumerate_bounded_elements(
    const QuaternionOrder& O, double eps, int place) {
  return enumerate_bounded_elements(O, eps,
                                    RealEmbedding::lopsided(*O.algebra, place));
}

// ---------------------------------------------------------------------------
// The Ford domain.  Boundary arcs are stored counterclockwise; each lies on
// the isometric circle of one enumerated element.  Trace-zero elements pair a
// side with itself, so their arcs arrive pre-split at the interior fixed
// point (each half then pairs with the other half).

struct FordArc {
  std::size_t elem = 0;  // index into FordDomain::elements
  std::complex<double> z0, z1;
  std::complex<double> center;
  double radius = 0;
};

struct VertexCycle {
  std::vector<std::size_t> corners;  // arc t: the corner at the end of arc t
  std::vector<int> word;             // signed pairing letters, leftmost first
  long order = 1;                    // 1 = accidental cycle
  QuaternionElement transform;
  std::complex<double> vertex;  // fixed point of the transform when order > 1
  double angle_sum = 0;
};

struct FordDomain {
  std::vector<GroupElement> elements;
  double epsilon = 0;
  std::vector<FordArc> arcs;
  double area = 0;
  // Filled in by side_pairings_and_signature:
  std::vector<std::size_t> pair_of;
  std::vector<int> arc_letter;  // signed generator applied when leaving arc i
  std::vector<VertexCycle> cycles;
};

namespace detail {

inline std::array<double, 2> to_klein(std::complex<double> z) {
  double s = 1.0 + std::norm(z);
  return {2.0 * z.real() / s, 2.0 * z.imag() / s};
}

inline std::complex<double> from_klein(const std::array<double, 2>& w) {
  double n2 = w[0] * w[0] + w[1] * w[1];
  double s = 1.0 + std::sqrt(std::max(0.0, 1.0 - n2));
  return {w[0] / s, w[1] / s};
}

// An isometric circle of radius r <= eps has center at distance sqrt(1+r^2)
// from the origin, so it never enters the disk |z| < sqrt(1+eps^2) - eps
// (the closest approach decreases in r).  A polygon cut out by the circles
// of radius > eps that stays inside that disk is therefore cut by no other
// circle and is the true domain.  Klein radius of that disk:
inline double klein_cutoff(double eps) {
  double r = std::sqrt(1.0 + eps * eps) - eps;
  return 2.0 * r / (1.0 + r * r);
}

// Interior angle at a vertex z between two boundary circles, measured inside
// the intersection of their exteriors.  The disk model is conformal, so the
// hyperbolic angle is pi minus the Euclidean angle between the two radial
// normals (both of which point into the domain).
inline double interior_angle(std::complex<double> z, std::complex<double> c1,
                             std::complex<double> c2) {
  std::complex<double> n1 = (z - c1) / std::abs(z - c1);
  std::complex<double> n2 = (z - c2) / std::abs(z - c2);
  double dot = n1.real() * n2.real() + n1.imag() * n2.imag();
  return 3.1415926535897932384626433832795 -
         std::acos(std::clamp(dot, -1.0, 1.0));
}

// The two fixed points of an elliptic disk transformation; returns the one
// inside the open disk.
inline std::complex<double> elliptic_fixed_point(const DiskMatrix& d) {
  // conj(C) z^2 - 2i Im(A) z - C = 0.
  std::complex<double> cc = std::conj(d.C);
  std::complex<double> disc =
      std::sqrt(std::complex<double>(std::norm(d.C) - d.A.imag() * d.A.imag(),
                                     0.0));
  std::complex<double> mid(0.0, d.A.imag());
  std::complex<double> z1 = (mid + disc) / cc;
  std::complex<double> z2 = (mid - disc) / cc;
  return std::abs(z1) < std::abs(z2) ? z1 : z2;
}

}  // namespace detail

inline bool domain_contains(const FordDomain& D, std::complex<double> z,
                            double tol = 1e-9) {
  if (std::abs(z) >= 1.0) return false;
  auto w = detail::to_klein(z);
  for (const auto& arc : D.arcs) {
    double dot = w[0] * arc.center.real() + w[1] * arc.center.imag();
    if (dot > 1.0 + tol) return false;
  }
  return true;
}

inline FordDomain build_ford_domain(const std::vector<GroupElement>& elements,
                                    double eps) {
  FordDomain D;
  D.elements = elements;
  D.epsilon = eps;

  // A nontrivial origin-fixer would rotate the whole picture and break the
  // centering assumption behind the radius bound; the remedy is a different
  // factorization or place, so report it as a placement problem.
  for (const auto& g : elements)
    if (!g.has_circle && !quat_is_pm_one(g.quat))
      throw WrongPlace(
          "a nontrivial element fixes the model origin; "
          "choose another factorization of b");

  // Clip the exterior halfplanes in the Klein model.  The circle with center
  // c (|c|^2 = 1 + r^2) corresponds to the halfplane w . c <= 1, and the
  // square frame is a stand-in for "unbounded": any frame edge surviving the
  // clip means the circles do not close up at this epsilon.
  constexpr std::size_t kFrame = static_cast<std::size_t>(-1);
  std::vector<std::array<double, 2>> pts = {
      {1.5, -1.5}, {1.5, 1.5}, {-1.5, 1.5}, {-1.5, -1.5}};
  std::vector<std::size_t> labels = {kFrame, kFrame, kFrame, kFrame};

  std::vector<std::size_t> order;
  for (std::size_t e = 0; e < elements.size(); ++e)
    if (elements[e].has_circle) order.push_back(e);
  std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
    const GroupElement &gp = elements[p], &gq = elements[q];
    if (gp.radius != gq.radius) return gp.radius > gq.radius;
    if (gp.center.real() != gq.center.real())
      return gp.center.real() < gq.center.real();
    if (gp.center.imag() != gq.center.imag())
      return gp.center.imag() < gq.center.imag();
    return p < q;
  });

  for (std::size_t e : order) {
    const std::complex<double> c = elements[e].center;
    auto height = [&](const std::array<double, 2>& w) {
      return w[0] * c.real() + w[1] * c.imag() - 1.0;
    };
    std::vector<std::array<double, 2>> np;
    std::vector<std::size_t> nl;
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i < m; ++i) {
      const auto& P = pts[i];
      const auto& Q = pts[(i + 1) % m];
      double hp = height(P), hq = height(Q);
      bool pin = hp <= 1e-12, qin = hq <= 1e-12;
      auto cross = [&]() -> std::array<double, 2> {
        double s = hp / (hp - hq);
        return {P[0] + s * (Q[0] - P[0]), P[1] + s * (Q[1] - P[1])};
      };
      if (pin) {
        np.push_back(P);
        nl.push_back(labels[i]);
        if (!qin) {
          np.push_back(cross());
          nl.push_back(e);
        }
      } else if (qin) {
        np.push_back(cross());
        nl.push_back(labels[i]);
      }
    }
    pts.swap(np);
    labels.swap(nl);
  }

  // Drop micro edges from near-tangent cuts.
  {
    std::vector<std::array<double, 2>> np;
    std::vector<std::size_t> nl;
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i < m; ++i) {
      const auto& P = pts[i];
      const auto& Q = pts[(i + 1) % m];
      double len = std::hypot(Q[0] - P[0], Q[1] - P[1]);
      if (len < 1e-10) continue;  // merge P into Q
      np.push_back(P);
      nl.push_back(labels[i]);
    }
    pts.swap(np);
    labels.swap(nl);
  }

  const double cutoff = detail::klein_cutoff(eps) + 1e-9;
  for (std::size_t lab : labels)
    if (lab == kFrame)
      throw RefineEpsilon("isometric circles do not close up at epsilon=" +
                          std::to_string(eps));
  for (const auto& w : pts)
    if (std::hypot(w[0], w[1]) > cutoff)
      throw RefineEpsilon("domain vertex outside the checked disk at epsilon=" +
                          std::to_string(eps));

  // Convert edges to Poincare arcs, splitting self-paired (trace-zero) sides
  // at their interior fixed point.
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t e = labels[i];
    const GroupElement& g = D.elements[e];
    FordArc arc;
    arc.elem = e;
    arc.z0 = detail::from_klein(pts[i]);
    arc.z1 = detail::from_klein(pts[(i + 1) % m]);
    arc.center = g.center;
    arc.radius = g.radius;
    for (std::complex<double> zc : {arc.z0, arc.z1})
      if (std::abs(std::abs(zc - arc.center) - arc.radius) >
          1e-7 * (1.0 + arc.radius))
        throw RefineEpsilon("arc endpoint drifted off its circle");
    if (quat_trace(g.quat).is_zero()) {
      std::complex<double> zf = detail::elliptic_fixed_point(g.disk);
      if (std::abs(std::abs(zf - arc.center) - arc.radius) >
          1e-8 * (1.0 + arc.radius))
        throw UnclosedCycle("self-paired side misses its fixed point");
      // The fixed point must lie strictly inside the arc.  Arcs run clockwise
      // around their centers (the domain sits outside each circle).
      double a0 = std::arg(arc.z0 - arc.center);
      double a1 = std::arg(arc.z1 - arc.center);
      double af = std::arg(zf - arc.center);
      auto wrap = [](double x) {
        const double tau = 6.283185307179586476925286766559;
        x = std::fmod(x, tau);
        if (x < 0) x += tau;
        return x;
      };
      double span = wrap(a0 - a1);
      double at = wrap(a0 - af);
      if (!(at > 1e-9 && at < span - 1e-9))
        throw UnclosedCycle("fixed point not interior to its self-paired side");
      FordArc first = arc, second = arc;
      first.z1 = zf;
      second.z0 = zf;
      D.arcs.push_back(first);
      D.arcs.push_back(second);
    } else {
      D.arcs.push_back(arc);
    }
  }

  // Gauss-Bonnet: area = (s-2) pi - sum of interior angles.
  const double pi = 3.1415926535897932384626433832795;
  const std::size_t L = D.arcs.size();
  double angles = 0;
  for (std::size_t i = 0; i < L; ++i) {
    const FordArc& prev = D.arcs[(i + L - 1) % L];
    const FordArc& next = D.arcs[i];
    angles += detail::interior_angle(next.z0, prev.center, next.center);
  }
  D.area = double(L - 2) * pi - angles;
  return D;
}

// ---------------------------------------------------------------------------
// Side pairings, vertex cycles, signature.

struct SidePairings {
  std::vector<GroupElement> generators;       // one per side pair
  std::vector<std::vector<int>> cycle_words;  // signed 1-based letters
  std::vector<long> cycle_orders;             // 1 = accidental
  Signature sig{0, {}};
};

namespace detail {

inline QuaternionElement letter_quat(const std::vector<GroupElement>& gens,
                                     int letter) {
  const QuaternionElement& g = gens[static_cast<std::size_t>(std::abs(letter)) - 1].quat;
  return letter > 0 ? g : quat_conj(g);
}

}  // namespace detail

inline QuaternionElement eval_word(const std::vector<GroupElement>& gens,
                                   const std::vector<int>& word) {
  QuaternionElement w = quat_one(*gens.at(0).quat.alg);
  for (int letter : word) w = quat_mul(w, detail::letter_quat(gens, letter));
  return w;
}

inline bool verify_presentation(const std::vector<GroupElement>& gens,
                                const std::vector<std::vector<int>>& relators) {
  for (const auto& r : relators)
    if (!quat_is_pm_one(eval_word(gens, r))) return false;
  return true;
}

inline SidePairings side_pairings_and_signature(FordDomain& D) {
  const std::size_t L = D.arcs.size();
  const double pi = 3.1415926535897932384626433832795;
  if (L < 3 || L % 2 != 0)
    throw UnclosedCycle("boundary has an odd number of sides");

  // Pair arcs: a trace-zero element pairs its two half-arcs; otherwise the
  // pairing partner is the unique arc on the circle of the inverse element.
  D.pair_of.assign(L, L);
  D.arc_letter.assign(L, 0);
  for (std::size_t i = 0; i < L; ++i) {
    if (D.pair_of[i] != L) continue;
    const GroupElement& g = D.elements[D.arcs[i].elem];
    std::size_t partner = L;
    if (quat_trace(g.quat).is_zero()) {
      for (std::size_t j = 0; j < L; ++j)
        if (j != i && D.arcs[j].elem == D.arcs[i].elem) partner = j;
    } else {
      QuaternionElement ginv = pm_normalize(quat_conj(g.quat));
      for (std::size_t j = 0; j < L; ++j)
        if (pm_normalize(D.elements[D.arcs[j].elem].quat) == ginv) partner = j;
    }
    if (partner == L) throw UnclosedCycle("side has no pairing partner");
    D.pair_of[i] = partner;
    D.pair_of[partner] = i;
  }

  // The pairing of arc i is the element of arc i itself: it carries its own
  // isometric circle onto the partner circle, reversing boundary orientation.
  for (std::size_t i = 0; i < L; ++i) {
    const GroupElement& g = D.elements[D.arcs[i].elem];
    std::size_t j = D.pair_of[i];
    double d1 = std::abs(mobius(g.disk, D.arcs[i].z0) - D.arcs[j].z1);
    double d2 = std::abs(mobius(g.disk, D.arcs[i].z1) - D.arcs[j].z0);
    if (d1 > 1e-6 || d2 > 1e-6)
      throw UnclosedCycle("pairing does not carry its side onto the partner");
  }

  SidePairings sp;
  std::vector<std::size_t> gen_of(L, L);
  for (std::size_t i = 0; i < L; ++i) {
    if (D.arc_letter[i] != 0) continue;
    std::size_t j = D.pair_of[i];
    sp.generators.push_back(D.elements[D.arcs[i].elem]);
    int idx = static_cast<int>(sp.generators.size());
    D.arc_letter[i] = idx;
    D.arc_letter[j] = -idx;
  }

  // Corner cycles.  The corner of arc t sits at the end of arc t; applying
  // the pairing of arc t moves it to the start of the partner arc, i.e. the
  // corner of the arc preceding the partner.
  std::vector<char> visited(L, 0);
  for (std::size_t t0 = 0; t0 < L; ++t0) {
    if (visited[t0]) continue;
    VertexCycle cyc;
    std::size_t t = t0;
    do {
      visited[t] = 1;
      cyc.corners.push_back(t);
      cyc.word.insert(cyc.word.begin(), D.arc_letter[t]);
      std::size_t j = D.pair_of[t];
      t = (j + L - 1) % L;
    } while (t != t0);
    cyc.vertex = D.arcs[(cyc.corners[0] + 1) % L].z0;
    for (std::size_t t2 : cyc.corners) {
      const FordArc& cur = D.arcs[t2];
      const FordArc& nxt = D.arcs[(t2 + 1) % L];
      cyc.angle_sum += detail::interior_angle(nxt.z0, cur.center, nxt.center);
    }
    cyc.transform = eval_word(sp.generators, cyc.word);
    if (quat_is_pm_one(cyc.transform)) {
      cyc.order = 1;
    } else {
      QuaternionElement p = cyc.transform;
      long ord = 0;
      for (long k = 2; k <= 12; ++k) {
        p = quat_mul(p, cyc.transform);
        if (quat_is_pm_one(p)) {
          ord = k;
          break;
        }
      }
      if (ord == 0)
        throw UnclosedCycle("vertex cycle transformation has infinite order");
      cyc.order = ord;
    }
    if (std::abs(cyc.angle_sum * double(cyc.order) - 2.0 * pi) > 1e-6)
      throw UnclosedCycle("vertex cycle angles do not fill 2*pi");
    D.cycles.push_back(std::move(cyc));
  }

  std::vector<long> periods;
  for (const auto& cyc : D.cycles) {
    sp.cycle_words.push_back(cyc.word);
    sp.cycle_orders.push_back(cyc.order);
    if (cyc.order > 1) periods.push_back(cyc.order);
  }
  std::sort(periods.begin(), periods.end());

  long E = static_cast<long>(L) / 2;
  long V = static_cast<long>(D.cycles.size());
  long twice_genus = 1 + E - V;
  if (twice_genus < 0 || twice_genus % 2 != 0)
    throw UnclosedCycle("side/vertex counts give no integral genus");
  sp.sig = Signature{int(twice_genus / 2), periods};

  double expected = rh_area(sp.sig).get_d() * pi;
  if (std::abs(D.area - expected) > 1e-6 * std::max(1.0, expected))
    throw AreaMismatch("polygon area " + std::to_string(D.area) +
                       " vs signature area " + std::to_string(expected));
  return sp;
}

// ---------------------------------------------------------------------------
// Driver: enumerate and build, halving epsilon (down to 0.05) whenever the
// circles fail to close up.

struct FordResult {
  double epsilon = 0;
  FordDomain domain;
  SidePairings pairings;
};

inline FordResult run_ford(const QuaternionOrder& O, const RealEmbedding& emb,
                           double eps0 = 0.15) {
  double eps = eps0;
  for (;;) {
    try {
      auto elements = enumerate_bounded_elements(O, eps, emb);
      FordDomain D = build_ford_domain(elements, eps);
      SidePairings sp = side_pairings_and_signature(D);
      return FordResult{eps, std::move(D), std::move(sp)};
    } catch (const RefineEpsilon&) {
      if (eps / 2.0 < 0.05 - 1e-12) throw;
      eps /= 2.0;
    }
  }
}

// ---------------------------------------------------------------------------
// Words and presentations.  A word is a vector of nonzero signed 1-based
// generator letters; evaluation multiplies left to right.

namespace detail {

inline void free_reduce(std::vector<int>& w) {
  std::vector<int> out;
  for (int s : w) {
    if (!out.empty() && out.back() == -s)
      out.pop_back();
    else
      out.push_back(s);
  }
  w.swap(out);
}

inline void cyclic_reduce(std::vector<int>& w) {
  free_reduce(w);
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
    free_reduce(w);
  }
}

inline std::vector<int> word_inverse(const std::vector<int>& w) {
  std::vector<int> out(w.rbegin(), w.rend());
  for (int& s : out) s = -s;
  return out;
}

// Replace every occurrence of generator g (1-based) by def, freely reducing.
inline std::vector<int> word_substitute(const std::vector<int>& w, int g,
                                        const std::vector<int>& def) {
  std::vector<int> out;
  std::vector<int> idef = word_inverse(def);
  for (int s : w) {
    const std::vector<int>* rep = nullptr;
    if (s == g)
      rep = &def;
    else if (s == -g)
      rep = &idef;
    if (rep)
      out.insert(out.end(), rep->begin(), rep->end());
    else
      out.push_back(s);
  }
  free_reduce(out);
  return out;
}

inline QuaternionElement eval_quat_word(
    const std::vector<QuaternionElement>& gens, const std::vector<int>& w) {
  QuaternionElement p = quat_one(*gens.at(0).alg);
  for (int s : w) {
    const QuaternionElement& g = gens[static_cast<std::size_t>(std::abs(s)) - 1];
    p = quat_mul(p, s > 0 ? g : quat_conj(g));
  }
  return p;
}

// Canonical key of a relator up to rotation and inversion (generators fixed).
inline std::vector<int> relator_key(std::vector<int> w) {
  cyclic_reduce(w);
  std::vector<int> best;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < std::max<std::size_t>(w.size(), 1); ++r) {
      std::vector<int> rot(w.begin() + r, w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + r);
      if (best.empty() || rot < best) best = rot;
    }
    w = word_inverse(w);
  }
  return best;
}

struct Presentation {
  std::vector<QuaternionElement> gens;
  std::vector<std::vector<int>> rels;
  std::vector<std::vector<int>> tracked;  // substituted along, never consumed
};

// Eliminate every generator that appears exactly once in some relator,
// substituting its solved value everywhere.  Deterministic: always take the
// shortest eligible relator (earliest on ties) and its leftmost eligible
// letter.
inline void tietze_reduce(Presentation& P) {
  auto tidy = [&]() {
    for (auto& r : P.rels) cyclic_reduce(r);
    std::vector<std::vector<int>> keep;
    std::set<std::vector<int>> seen;
    for (auto& r : P.rels) {
      if (r.empty()) continue;
      auto key = relator_key(r);
      if (seen.insert(key).second) keep.push_back(std::move(r));
    }
    P.rels.swap(keep);
  };
  tidy();
  std::vector<char> dead(P.gens.size(), 0);
  for (;;) {
    std::size_t best_rel = P.rels.size();
    int best_gen = 0;
    for (std::size_t ri = 0; ri < P.rels.size(); ++ri) {
      if (best_rel < P.rels.size() &&
          P.rels[ri].size() >= P.rels[best_rel].size())
        continue;
      for (int s : P.rels[ri]) {
        int g = std::abs(s);
        int count = 0;
        for (int s2 : P.rels[ri])
          if (std::abs(s2) == g) ++count;
        if (count == 1) {
          best_rel = ri;
          best_gen = g;
          break;
        }
      }
    }
    if (best_rel == P.rels.size()) break;
    // Rotate the single occurrence to the front and solve.
    std::vector<int> r = P.rels[best_rel];
    std::size_t pos = 0;
    while (std::abs(r[pos]) != best_gen) ++pos;
    std::rotate(r.begin(), r.begin() + pos, r.end());
    std::vector<int> def(r.begin() + 1, r.end());
    if (r[0] > 0)
      def = word_inverse(def);  // g * w = 1  =>  g = w^-1
    P.rels.erase(P.rels.begin() + static_cast<long>(best_rel));
    for (auto& rel : P.rels) rel = word_substitute(rel, best_gen, def);
    for (auto& tw : P.tracked) tw = word_substitute(tw, best_gen, def);
    dead[static_cast<std::size_t>(best_gen) - 1] = 1;
    tidy();
  }
  // Compact the surviving generators.
  std::vector<int> remap(P.gens.size() + 1, 0);
  std::vector<QuaternionElement> gens;
  for (std::size_t g = 0; g < P.gens.size(); ++g) {
    if (dead[g]) continue;
    gens.push_back(P.gens[g]);
    remap[g + 1] = static_cast<int>(gens.size());
  }
  auto apply = [&](std::vector<int>& w) {
    for (int& s : w) s = s > 0 ? remap[s] : -remap[-s];
  };
  for (auto& r : P.rels) apply(r);
  for (auto& tw : P.tracked) apply(tw);
  P.gens.swap(gens);
}

// Canonical key of a one-relator state for the Nielsen search: minimize over
// rotations, global inversion, and first-appearance renaming (each renamed
// generator's first occurrence made positive).
inline std::vector<int> nielsen_key(const std::vector<int>& w) {
  std::vector<int> best;
  std::vector<int> cand = w;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < std::max<std::size_t>(cand.size(), 1); ++r) {
      std::vector<int> rot(cand.begin() + r, cand.end());
      rot.insert(rot.end(), cand.begin(), cand.begin() + r);
      std::map<int, int> names;
      for (int& s : rot) {
        int g = std::abs(s);
        auto it = names.find(g);
        if (it == names.end()) {
          int id = static_cast<int>(names.size()) + 1;
          names[g] = s > 0 ? id : -id;
          it = names.find(g);
        }
        int signed_id = it->second;
        s = (s > 0) ? signed_id : -signed_id;
      }
      if (best.empty() || rot < best) best = rot;
    }
    cand = word_inverse(cand);
  }
  return best;
}

// If some rotation of w or of its inverse is a genus-two surface relator
// a b a^-1 b^-1 c d c^-1 d^-1, return the four letters (a, b, c, d).
inline std::optional<std::array<int, 4>> commutator_form(
    const std::vector<int>& w) {
  if (w.size() != 8) return std::nullopt;
  std::vector<int> cand = w;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < 8; ++r) {
      std::array<int, 8> v;
      for (std::size_t k = 0; k < 8; ++k) v[k] = cand[(r + k) % 8];
      if (v[2] == -v[0] && v[3] == -v[1] && v[6] == -v[4] && v[7] == -v[5]) {
        std::set<int> ids{std::abs(v[0]), std::abs(v[1]), std::abs(v[4]),
                          std::abs(v[5])};
        if (ids.size() == 4) return std::array<int, 4>{v[0], v[1], v[4], v[5]};
      }
    }
    cand = word_inverse(cand);
  }
  return std::nullopt;
}

// Nielsen transformations on a 4-generator one-relator presentation, searched
// breadth-first until the relator reaches the standard genus-two form.
// Definitions of the current generators as words in the starting generators
// ride along so the exact group elements can be reconstructed at the end.
inline std::array<QuaternionElement, 4> nielsen_genus2(
    const Presentation& P0) {
  if (P0.gens.size() != 4 || P0.rels.size() != 1)
    throw NotSupportedIndex(
        "presentation did not reduce to four generators and one relator");
  struct State {
    std::vector<int> rel;
    std::array<std::vector<int>, 4> defs;
  };
  State start;
  start.rel = P0.rels[0];
  cyclic_reduce(start.rel);
  for (int i = 0; i < 4; ++i) start.defs[i] = {i + 1};

  auto finish = [&](const State& s) -> std::array<QuaternionElement, 4> {
    auto letters = commutator_form(s.rel);
    if (!letters)
      throw NotSupportedIndex("relator lost its normalized form");
    std::array<QuaternionElement, 4> out = {
        quat_one(*P0.gens[0].alg), quat_one(*P0.gens[0].alg),
        quat_one(*P0.gens[0].alg), quat_one(*P0.gens[0].alg)};
    for (int k = 0; k < 4; ++k) {
      int letter = (*letters)[k];
      std::vector<int> w = s.defs[static_cast<std::size_t>(std::abs(letter)) - 1];
      if (letter < 0) w = word_inverse(w);
      out[static_cast<std::size_t>(k)] = eval_quat_word(P0.gens, w);
    }
    QuaternionElement check = quat_mul(
        quat_mul(quat_mul(out[0], out[1]),
                 quat_mul(quat_conj(out[0]), quat_conj(out[1]))),
        quat_mul(quat_mul(out[2], out[3]),
                 quat_mul(quat_conj(out[2]), quat_conj(out[3]))));
    if (!quat_is_pm_one(check))
      throw NotSupportedIndex("normalized tuple fails the surface relation");
    return out;
  };

  constexpr std::size_t kMaxStates = 300000;
  constexpr std::size_t kMaxLen = 12;
  std::set<std::vector<int>> visited;
  std::vector<State> frontier{start};
  visited.insert(nielsen_key(start.rel));
  if (commutator_form(start.rel)) return finish(start);

  while (!frontier.empty() && visited.size() < kMaxStates) {
    std::vector<State> next;
    for (const State& s : frontier) {
      for (int i = 0; i < 4; ++i) {
        // Inversion of one generator.
        {
          State t = s;
          for (int& x : t.rel)
            if (std::abs(x) == i + 1) x = -x;
          t.defs[i] = word_inverse(t.defs[i]);
          cyclic_reduce(t.rel);
          if (t.rel.size() <= kMaxLen && visited.insert(nielsen_key(t.rel)).second) {
            if (commutator_form(t.rel)) return finish(t);
            next.push_back(std::move(t));
          }
        }
        for (int j = 0; j < 4; ++j) {
          if (j == i) continue;
          for (int sgn : {1, -1}) {
            int li = i + 1, lj = j + 1;
            // Right multiply: g_i <- g_i g_j^sgn, so in the relator the old
            // g_i reads as (new g_i) g_j^-sgn; and symmetrically on the left.
            for (int side = 0; side < 2; ++side) {
              State t = s;
              std::vector<int> rel;
              for (int x : t.rel) {
                if (x == li) {
                  if (side == 0) {
                    rel.push_back(li);
                    rel.push_back(-sgn * lj);
                  } else {
                    rel.push_back(-sgn * lj);
                    rel.push_back(li);
                  }
                } else if (x == -li) {
                  if (side == 0) {
                    rel.push_back(sgn * lj);
                    rel.push_back(-li);
                  } else {
                    rel.push_back(-li);
                    rel.push_back(sgn * lj);
                  }
                } else {
                  rel.push_back(x);
                }
              }
              cyclic_reduce(rel);
              if (rel.size() > kMaxLen) continue;
              t.rel = std::move(rel);
              std::vector<int> gj = t.defs[j];
              if (sgn < 0) gj = word_inverse(gj);
              if (side == 0) {
                t.defs[i].insert(t.defs[i].end(), gj.begin(), gj.end());
              } else {
                gj.insert(gj.end(), t.defs[i].begin(), t.defs[i].end());
                t.defs[i] = std::move(gj);
              }
              free_reduce(t.defs[i]);
              if (visited.insert(nielsen_key(t.rel)).second) {
                if (commutator_form(t.rel)) return finish(t);
                next.push_back(std::move(t));
              }
            }
          }
        }
      }
    }
    frontier.swap(next);
  }
  throw NotSupportedIndex("relator did not normalize to genus-two form");
}

// Index-two Reidemeister-Schreier rewrite for a character phi (values 0/1 per
// generator, at least one 1).  Returns the kernel presentation; the relators
// of the input are each full cycle relator rewritten from both cosets.
inline Presentation rs_index2(const std::vector<QuaternionElement>& gens,
                              const std::vector<std::vector<int>>& cycle_words,
                              const std::vector<long>& cycle_orders,
                              const std::vector<int>& phi) {
  const std::size_t G = gens.size();
  int tgen = -1;
  for (std::size_t g = 0; g < G; ++g)
    if (phi[g] == 1) {
      tgen = static_cast<int>(g);
      break;
    }
  if (tgen < 0) throw NotSupportedIndex("character is trivial");
  const int t = tgen + 1;

  // Schreier generators gamma(rep_c, g) for cosets c in {0,1}.
  std::vector<std::array<std::vector<int>, 2>> table(G);
  for (std::size_t g = 0; g < G; ++g) {
    int lg = static_cast<int>(g) + 1;
    if (phi[g] == 0) {
      table[g][0] = {lg};
      table[g][1] = {t, lg, -t};
    } else if (lg == t) {
      table[g][0] = {};
      table[g][1] = {t, t};
    } else {
      table[g][0] = {lg, -t};
      table[g][1] = {t, lg};
    }
  }
  Presentation K;
  std::vector<std::array<int, 2>> kidx(G, {0, 0});
  for (std::size_t g = 0; g < G; ++g)
    for (int c = 0; c < 2; ++c) {
      if (table[g][static_cast<std::size_t>(c)].empty()) {
        kidx[g][static_cast<std::size_t>(c)] = 0;
        continue;
      }
      K.gens.push_back(
          eval_quat_word(gens, table[g][static_cast<std::size_t>(c)]));
      kidx[g][static_cast<std::size_t>(c)] = static_cast<int>(K.gens.size());
    }

  auto rewrite = [&](const std::vector<int>& rel, int c0) {
    std::vector<int> out;
    int c = c0;
    for (int s : rel) {
      std::size_t g = static_cast<std::size_t>(std::abs(s)) - 1;
      if (s > 0) {
        if (kidx[g][static_cast<std::size_t>(c)] != 0)
          out.push_back(kidx[g][static_cast<std::size_t>(c)]);
        c ^= phi[g];
      } else {
        c ^= phi[g];
        if (kidx[g][static_cast<std::size_t>(c)] != 0)
          out.push_back(-kidx[g][static_cast<std::size_t>(c)]);
      }
    }
    if (c != c0)
      throw NotSupportedIndex("relator does not lie in the kernel");
    free_reduce(out);
    return out;
  };

  for (std::size_t i = 0; i < cycle_words.size(); ++i) {
    std::vector<int> rel;
    for (long k = 0; k < cycle_orders[i]; ++k)
      rel.insert(rel.end(), cycle_words[i].begin(), cycle_words[i].end());
    K.rels.push_back(rewrite(rel, 0));
    K.rels.push_back(rewrite(rel, 1));
  }
  return K;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Genus-two surface subgroups.  For signature (2;-) the group itself is
// normalized; for the two all-period-two signatures of half the area, every
// torsion-free index-two kernel is found (one per admissible mod-2 character)
// and normalized.  Anything else is out of scope for index <= 2.

struct Genus2Tuple {
  std::array<QuaternionElement, 4> gens;  // [g0,g1][g2,g3] = +-1 exactly
  std::vector<int> character;  // phi on the side pairings; empty at index 1
};

inline std::vector<Genus2Tuple> genus2_subgroups(const SidePairings& sp) {
  std::vector<QuaternionElement> gq;
  for (const auto& g : sp.generators) gq.push_back(g.quat);

  if (sp.sig.genus == 2 && sp.sig.periods.empty()) {
    detail::Presentation P;
    P.gens = gq;
    P.rels = sp.cycle_words;
    detail::tietze_reduce(P);
    return {Genus2Tuple{detail::nielsen_genus2(P), {}}};
  }

  for (long m : sp.sig.periods)
    if (m != 2)
      throw NotSupportedIndex(
          "a period above two admits no torsion-free subgroup of index two");
  if (rh_area(sp.sig) * 2 != mpq_class(4))
    throw NotSupportedIndex(
        "index-two subgroups of this signature are not genus two");

  const std::size_t G = gq.size();
  if (G > 20) throw NotSupportedIndex("too many generators");
  std::vector<Genus2Tuple> out;
  for (unsigned long mask = 1; mask < (1ul << G); ++mask) {
    std::vector<int> phi(G, 0);
    for (std::size_t g = 0; g < G; ++g) phi[g] = int((mask >> g) & 1u);
    bool ok = true;
    for (std::size_t i = 0; i < sp.cycle_words.size() && ok; ++i) {
      int parity = 0;
      for (int s : sp.cycle_words[i])
        parity ^= phi[static_cast<std::size_t>(std::abs(s)) - 1];
      int need = sp.cycle_orders[i] == 1 ? 0 : 1;
      if (parity != need) ok = false;
    }
    if (!ok) continue;
    detail::Presentation K =
        detail::rs_index2(gq, sp.cycle_words, sp.cycle_orders, phi);
    detail::tietze_reduce(K);
    out.push_back(Genus2Tuple{detail::nielsen_genus2(K), phi});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical presentations for the two reference signatures.

// Signature (1;2,2): generators A, B and an order-two X with
// ([A,B] X)^2 = -1; Y = [A,B] X is the second order-two class.
struct OneTwoTwoForm {
  QuaternionElement A, B, X, Y;
};

namespace detail {

// Deterministic stream of freely reduced words over m generators: lengths
// ascending, letters ordered 1, -1, 2, -2, ...
inline std::vector<std::vector<int>> reduced_words(int m, int maxlen) {
  std::vector<std::vector<int>> out, layer{{}};
  std::vector<int> alphabet;
  for (int g = 1; g <= m; ++g) {
    alphabet.push_back(g);
    alphabet.push_back(-g);
  }
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : layer)
      for (int s : alphabet) {
        if (!w.empty() && w.back() == -s) continue;
        auto w2 = w;
        w2.push_back(s);
        next.push_back(std::move(w2));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer.swap(next);
  }
  return out;
}

inline std::string pm_key(const QuaternionElement& q) {
  QuaternionElement n = pm_normalize(q);
  std::string key;
  for (const FieldElement* part : {&n.x, &n.y, &n.u, &n.v})
    for (const auto& c : part->c) key += c.get_str() + ";";
  return key;
}

// Do words over {A, B, X} reach every generator of the presentation (up to
// sign) within the given radius?
inline bool generates_all(const std::vector<QuaternionElement>& gens,
                          const QuaternionElement& A,
                          const QuaternionElement& B,
                          const QuaternionElement& X, int radius) {
  std::set<std::string> want;
  for (const auto& g : gens) want.insert(pm_key(g));
  std::set<std::string> seen;
  std::vector<QuaternionElement> frontier{quat_one(*A.alg)};
  seen.insert(pm_key(frontier[0]));
  want.erase(pm_key(frontier[0]));
  std::vector<QuaternionElement> steps{A,
                                       quat_conj(A),
                                       B,
                                       quat_conj(B),
                                       X,
                                       quat_conj(X)};
  for (int depth = 0; depth < radius && !want.empty(); ++depth) {
    std::vector<QuaternionElement> next;
    for (const auto& p : frontier)
      for (const auto& s : steps) {
        QuaternionElement q = quat_mul(p, s);
        std::string key = pm_key(q);
        if (!seen.insert(key).second) continue;
        want.erase(key);
        if (want.empty()) return true;
        if (seen.size() > 20000) return false;
        next.push_back(std::move(q));
      }
    frontier.swap(next);
  }
  return want.empty();
}

}  // namespace detail

inline OneTwoTwoForm canonical_one_two_two(const SidePairings& sp) {
  if (!(sp.sig == Signature{1, {2, 2}}))
    throw NotSupportedIndex("signature is not (1;2,2)");
  std::vector<QuaternionElement> gq;
  for (const auto& g : sp.generators) gq.push_back(g.quat);

  detail::Presentation P;
  P.gens = gq;
  for (std::size_t i = 0; i < sp.cycle_words.size(); ++i) {
    std::vector<int> rel;
    for (long k = 0; k < sp.cycle_orders[i]; ++k)
      rel.insert(rel.end(), sp.cycle_words[i].begin(), sp.cycle_words[i].end());
    P.rels.push_back(rel);
    if (sp.cycle_orders[i] == 2) P.tracked.push_back(sp.cycle_words[i]);
  }
  detail::tietze_reduce(P);
  const int m = static_cast<int>(P.gens.size());
  const NumberField& K = *P.gens.at(0).alg->base;

  for (auto [alen, blen] : {std::pair<int, int>{2, 3}, {3, 4}}) {
    auto awords = detail::reduced_words(m, alen);
    auto bwords = detail::reduced_words(m, blen);
    for (const auto& xw0 : P.tracked) {
      for (const auto& xw : {xw0, detail::word_inverse(xw0)}) {
        QuaternionElement X = detail::eval_quat_word(P.gens, xw);
        for (const auto& aw : awords) {
          QuaternionElement A = detail::eval_quat_word(P.gens, aw);
          QuaternionElement Ai = quat_conj(A);
          for (const auto& bw : bwords) {
            QuaternionElement B = detail::eval_quat_word(P.gens, bw);
            QuaternionElement comm =
                quat_mul(quat_mul(A, B), quat_mul(Ai, quat_conj(B)));
            QuaternionElement Y = quat_mul(comm, X);
            if (!quat_trace(Y).is_zero()) continue;
            if (!detail::generates_all(P.gens, A, B, X, 5)) continue;
            if (!(quat_norm(Y) == K.one()))
              throw NotSupportedIndex("candidate Y is not norm one");
            return OneTwoTwoForm{A, B, X, Y};
          }
        }
      }
    }
  }
  throw NotSupportedIndex("no (1;2,2) canonical form found in search bounds");
}

// Signature (0;2^6): the six order-two cycle transformations, ordered so the
// first five satisfy (X1 X2 X3 X4 X5)^2 = -1 (the sixth is then their product
// inverse up to sign).
inline std::array<QuaternionElement, 6> canonical_zero_two6(
    const SidePairings& sp) {
  if (!(sp.sig == Signature{0, {2, 2, 2, 2, 2, 2}}))
    throw NotSupportedIndex("signature is not (0;2,2,2,2,2,2)");
  std::vector<QuaternionElement> gq;
  for (const auto& g : sp.generators) gq.push_back(g.quat);
  std::vector<QuaternionElement> xs;
  for (std::size_t i = 0; i < sp.cycle_words.size(); ++i)
    if (sp.cycle_orders[i] == 2)
      xs.push_back(detail::eval_quat_word(gq, sp.cycle_words[i]));
  if (xs.size() != 6)
    throw NotSupportedIndex("expected six order-two cycles");
  for (std::size_t drop = 0; drop < 6; ++drop) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 6; ++i)
      if (i != drop) idx.push_back(i);
    std::sort(idx.begin(), idx.end());
    do {
      QuaternionElement p = xs[idx[0]];
      for (std::size_t k = 1; k < 5; ++k) p = quat_mul(p, xs[idx[k]]);
      if (quat_trace(p).is_zero()) {
        std::array<QuaternionElement, 6> out = {xs[idx[0]], xs[idx[1]],
                                                xs[idx[2]], xs[idx[3]],
                                                xs[idx[4]], xs[drop]};
        return out;
      }
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  throw NotSupportedIndex("no ordering gives an order-two five-fold product");
}

// Reduction of a point into the closed domain by side pairings: breadth-first
// over words in the generators, shortest first.
inline std::optional<std::vector<int>> map_into_domain(
    const FordDomain& D, const SidePairings& sp, std::complex<double> z,
    int max_len = 4, double tol = 1e-9) {
  struct Node {
    std::complex<double> z;
    std::vector<int> word;
  };
  std::vector<Node> frontier{{z, {}}};
  if (domain_contains(D, z, tol)) return std::vector<int>{};
  const int G = static_cast<int>(sp.generators.size());
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      for (int letter = -G; letter <= G; ++letter) {
        if (letter == 0) continue;
        if (!node.word.empty() && node.word.back() == -letter) continue;
        const GroupElement& g = sp.generators[std::abs(letter) - 1];
        DiskMatrix dm = g.disk;
        if (letter < 0) {
          dm.A = std::conj(dm.A);
          dm.C = -dm.C;
        }
        Node n2{mobius(dm, node.z), node.word};
        n2.word.push_back(letter);
        if (domain_contains(D, n2.z, tol)) return n2.word;
        next.push_back(std::move(n2));
      }
    }
    frontier.swap(next);
  }
  return std::nullopt;
}

}  // namespace fuchsian
