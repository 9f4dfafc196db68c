// Quaternion algebras (a,b / k) over a totally real field: exact arithmetic
// in the standard basis 1, i, j, ij with i^2 = a, j^2 = b, ij = -ji, and the
// sign test for ramification at real places.

#pragma once

#include <stdexcept>
#include <string>

#include "fuchsian/numberfield.hpp"

namespace fuchsian {

struct QuaternionAlgebra {
  const NumberField* base = nullptr;
  FieldElement a;
  FieldElement b;

  QuaternionAlgebra(const NumberField& K, FieldElement a_, FieldElement b_)
      : base(&K), a(std::move(a_)), b(std::move(b_)) {
    if (a.is_zero() || b.is_zero()) {
      throw std::invalid_argument("quaternion algebra parameters must be nonzero");
    }
  }
};

struct QuaternionElement {
  const QuaternionAlgebra* alg = nullptr;
  FieldElement x, y, u, v;  // coordinates on 1, i, j, ij
};

inline QuaternionElement quat_element(const QuaternionAlgebra& A, FieldElement x, FieldElement y,
                                      FieldElement u, FieldElement v) {
  return QuaternionElement{&A, std::move(x), std::move(y), std::move(u), std::move(v)};
}

inline QuaternionElement quat_scalar(const QuaternionAlgebra& A, const FieldElement& x) {
  const NumberField& K = *A.base;
  return quat_element(A, x, K.zero(), K.zero(), K.zero());
}

inline QuaternionElement quat_zero(const QuaternionAlgebra& A) {
  return quat_scalar(A, A.base->zero());
}
inline QuaternionElement quat_one(const QuaternionAlgebra& A) {
  return quat_scalar(A, A.base->one());
}
inline QuaternionElement quat_i(const QuaternionAlgebra& A) {
  const NumberField& K = *A.base;
  return quat_element(A, K.zero(), K.one(), K.zero(), K.zero());
}
inline QuaternionElement quat_j(const QuaternionAlgebra& A) {
  const NumberField& K = *A.base;
  return quat_element(A, K.zero(), K.zero(), K.one(), K.zero());
}
inline QuaternionElement quat_ij(const QuaternionAlgebra& A) {
  const NumberField& K = *A.base;
  return quat_element(A, K.zero(), K.zero(), K.zero(), K.one());
}

namespace detail {
inline void quat_same_algebra(const QuaternionElement& p, const QuaternionElement& q) {
  if (p.alg != q.alg) throw std::invalid_argument("quaternion elements from different algebras");
}
}  // namespace detail

inline bool quat_eq(const QuaternionElement& p, const QuaternionElement& q) {
  detail::quat_same_algebra(p, q);
  return p.x == q.x && p.y == q.y && p.u == q.u && p.v == q.v;
}
inline bool operator==(const QuaternionElement& p, const QuaternionElement& q) {
  return quat_eq(p, q);
}
inline bool operator!=(const QuaternionElement& p, const QuaternionElement& q) {
  return !quat_eq(p, q);
}

inline QuaternionElement quat_add(const QuaternionElement& p, const QuaternionElement& q) {
  detail::quat_same_algebra(p, q);
  return quat_element(*p.alg, p.x + q.x, p.y + q.y, p.u + q.u, p.v + q.v);
}

inline QuaternionElement quat_sub(const QuaternionElement& p, const QuaternionElement& q) {
  detail::quat_same_algebra(p, q);
  return quat_element(*p.alg, p.x - q.x, p.y - q.y, p.u - q.u, p.v - q.v);
}

inline QuaternionElement quat_neg(const QuaternionElement& p) {
  return quat_element(*p.alg, -p.x, -p.y, -p.u, -p.v);
}

inline QuaternionElement quat_scale(const FieldElement& s, const QuaternionElement& p) {
  return quat_element(*p.alg, s * p.x, s * p.y, s * p.u, s * p.v);
}

// Multiplication from the defining relations:
//   i*ij = a j,  ij*i = -a j,  j*ij = -b i,  ij*j = b i,  (ij)^2 = -a b.
inline QuaternionElement quat_mul(const QuaternionElement& p, const QuaternionElement& q) {
  detail::quat_same_algebra(p, q);
  const QuaternionAlgebra& A = *p.alg;
  const FieldElement& a = A.a;
  const FieldElement& b = A.b;
  FieldElement ab = a * b;
  FieldElement x = p.x * q.x + a * (p.y * q.y) + b * (p.u * q.u) - ab * (p.v * q.v);
  FieldElement y = p.x * q.y + p.y * q.x - b * (p.u * q.v) + b * (p.v * q.u);
  FieldElement u = p.x * q.u + p.u * q.x + a * (p.y * q.v) - a * (p.v * q.y);
  FieldElement v = p.x * q.v + p.v * q.x + p.y * q.u - p.u * q.y;
  return quat_element(A, std::move(x), std::move(y), std::move(u), std::move(v));
}

inline QuaternionElement quat_conj(const QuaternionElement& p) {
  return quat_element(*p.alg, p.x, -p.y, -p.u, -p.v);
}

inline FieldElement quat_trace(const QuaternionElement& p) {
  return p.x + p.x;
}

inline FieldElement quat_norm(const QuaternionElement& p) {
  const QuaternionAlgebra& A = *p.alg;
  return p.x * p.x - A.a * (p.y * p.y) - A.b * (p.u * p.u) + (A.a * A.b) * (p.v * p.v);
}

// A tensor R at the given real place is a division algebra exactly when both
// parameters are negative there.
inline bool ramified_at_real_place(const QuaternionAlgebra& A, int place) {
  const NumberField& K = *A.base;
  return K.sign_at(A.a, place) < 0 && K.sign_at(A.b, place) < 0;
}

}  // namespace fuchsian
