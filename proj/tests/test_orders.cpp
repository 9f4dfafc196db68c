#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "fuchsian/order.hpp"
#include "field_fixtures.hpp"

using namespace fuchsian;

namespace {

const PrimeIdeal& by_norm(const std::vector<PrimeIdeal>& primes, long norm) {
  for (const PrimeIdeal& P : primes) {
    if (P.norm == norm) return P;
  }
  FAIL("no prime of norm " << norm);
  return primes.front();
}

struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

QuaternionAlgebra k7_algebra(const NumberField& K) {
  return QuaternionAlgebra(K, K.element_int({-6, 4, 0}), K.element_rational(-1));
}

QuaternionAlgebra d3981_algebra(const NumberField& K) {
  return QuaternionAlgebra(K, K.element_int({0, -1, -1, 0}), K.element_rational(-1));
}

QuaternionAlgebra d4752_algebra(const NumberField& K) {
  return QuaternionAlgebra(K, K.element_int({-1, -1, 0, 0}), K.element_int({-1, 2, 0, -1}));
}

QuaternionAlgebra rational_algebra(const NumberField& Q, long a, long b) {
  return QuaternionAlgebra(Q, Q.element_rational(a), Q.element_rational(b));
}

// A quaternion with the given integer numerator coordinates over the power
// basis, divided by a common denominator.
QuaternionElement mk_quat(const QuaternionAlgebra& A, std::vector<long> xs,
                          std::vector<long> ys, std::vector<long> us,
                          std::vector<long> vs, const FieldElement& den) {
  const NumberField& K = *A.base;
  auto pad = [&](std::vector<long> v) {
    v.resize(static_cast<size_t>(K.degree), 0);
    return K.element_int(v);
  };
  return quat_scale(K.inv(den),
                    quat_element(A, pad(std::move(xs)), pad(std::move(ys)),
                                 pad(std::move(us)), pad(std::move(vs))));
}

CongruenceSystem literal_system(size_t dim, const std::vector<long>& moduli,
                                const std::vector<std::vector<long>>& rows) {
  REQUIRE(moduli.size() == rows.size());
  CongruenceSystem S;
  S.dim = dim;
  for (size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == dim);
    ZVec f(dim);
    for (size_t j = 0; j < dim; ++j) f[j] = rows[i][j];
    S.forms.push_back(std::move(f));
    S.moduli.push_back(moduli[i]);
  }
  return S;
}

// The maximal order over the cubic field: basis {1, i, beta, i*beta} with
// beta = (1 + i + j)/2 at denominator scale 2.
QuaternionOrder k7_max_order(const QuaternionAlgebra& A) {
  const NumberField& K = *A.base;
  QuaternionElement beta = mk_quat(A, {1}, {1}, {1}, {}, K.element_rational(2));
  return order_from_basis(
      A, {quat_one(A), quat_i(A), beta, quat_mul(quat_i(A), beta)},
      K.element_rational(2));
}

// Over the quartic field of discriminant 3981: beta = ((1+a) + a^2 i + j)/2.
QuaternionOrder d3981_max_order(const QuaternionAlgebra& A) {
  const NumberField& K = *A.base;
  QuaternionElement beta =
      mk_quat(A, {1, 1}, {0, 0, 1}, {1}, {}, K.element_rational(2));
  return order_from_basis(
      A, {quat_one(A), quat_i(A), beta, quat_mul(quat_i(A), beta)},
      K.element_rational(2));
}

// Over the quartic field of discriminant 4752, the intermediate order with
// gamma = ((1+a) + (1+a^2) i + j)/2 and the maximal order with
// beta = ((1+a+a^2+a^3) + (1+a+2a^2) i + ij) / (2(1+a)).
QuaternionOrder d4752_mid_order(const QuaternionAlgebra& A) {
  const NumberField& K = *A.base;
  QuaternionElement gamma =
      mk_quat(A, {1, 1}, {1, 0, 1}, {1}, {}, K.element_rational(2));
  return order_from_basis(
      A, {quat_one(A), quat_i(A), gamma, quat_mul(quat_i(A), gamma)},
      K.element_rational(2));
}

QuaternionOrder d4752_max_order(const QuaternionAlgebra& A) {
  const NumberField& K = *A.base;
  FieldElement den = K.element_int({2, 2, 0, 0});  // 2(1+a)
  QuaternionElement beta =
      mk_quat(A, {1, 1, 1, 1}, {1, 1, 2, 0}, {}, {1}, den);
  return order_from_basis(
      A, {quat_one(A), quat_i(A), beta, quat_mul(quat_i(A), beta)}, den);
}

bool in_4r(const NumberField& K, const FieldElement& x, const FieldElement& y,
           const FieldElement& a, const FieldElement& b) {
  FieldElement e = K.sub(K.sub(K.mul(x, x), K.mul(a, K.mul(y, y))), b);
  for (const auto& c : e.c) {
    if (c.get_den() != 1) return false;
    if (!mpz_divisible_ui_p(c.get_num().get_mpz_t(), 4)) return false;
  }
  return true;
}

mpz_class hnf_index(const ZMat& h) {
  mpz_class d = 1;
  for (size_t i = 0; i < h.size(); ++i) d *= h[i][i];
  return d;
}

}  // namespace

TEST_CASE("standard orders and their discriminants") {
  auto Q = make_field("q");
  auto K7 = make_field("k7");

  QuaternionAlgebra H = rational_algebra(*Q, -1, -1);
  QuaternionOrder L = standard_order(H);
  CHECK(order_discriminant(L) == Q->element_rational(-16));
  CHECK(membership_congruences(L).forms.empty());
  CHECK(order_contains(L, quat_i(H)));
  QuaternionElement omega = mk_quat(H, {1}, {1}, {1}, {1}, Q->element_rational(2));
  CHECK_FALSE(order_contains(L, omega));
  CHECK_FALSE(is_maximal(L));

  QuaternionAlgebra A = k7_algebra(*K7);
  QuaternionOrder S = standard_order(A);
  FieldElement expected = K7->mul_scalar(
      K7->mul(K7->mul(A.a, A.a), K7->mul(A.b, A.b)), -16);
  CHECK(order_discriminant(S) == expected);
  CHECK_FALSE(is_maximal(S));
  CHECK(membership_congruences(S).forms.empty());

  QuaternionAlgebra half(*K7, K7->element_rational(mpq_class(1, 2)),
                         K7->element_rational(-1));
  CHECK_THROWS_AS(standard_order(half), NotIntegral);
}

TEST_CASE("the cubic-field maximal order and its congruences") {
  auto K = make_field("k7");
  QuaternionAlgebra A = k7_algebra(*K);
  QuaternionOrder O = k7_max_order(A);
  FieldElement two = K->element_rational(2);

  QuaternionElement beta = O.r_basis[2];
  CHECK(quat_trace(beta) == K->one());
  CHECK(quat_norm(beta) == K->element_int({2, -1, 0}));

  FieldElement d = order_discriminant(O);
  CHECK(K->norm(d) == mpq_class(-3136));
  RamificationData ram = ramification_set(A);
  CHECK(is_maximal(O, ram));
  CHECK(is_maximal(O));
  CHECK_FALSE(is_maximal(standard_order(A), ram));
  CHECK(hnf_index(O.hnf) == 64);

  // Norm-one elements of the unit group fixture lie in the lattice.
  QuaternionElement a1 =
      mk_quat(A, {0, 2, 2}, {-1, 2, 2}, {0, 2, 2}, {1, -2, -2}, two);
  QuaternionElement b1 =
      mk_quat(A, {-3, 2, 3}, {1, -2, -2}, {1, -2, -3}, {-2, 2, 3}, two);
  for (const auto& g : {a1, b1, quat_j(A)}) {
    CHECK(order_contains(O, g));
    CHECK(quat_norm(g) == K->one());
  }
  CHECK(order_contains(O, quat_ij(A)));
  CHECK_FALSE(order_contains(O, mk_quat(A, {1}, {1}, {}, {}, two)));

  // The six mod-2 relations on (x | y | u | v) characterize membership.
  CongruenceSystem paper = literal_system(
      12, std::vector<long>(6, 2),
      {{1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
       {0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0},
       {0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0},
       {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0},
       {0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0},
       {0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1}});
  CHECK(lattice_equal(congruence_solution_lattice(paper), O.hnf));
  CHECK(congruences_hold(paper, *order_coords(O, a1)));

  CongruenceSystem derived = membership_congruences(O);
  CHECK(derived.forms.size() == 6);
  CHECK(lattice_equal(congruence_solution_lattice(derived), O.hnf));
}

TEST_CASE("the quartic-field maximal order and its congruences") {
  auto K = make_field("d3981");
  QuaternionAlgebra A = d3981_algebra(*K);
  QuaternionOrder O = d3981_max_order(A);
  FieldElement two = K->element_rational(2);

  QuaternionElement beta = O.r_basis[2];
  CHECK(quat_trace(beta) == K->element_int({1, 1}));
  CHECK(quat_norm(beta) == K->element_int({-1, -3, 5, 3}));

  FieldElement d = order_discriminant(O);
  CHECK(abs(K->norm(d)) == 9);
  CHECK(is_maximal(O));
  CHECK(hnf_index(O.hnf) == 256);

  QuaternionElement x1 = mk_quat(A, {}, {-2, 4, 1, -1}, {2, -4, -1, 1},
                                 {-3, 4, 1, -1}, two);
  QuaternionElement x2 = quat_j(A);
  for (const auto& g : {x1, x2}) {
    CHECK(order_contains(O, g));
    CHECK(quat_norm(g) == K->one());
    CHECK(quat_mul(g, g) == quat_neg(quat_one(A)));
  }

  CongruenceSystem paper = literal_system(
      16, std::vector<long>(8, 2),
      {{1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0},
       {0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0},
       {0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0},
       {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1},
       {0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 1},
       {0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0},
       {0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 1, 0},
       {0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 0, 0, 1, 0}});
  CHECK(lattice_equal(congruence_solution_lattice(paper), O.hnf));

  CongruenceSystem derived = membership_congruences(O);
  CHECK(derived.forms.size() == 8);
  CHECK(lattice_equal(congruence_solution_lattice(derived), O.hnf));
}

TEST_CASE("the order tower over the quartic search field") {
  auto K = make_field("d4752");
  QuaternionAlgebra A = d4752_algebra(*K);
  RamificationData ram = ramification_set(A);

  QuaternionOrder mid = d4752_mid_order(A);
  QuaternionElement gamma = mid.r_basis[2];
  CHECK(quat_trace(gamma) == K->element_int({1, 1}));
  CHECK(quat_norm(gamma) == K->element_int({0, -3, 2, 3}));
  CHECK(abs(K->norm(order_discriminant(mid))) == 144);
  CHECK_FALSE(is_maximal(mid, ram));

  CongruenceSystem mid_paper = literal_system(
      16, std::vector<long>(8, 2),
      {{1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 1, 0},
       {0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1},
       {0, 0, 1, 0, 0, 0, 0, 0, 0, 1, -1, 1, 1, 0, 0, 1},
       {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0},
       {0, 0, 0, 0, 1, 0, 0, 0, -1, 0, 1, 0, 1, 0, 0, 1},
       {0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 1, 0, 0},
       {0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 1, 1},
       {0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 1}});
  CHECK(lattice_equal(congruence_solution_lattice(mid_paper), mid.hnf));

  QuaternionOrder O = d4752_max_order(A);
  QuaternionElement beta = O.r_basis[2];
  QuaternionElement ibeta = O.r_basis[3];
  CHECK(quat_trace(beta) == K->element_int({1, 0, 1, 0}));
  CHECK(quat_norm(beta) == K->element_int({1, 0, 0, 2}));

  FieldElement d = order_discriminant(O);
  CHECK(abs(K->norm(d)) == 16);
  CHECK(is_maximal(O, ram));
  std::vector<PrimeIdeal> above2 = factor_prime(*K, 2);
  PrimeLocal loc2(by_norm(above2, 4));
  CHECK(loc2.val(d, 3) == 2);
  CHECK(hnf_index(O.hnf) == 6912);

  // j is an integral combination of the basis.
  QuaternionElement rhs = quat_add(
      quat_add(quat_scale(K->element_int({-1, -1, -2, 0}), quat_one(A)),
               quat_scale(K->element_int({1, 0, 1, 0}), quat_i(A))),
      quat_scale(K->element_rational(-2), ibeta));
  CHECK(quat_j(A) == rhs);

  // The intermediate order sits inside the maximal one.
  CHECK(order_contains(O, gamma));
  CHECK(order_contains(O, quat_mul(quat_i(A), gamma)));
  for (const auto& row : mid.hnf)
    CHECK(order_contains(O, quat_from_scaled_coords(A, row, mid.denom)));

  // Reduced traces and norms of basis sums and products.
  auto tr = [&](const QuaternionElement& q) { return quat_trace(q); };
  auto nr = [&](const QuaternionElement& q) { return quat_norm(q); };
  QuaternionElement one = quat_one(A);
  QuaternionElement i = quat_i(A);
  CHECK(tr(quat_add(one, beta)) == K->element_int({3, 0, 1, 0}));
  CHECK(nr(quat_add(one, beta)) == K->element_int({3, 0, 1, 2}));
  CHECK(tr(quat_add(one, ibeta)) == K->element_int({1, -1, -2, 0}));
  CHECK(nr(quat_add(one, ibeta)) == K->element_int({-1, -8, 4, 6}));
  CHECK(tr(quat_add(i, ibeta)) == K->element_int({-1, -1, -2, 0}));
  CHECK(nr(quat_add(i, ibeta)) == K->element_int({1, -5, 7, 7}));
  CHECK(tr(quat_add(beta, ibeta)) == K->element_int({0, -1, -1, 0}));
  CHECK(nr(quat_add(beta, ibeta)) == K->element_int({0, -7, 6, 8}));
  CHECK(tr(ibeta) == K->element_int({-1, -1, -2, 0}));
  CHECK(nr(ibeta) == K->element_int({-1, -7, 6, 6}));
  CHECK(tr(quat_mul(beta, beta)) == K->element_int({-2, -4, 5, -2}));
  CHECK(nr(quat_mul(beta, beta)) == K->element_int({-27, -120, 48, 68}));
  CHECK(tr(quat_mul(i, ibeta)) == K->element_int({-1, -1, -1, -1}));
  CHECK(nr(quat_mul(i, ibeta)) == K->element_int({-7, -32, 17, 24}));
  CHECK(tr(quat_mul(beta, ibeta)) == K->element_int({1, 7, -9, -5}));
  CHECK(nr(quat_mul(beta, ibeta)) == K->element_int({-95, -419, 132, 252}));
  CHECK(tr(quat_mul(ibeta, ibeta)) == K->element_int({-1, 0, 5, 0}));
  CHECK(nr(quat_mul(ibeta, ibeta)) == K->element_int({-347, -1522, 469, 888}));

  // The mixed-modulus system over the numerator coordinates.
  CongruenceSystem paper = literal_system(
      16, {6, 6, 6, 6, 3, 2, 2, 2, 2},
      {{4, -1, 1, -1, 0, 0, 0, 0, 1, 2, -2, 2, -3, 0, 3, 0},
       {1, -1, 1, -1, 0, 0, 0, 0, -2, 2, -8, -7, 0, 3, 0, 0},
       {0, 0, 0, 0, 4, -1, 1, -1, -1, -2, 2, 1, 1, 2, -2, 2},
       {0, 0, 0, 0, 1, -1, 1, -1, 2, -2, -1, 1, -2, 2, -2, -1},
       {0, 0, 0, 0, 0, 0, 0, 0, -1, 1, -1, 1, 0, 0, 0, 0},
       {0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1},
       {1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0},
       {0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 1, 0, 0},
       {0, 0, 0, 0, 1, 1, 1, 0, 0, 1, 1, 1, 0, 0, 1, 0}});
  CHECK(lattice_equal(congruence_solution_lattice(paper), O.hnf));
  CHECK(lattice_equal(congruence_solution_lattice(membership_congruences(O)),
                      O.hnf));

  // A norm-one generator of the unit group fixture.
  QuaternionElement h1 = mk_quat(A, {1, 0, -1, 0}, {-1, 0, 0, 0}, {},
                                 {0, 4, 1, -1}, O.denom);
  CHECK(order_contains(O, h1));
  CHECK(quat_norm(h1) == K->one());
}

TEST_CASE("solving the quadratic congruence mod 4") {
  auto Q = make_field("q");
  auto K7 = make_field("k7");
  auto K3981 = make_field("d3981");
  auto K4752 = make_field("d4752");

  QuaternionAlgebra A7 = k7_algebra(*K7);
  auto [x7, y7] = solve_quadratic_mod4(*K7, A7.a, A7.b);
  CHECK(x7 == K7->one());
  CHECK(y7 == K7->one());
  CHECK(in_4r(*K7, x7, y7, A7.a, A7.b));

  QuaternionAlgebra A39 = d3981_algebra(*K3981);
  auto [x39, y39] = solve_quadratic_mod4(*K3981, A39.a, A39.b);
  CHECK(x39 == K3981->element_int({1, 1}));
  CHECK(y39 == K3981->element_int({0, 0, 1}));
  CHECK(in_4r(*K3981, x39, y39, A39.a, A39.b));

  QuaternionAlgebra A47 = d4752_algebra(*K4752);
  auto [x47, y47] = solve_quadratic_mod4(*K4752, A47.a, A47.b);
  CHECK(x47 == K4752->element_int({1, 1}));
  CHECK(y47 == K4752->element_int({1, 0, 1}));
  CHECK(in_4r(*K4752, x47, y47, A47.a, A47.b));

  for (const NumberField* K : {K7.get(), K3981.get()}) {
    auto [xb, yb] = solve_quadratic_mod4(*K, K->element_int({-6, 4}), K->one());
    CHECK(xb == K->one());
    CHECK(yb == K->zero());
  }

  auto [xq, yq] = solve_quadratic_mod4(*Q, Q->element_rational(2),
                                       Q->element_rational(3));
  CHECK(in_4r(*Q, xq, yq, Q->element_rational(2), Q->element_rational(3)));

  bool threw = false;
  try {
    solve_quadratic_mod4(*Q, Q->element_rational(-1), Q->element_rational(-1));
  } catch (const HypothesisFails& e) {
    threw = true;
    std::string what = e.what();
    CHECK(what.find("sqrt(a) mod 4R is absent") != std::string::npos);
    CHECK(what.find("b = -1") != std::string::npos);
  }
  CHECK(threw);

  CHECK_THROWS_AS(solve_quadratic_mod4(
                      *K7, K7->element_rational(mpq_class(1, 2)), K7->one()),
                  NotIntegral);
}

TEST_CASE("direct construction of maximal orders") {
  auto Q = make_field("q");
  auto K7 = make_field("k7");
  auto K3981 = make_field("d3981");
  auto K4752 = make_field("d4752");

  QuaternionAlgebra A7 = k7_algebra(*K7);
  QuaternionOrder O7 = build_maximal_order_nice(A7);
  CHECK(O7.denom == K7->element_rational(2));
  CHECK(lattice_equal(O7.hnf, k7_max_order(A7).hnf));

  QuaternionAlgebra A39 = d3981_algebra(*K3981);
  QuaternionOrder O39 = build_maximal_order_nice(A39);
  CHECK(lattice_equal(O39.hnf, d3981_max_order(A39).hnf));

  QuaternionAlgebra A47 = d4752_algebra(*K4752);
  CHECK_THROWS_AS(build_maximal_order_nice(A47), HypothesisFails);

  QuaternionAlgebra M = rational_algebra(*Q, 1, 1);
  QuaternionOrder OM = build_maximal_order_nice(M);
  CHECK(is_maximal(OM));
  CHECK(abs(Q->norm(order_discriminant(OM))) == 1);
  CHECK(order_contains(OM, mk_quat(M, {1}, {}, {1}, {}, Q->element_rational(2))));
}

TEST_CASE("searching for maximal orders") {
  auto Q = make_field("q");
  auto K7 = make_field("k7");
  auto K4752 = make_field("d4752");

  QuaternionAlgebra A7 = k7_algebra(*K7);
  QuaternionOrder S7 = build_maximal_order_search(A7, K7->one());
  CHECK(lattice_equal(S7.hnf, k7_max_order(A7).hnf));
  CHECK(S7.denom == K7->element_rational(2));

  QuaternionAlgebra A47 = d4752_algebra(*K4752);
  QuaternionOrder S47 =
      build_maximal_order_search(A47, K4752->element_int({1, 1}));
  CHECK(S47.denom == K4752->element_int({2, 2, 0, 0}));
  CHECK(lattice_equal(S47.hnf, d4752_max_order(A47).hnf));

  QuaternionAlgebra H = rational_algebra(*Q, -1, -1);
  CHECK_THROWS_AS(build_maximal_order_search(H, Q->one()), SearchExhausted);
  QuaternionOrder hur = build_maximal_order_search(H, Q->element_rational(2));
  CHECK(is_maximal(hur));
  CHECK(abs(Q->norm(order_discriminant(hur))) == 4);
  CHECK(order_contains(hur, mk_quat(H, {1}, {1}, {1}, {1}, Q->element_rational(2))));

  QuaternionAlgebra M = rational_algebra(*Q, 1, 1);
  QuaternionOrder SM = build_maximal_order_search(M, Q->one());
  CHECK(lattice_equal(SM.hnf, build_maximal_order_nice(M).hnf));

  CHECK_THROWS_AS(
      build_maximal_order_search(A7, K7->element_rational(mpq_class(1, 2))),
      NotIntegral);
}

TEST_CASE("denominator bounds for the search") {
  auto Q = make_field("q");
  auto K7 = make_field("k7");
  auto K3981 = make_field("d3981");
  auto K4752 = make_field("d4752");

  CHECK(denominator_bound(k7_algebra(*K7)) == K7->one());
  CHECK(denominator_bound(d3981_algebra(*K3981)) == K3981->one());

  QuaternionAlgebra A47 = d4752_algebra(*K4752);
  FieldElement r = denominator_bound(A47);
  CHECK(abs(K4752->norm(r)) == 3);
  PrimeLocal loc3(by_norm(factor_prime(*K4752, 3), 3));
  PrimeLocal loc2(by_norm(factor_prime(*K4752, 2), 4));
  CHECK(loc3.val(r, 2) == 1);
  CHECK(loc2.val(r, 1) == 0);

  // The bound drives the search to the same maximal order.
  QuaternionOrder via_bound = build_maximal_order_search(A47, r);
  CHECK(same_order(via_bound, d4752_max_order(A47)));

  CHECK_THROWS_AS(denominator_bound(rational_algebra(*Q, 4, -1)),
                  HypothesisFails);
  CHECK_THROWS_AS(denominator_bound(rational_algebra(*Q, -1, -1)),
                  HypothesisFails);
}

TEST_CASE("congruence systems agree with lattice membership on samples") {
  auto K7 = make_field("k7");
  auto K3981 = make_field("d3981");
  auto K4752 = make_field("d4752");
  SplitMix rng{0x0a2fULL};

  QuaternionAlgebra A7 = k7_algebra(*K7);
  QuaternionAlgebra A39 = d3981_algebra(*K3981);
  QuaternionAlgebra A47 = d4752_algebra(*K4752);
  std::vector<QuaternionOrder> orders;
  orders.push_back(k7_max_order(A7));
  orders.push_back(d3981_max_order(A39));
  orders.push_back(d4752_max_order(A47));

  for (const QuaternionOrder& O : orders) {
    CongruenceSystem S = membership_congruences(O);
    const size_t dim = S.dim;
    long in_count = 0;
    for (int t = 0; t < 10000; ++t) {
      ZVec v(dim);
      for (size_t j = 0; j < dim; ++j) v[j] = rng.range(-20, 20);
      bool by_forms = congruences_hold(S, v);
      bool by_hnf = hnf_contains(O.hnf, v);
      if (by_forms != by_hnf) {
        CAPTURE(t);
        REQUIRE(by_forms == by_hnf);
      }
      if (by_hnf) ++in_count;
    }
    for (int t = 0; t < 100; ++t) {
      ZVec v(dim, 0);
      for (const auto& row : O.hnf) {
        long c = rng.range(-3, 3);
        for (size_t j = 0; j < dim; ++j) v[j] += c * row[j];
      }
      CHECK(congruences_hold(S, v));
      ++in_count;
    }
    CHECK(in_count > 0);
  }

  CongruenceSystem S = membership_congruences(orders[0]);
  CHECK_THROWS_AS(congruences_hold(S, ZVec(3, 0)), std::invalid_argument);
}

TEST_CASE("discriminants under change of basis") {
  auto K = make_field("k7");
  QuaternionAlgebra A = k7_algebra(*K);
  QuaternionOrder O = k7_max_order(A);
  FieldElement two = K->element_rational(2);

  // Rescaling a basis vector by a unit keeps the lattice and multiplies the
  // discriminant by the square of the unit.
  FieldElement unit = K->alpha();
  REQUIRE(abs(K->norm(unit)) == 1);
  std::vector<QuaternionElement> basis = O.r_basis;
  basis[2] = quat_scale(unit, basis[2]);
  QuaternionOrder O2 = order_from_basis(A, basis, two);
  CHECK(lattice_equal(O2.hnf, O.hnf));
  CHECK(order_discriminant(O2) ==
        K->mul(order_discriminant(O), K->mul(unit, unit)));

  // Index law: the standard order inside the maximal one.
  QuaternionOrder Ostd2 = order_from_basis(
      A, {quat_one(A), quat_i(A), quat_j(A), quat_ij(A)}, two);
  mpz_class index = hnf_index(Ostd2.hnf) / hnf_index(O.hnf);
  CHECK(index == 64);
  mpq_class n_std = abs(K->norm(order_discriminant(Ostd2)));
  mpq_class n_max = abs(K->norm(order_discriminant(O)));
  CHECK(n_std == index * index * n_max);

  // Invalid bases are rejected.
  QuaternionElement half_ij = mk_quat(A, {}, {}, {}, {1}, two);
  CHECK_THROWS_AS(
      order_from_basis(A, {quat_one(A), quat_i(A), quat_j(A), half_ij}, two),
      std::invalid_argument);
  CHECK_THROWS_AS(
      order_from_basis(A,
                       {quat_scalar(A, two), quat_i(A), quat_j(A), quat_ij(A)},
                       two),
      std::invalid_argument);
}
