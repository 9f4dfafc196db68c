#include <catch2/catch_amalgamated.hpp>

#include "fuchsian/linalg.hpp"

using namespace fuchsian;

TEST_CASE("integer determinants") {
  CHECK(z_det(z_identity(4)) == 1);
  ZMat a = {{mpz_class(2), mpz_class(3)}, {mpz_class(1), mpz_class(2)}};
  CHECK(z_det(a) == 1);
  ZMat b = {{mpz_class(2), mpz_class(4)}, {mpz_class(1), mpz_class(2)}};
  CHECK(z_det(b) == 0);
  ZMat c = {{mpz_class(0), mpz_class(1), mpz_class(0)},
            {mpz_class(1), mpz_class(0), mpz_class(0)},
            {mpz_class(0), mpz_class(0), mpz_class(3)}};
  CHECK(z_det(c) == -3);
}

TEST_CASE("row HNF and membership") {
  // Lattice spanned by (2,1) and (0,3): index 6 in Z^2.
  ZMat gens = {{mpz_class(2), mpz_class(1)}, {mpz_class(0), mpz_class(3)}};
  ZMat h = hnf_rows(gens);
  REQUIRE(h.size() == 2);
  CHECK(z_det(h) == 6);
  CHECK(hnf_contains(h, {mpz_class(2), mpz_class(1)}));
  CHECK(hnf_contains(h, {mpz_class(2), mpz_class(4)}));
  CHECK(!hnf_contains(h, {mpz_class(1), mpz_class(0)}));
  CHECK(!hnf_contains(h, {mpz_class(0), mpz_class(1)}));

  // Redundant generators shouldn't change the result.
  ZMat gens2 = {{mpz_class(2), mpz_class(1)},
                {mpz_class(0), mpz_class(3)},
                {mpz_class(2), mpz_class(4)},
                {mpz_class(4), mpz_class(2)}};
  CHECK(lattice_equal(h, hnf_rows(gens2)));

  // Coset reduction lands inside the fundamental box.
  ZVec red = hnf_reduce(h, {mpz_class(17), mpz_class(-5)});
  CHECK(red[0] >= 0);
  CHECK(red[0] < 2);
  ZVec diff = {mpz_class(17) - red[0], mpz_class(-5) - red[1]};
  CHECK(hnf_contains(h, diff));
}

TEST_CASE("Smith normal form with transforms") {
  ZMat a = {{mpz_class(2), mpz_class(4), mpz_class(4)},
            {mpz_class(-6), mpz_class(6), mpz_class(12)},
            {mpz_class(10), mpz_class(4), mpz_class(16)}};
  ZMat p, q;
  auto d = snf_with_left(a, &p, &q);
  REQUIRE(d.size() == 3);
  // gcd of entries 2; gcd of 2x2 minors 4; |det| = 624.
  CHECK(d[0] == 2);
  CHECK(d[1] == 2);
  CHECK(d[2] == 156);
  CHECK(d[1] % d[0] == 0);
  CHECK(d[2] % d[1] == 0);
  // P A Q == diag(d)
  auto matmul = [](const ZMat& x, const ZMat& y) {
    size_t r = x.size(), c = y[0].size(), k = y.size();
    ZMat out = zmat(r, c);
    for (size_t i = 0; i < r; ++i)
      for (size_t t = 0; t < k; ++t)
        if (x[i][t] != 0)
          for (size_t j = 0; j < c; ++j) out[i][j] += x[i][t] * y[t][j];
    return out;
  };
  ZMat prod = matmul(matmul(p, a), q);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      CHECK(prod[i][j] == (i == j ? d[i] : mpz_class(0)));
  CHECK(abs(z_det(p)) == 1);
  CHECK(abs(z_det(q)) == 1);
}

TEST_CASE("integer linear solve") {
  ZMat a = {{mpz_class(2), mpz_class(0)}, {mpz_class(0), mpz_class(3)}};
  auto x = z_solve(a, {mpz_class(4), mpz_class(9)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  CHECK(!z_solve(a, {mpz_class(1), mpz_class(0)}).has_value());

  // Underdetermined system: any solution is acceptable.
  ZMat b = {{mpz_class(2), mpz_class(3)}};
  auto y = z_solve(b, {mpz_class(1)});
  REQUIRE(y.has_value());
  CHECK(mpz_class(2) * (*y)[0] + mpz_class(3) * (*y)[1] == 1);
}

TEST_CASE("rational elimination") {
  QMat a = qmat(2, 2);
  a[0][0] = 1;
  a[0][1] = mpq_class(1, 2);
  a[1][0] = mpq_class(1, 3);
  a[1][1] = 1;
  CHECK(q_det(a) == mpq_class(5, 6));
  QVec b = {mpq_class(2), mpq_class(2)};
  QVec x = q_solve(a, b);
  CHECK(a[0][0] * x[0] + a[0][1] * x[1] == 2);
  QMat sing = qmat(2, 2);
  sing[0][0] = 1;
  sing[1][0] = 1;
  CHECK_THROWS_AS(q_solve(sing, b), fuchsian::DivisionByZero);
}
