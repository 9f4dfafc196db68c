#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "fuchsian/cmext.hpp"
#include "fuchsian/ideals.hpp"
#include "field_fixtures.hpp"

using namespace fuchsian;

namespace {

FpPoly fp_of(std::uint64_t p, std::vector<std::uint64_t> ascending) {
  FpPoly r{p, std::move(ascending)};
  fp_trim(r);
  return r;
}

const PrimeIdeal& by_norm(const std::vector<PrimeIdeal>& primes, long norm) {
  for (const PrimeIdeal& P : primes) {
    if (P.norm == norm) return P;
  }
  FAIL("no prime of norm " << norm);
  return primes.front();
}

const PrimeIdeal& by_gpoly(const std::vector<PrimeIdeal>& primes, const ZPoly& g) {
  for (const PrimeIdeal& P : primes) {
    if (P.gpoly == g) return P;
  }
  FAIL("no prime with the requested factor polynomial");
  return primes.front();
}

}  // namespace

TEST_CASE("finite field factorization") {
  SECTION("x^2+1 over F_5 splits into two linear factors") {
    auto fac = finite_field_factor(fp_of(5, {1, 0, 1}));
    REQUIRE(fac.size() == 2);
    CHECK(fac[0].first.c == std::vector<std::uint64_t>{2, 1});
    CHECK(fac[0].second == 1);
    CHECK(fac[1].first.c == std::vector<std::uint64_t>{3, 1});
    CHECK(fac[1].second == 1);
  }
  SECTION("x^2+1 is irreducible over F_3") {
    auto fac = finite_field_factor(fp_of(3, {1, 0, 1}));
    REQUIRE(fac.size() == 1);
    CHECK(fac[0].first.c == std::vector<std::uint64_t>{1, 0, 1});
    CHECK(fac[0].second == 1);
  }
  SECTION("x factors as itself") {
    auto fac = finite_field_factor(fp_of(7, {0, 1}));
    REQUIRE(fac.size() == 1);
    CHECK(fac[0].first.c == std::vector<std::uint64_t>{0, 1});
    CHECK(fac[0].second == 1);
  }
  SECTION("multiplicities over F_2: x^3 (x+1)^2 = x^5 + x^3") {
    auto fac = finite_field_factor(fp_of(2, {0, 0, 0, 1, 0, 1}));
    REQUIRE(fac.size() == 2);
    CHECK(fac[0].first.c == std::vector<std::uint64_t>{0, 1});
    CHECK(fac[0].second == 3);
    CHECK(fac[1].first.c == std::vector<std::uint64_t>{1, 1});
    CHECK(fac[1].second == 2);
  }
  SECTION("p-th power detection: (x^2+x+2)^3 over F_3") {
    FpPoly h = fp_of(3, {2, 1, 1});
    FpPoly f = fp_mul(fp_mul(h, h), h);
    auto fac = finite_field_factor(f);
    REQUIRE(fac.size() == 1);
    CHECK(fac[0].first.c == h.c);
    CHECK(fac[0].second == 3);
  }
  SECTION("deterministic and seed independent after canonical sorting") {
    // (x-1)(x-2)(x-3)(x-4)(x-5) over F_101: five factors of equal degree
    // exercise the randomized equal-degree splitter.
    FpPoly f = fp_of(101, {1});
    for (std::uint64_t r = 1; r <= 5; ++r) f = fp_mul(f, fp_of(101, {101 - r, 1}));
    auto fac1 = finite_field_factor(f, 1);
    auto fac2 = finite_field_factor(f, 2);
    REQUIRE(fac1.size() == 5);
    REQUIRE(fac1.size() == fac2.size());
    for (std::size_t i = 0; i < fac1.size(); ++i) {
      CHECK(fac1[i].first.c == fac2[i].first.c);
      CHECK(fac1[i].second == 1);
    }
    // Reassemble and compare.
    FpPoly prod = fp_of(101, {1});
    for (const auto& [g, m] : fac1) {
      for (int k = 0; k < m; ++k) prod = fp_mul(prod, g);
    }
    CHECK(fp_equal(prod, f));
  }
  SECTION("degree pattern matches the full factorization on squarefree input") {
    FpPoly f = fp_of(2, {1, 0, 1, 1});  // x^3+x^2+1, irreducible
    auto pat = fp_degree_pattern(f);
    REQUIRE(pat.size() == 1);
    CHECK(pat[0] == std::pair<int, int>{3, 1});
    FpPoly g = fp_of(5, {1, 0, 1});  // splits into two linears
    pat = fp_degree_pattern(g);
    REQUIRE(pat.size() == 1);
    CHECK(pat[0] == std::pair<int, int>{1, 2});
  }
}

TEST_CASE("prime factorization in number fields") {
  auto k7 = make_field("k7");
  SECTION("2 is inert of residue degree 3 in k7") {
    auto primes = factor_prime(*k7, 2);
    REQUIRE(primes.size() == 1);
    CHECK(primes[0].e == 1);
    CHECK(primes[0].f == 3);
    CHECK(primes[0].norm == 8);
    CHECK(primes[0].label == "P2");
    CHECK(primes[0].gpoly == poly_from_leading({1, 1, 0, 1}));
  }
  SECTION("7 is totally ramified in k7") {
    auto primes = factor_prime(*k7, 7);
    REQUIRE(primes.size() == 1);
    CHECK(primes[0].e == 3);
    CHECK(primes[0].f == 1);
    CHECK(primes[0].norm == 7);
    CHECK(primes[0].gpoly == poly_from_leading({1, 2}));
  }
  SECTION("3 splits into primes of norms 3 and 27 in the disc-1957 field") {
    auto K = make_field("d1957");
    auto primes = factor_prime(*K, 3);
    REQUIRE(primes.size() == 2);
    std::multiset<long> norms = {primes[0].norm.get_si(), primes[1].norm.get_si()};
    CHECK(norms == std::multiset<long>{3, 27});
    CHECK(primes[0].e == 1);
    CHECK(primes[1].e == 1);
    CHECK(primes[0].label == "P3a");
    CHECK(primes[1].label == "P3b");
  }
  SECTION("3 is inert-ramified of norm 9 in the disc-2304 field") {
    auto K = make_field("d2304");
    auto primes = factor_prime(*K, 3);
    REQUIRE(primes.size() == 1);
    CHECK(primes[0].e == 2);
    CHECK(primes[0].f == 2);
    CHECK(primes[0].norm == 9);
  }
  SECTION("11 has two degree-one primes in Q(sqrt 5)") {
    auto K = make_field("d5");
    auto primes = factor_prime(*K, 11);
    REQUIRE(primes.size() == 2);
    CHECK(primes[0].norm == 11);
    CHECK(primes[1].norm == 11);
    CHECK(primes[0].label == "P11a");
    CHECK(primes[1].label == "P11b");
  }
  SECTION("2 is inert in Q(sqrt 5) and ramified in Q(sqrt 2)") {
    auto K5 = make_field("d5");
    auto p5 = factor_prime(*K5, 2);
    REQUIRE(p5.size() == 1);
    CHECK(p5[0].f == 2);
    CHECK(p5[0].norm == 4);
    auto K8 = make_field("d8");
    auto p8 = factor_prime(*K8, 2);
    REQUIRE(p8.size() == 1);
    CHECK(p8[0].e == 2);
    CHECK(p8[0].norm == 2);
  }
  SECTION("rational field") {
    auto Q = make_field("q");
    auto primes = factor_prime(*Q, 5);
    REQUIRE(primes.size() == 1);
    CHECK(primes[0].e == 1);
    CHECK(primes[0].f == 1);
    CHECK(primes[0].norm == 5);
    CHECK(primes[0].label == "P5");
  }
}

TEST_CASE("sum of e*f equals the degree for every field and small prime") {
  for (const FieldSpec& spec : all_field_specs()) {
    auto K = make_field(spec.id);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
      int total = 0;
      for (const PrimeIdeal& P : factor_prime(*K, p)) total += P.e * P.f;
      INFO(spec.id << " at p=" << p);
      CHECK(total == K->degree);
    }
  }
}

TEST_CASE("ideal counts by norm") {
  auto Q = make_field("q");
  CHECK(count_ideals_up_to(*Q, 50) == 50);

  auto K = make_field("d5");
  long assembled = count_ideals_up_to(*K, 50);
  // Independent count through the divisor sum of the quadratic character
  // mod 5: the number of ideals of norm exactly k is sum_{d | k} chi(d).
  auto chi5 = [](long d) -> long {
    switch (d % 5) {
      case 1:
      case 4:
        return 1;
      case 2:
      case 3:
        return -1;
      default:
        return 0;
    }
  };
  long direct = 0;
  for (long k = 1; k <= 50; ++k) {
    for (long d = 1; d <= k; ++d) {
      if (k % d == 0) direct += chi5(d);
    }
  }
  CHECK(assembled == direct);
  CHECK(assembled == 22);
}

TEST_CASE("local valuations and residue arithmetic") {
  auto k7 = make_field("k7");
  auto P2 = factor_prime(*k7, 2)[0];
  PrimeLocal loc(P2);
  CHECK(loc.val(k7->element_rational(2)) == 1);
  CHECK(loc.val(k7->element_rational(8)) == 3);
  CHECK(loc.val(loc.uniformizer()) == 1);
  CHECK(loc.residues(1).size() == 8);

  auto K8 = make_field("d8");
  auto Q2 = factor_prime(*K8, 2)[0];
  PrimeLocal loc2(Q2);
  CHECK(loc2.val(K8->element_rational(2)) == 2);
  CHECK(loc2.val(K8->alpha()) == 1);
  // 2 / sqrt(2) = sqrt(2) modulo P.
  FieldElement u = loc2.quotient_mod(K8->element_rational(2), K8->alpha(), 1);
  CHECK(loc2.val(K8->sub(u, K8->alpha()), 1) >= 1);
}

TEST_CASE("splitting matches the residue-field square law at odd primes") {
  for (const FieldSpec& spec : all_field_specs()) {
    auto K = make_field(spec.id);
    FieldElement minus_one = K->element_rational(-1);
    for (const PrimeIdeal& P : all_primes_up_to(*K, 100)) {
      if (P.p == 2) continue;  // even primes are decided by the defect, not residues
      SplittingBehavior b = splitting_in_cm_extension(*K, P, 2);
      PrimeLocal loc(P);
      FpPoly r = loc.residue(minus_one);
      bool euler = loc.residue_is_square(r);
      bool exhaustive = loc.residue_is_square_exhaustive(r);
      INFO(spec.id << " " << P.describe());
      CHECK(euler == exhaustive);
      CHECK(b != SplittingBehavior::Ramified);
      CHECK((b == SplittingBehavior::Split) == euler);
    }
  }
}

TEST_CASE("splitting in k(i): reference behaviors") {
  auto expect_m2 = [](const char* field, long p, long norm, SplittingBehavior want) {
    auto K = make_field(field);
    auto primes = factor_prime(*K, p);
    const PrimeIdeal& P = by_norm(primes, norm);
    INFO(field << " " << P.describe());
    CHECK(splitting_in_cm_extension(*K, P, 2) == want);
  };
  // Even primes, decided by the quadratic defect.
  expect_m2("k7", 2, 8, SplittingBehavior::Ramified);
  expect_m2("d148", 2, 2, SplittingBehavior::Ramified);
  expect_m2("d725", 2, 16, SplittingBehavior::Ramified);
  expect_m2("d1125", 2, 16, SplittingBehavior::Ramified);
  expect_m2("d2000", 2, 4, SplittingBehavior::Inert);
  expect_m2("d2304", 2, 2, SplittingBehavior::Inert);
  expect_m2("d4352", 2, 2, SplittingBehavior::Split);
  expect_m2("d4752", 2, 4, SplittingBehavior::Split);
  {
    auto K = make_field("d229");
    for (const PrimeIdeal& P : factor_prime(*K, 2)) {
      INFO(P.describe());
      CHECK(splitting_in_cm_extension(*K, P, 2) == SplittingBehavior::Ramified);
    }
  }
  {
    auto K = make_field("d2777");
    for (const PrimeIdeal& P : factor_prime(*K, 2)) {
      INFO(P.describe());
      CHECK(splitting_in_cm_extension(*K, P, 2) == SplittingBehavior::Ramified);
    }
  }
  {
    // Two primes over 2 with different ramification and different behavior.
    auto K = make_field("d316");
    auto primes = factor_prime(*K, 2);
    const PrimeIdeal& ram2 = by_gpoly(primes, poly_from_leading({1, 0}));   // e = 2
    const PrimeIdeal& unram = by_gpoly(primes, poly_from_leading({1, 1}));  // e = 1
    CHECK(ram2.e == 2);
    CHECK(unram.e == 1);
    CHECK(splitting_in_cm_extension(*K, ram2, 2) == SplittingBehavior::Split);
    CHECK(splitting_in_cm_extension(*K, unram, 2) == SplittingBehavior::Ramified);
  }
  // Odd primes.
  expect_m2("k7", 7, 7, SplittingBehavior::Inert);
  expect_m2("d3981", 3, 3, SplittingBehavior::Inert);
  expect_m2("d1957", 3, 3, SplittingBehavior::Inert);
  expect_m2("d1957", 7, 7, SplittingBehavior::Inert);
  expect_m2("d2000", 5, 5, SplittingBehavior::Split);
  expect_m2("d148", 5, 5, SplittingBehavior::Split);
  expect_m2("d148", 13, 13, SplittingBehavior::Split);
  expect_m2("d2304", 3, 9, SplittingBehavior::Split);
  {
    auto K = make_field("d725");
    for (const PrimeIdeal& P : factor_prime(*K, 11)) {
      if (P.f > 1) continue;
      CHECK(splitting_in_cm_extension(*K, P, 2) == SplittingBehavior::Inert);
    }
    for (const PrimeIdeal& P : factor_prime(*K, 31)) {
      if (P.f > 1) continue;
      CHECK(splitting_in_cm_extension(*K, P, 2) == SplittingBehavior::Inert);
    }
    for (const PrimeIdeal& P : factor_prime(*K, 61)) {
      if (P.f > 1) continue;
      CHECK(splitting_in_cm_extension(*K, P, 2) == SplittingBehavior::Split);
    }
  }
}

TEST_CASE("splitting in k(omega): reference behaviors") {
  auto expect_m3 = [](const char* field, long p, long norm, SplittingBehavior want) {
    auto K = make_field(field);
    auto primes = factor_prime(*K, p);
    const PrimeIdeal& P = by_norm(primes, norm);
    INFO(field << " " << P.describe());
    CHECK(splitting_in_cm_extension(*K, P, 3) == want);
  };
  // Even primes (unramified in k(omega); defect splits split/inert).
  expect_m3("d2777", 2, 2, SplittingBehavior::Inert);
  expect_m3("d4352", 2, 2, SplittingBehavior::Inert);
  expect_m3("d4752", 2, 4, SplittingBehavior::Split);
  expect_m3("d148", 2, 2, SplittingBehavior::Inert);
  // Odd primes.
  expect_m3("k7", 7, 7, SplittingBehavior::Split);
  expect_m3("d3981", 3, 3, SplittingBehavior::Split);
  expect_m3("d1957", 3, 3, SplittingBehavior::Ramified);
  expect_m3("d1957", 7, 7, SplittingBehavior::Split);
  expect_m3("d2000", 5, 5, SplittingBehavior::Inert);
  expect_m3("d4752", 3, 3, SplittingBehavior::Inert);
  expect_m3("d148", 5, 5, SplittingBehavior::Inert);
  expect_m3("d148", 13, 13, SplittingBehavior::Split);
  expect_m3("d2304", 3, 9, SplittingBehavior::Split);
  {
    auto K = make_field("d725");
    for (const PrimeIdeal& P : factor_prime(*K, 11)) {
      if (P.f > 1) continue;
      CHECK(splitting_in_cm_extension(*K, P, 3) == SplittingBehavior::Inert);
    }
    for (const PrimeIdeal& P : factor_prime(*K, 31)) {
      if (P.f > 1) continue;
      CHECK(splitting_in_cm_extension(*K, P, 3) == SplittingBehavior::Split);
    }
    for (const PrimeIdeal& P : factor_prime(*K, 61)) {
      if (P.f > 1) continue;
      CHECK(splitting_in_cm_extension(*K, P, 3) == SplittingBehavior::Split);
    }
  }
}

TEST_CASE("splitting in higher cyclotomic extensions") {
  {
    // k7 contains k_7; the even prime splits in k(zeta_14)|k7.
    auto K = make_field("k7");
    const PrimeIdeal P2 = factor_prime(*K, 2)[0];
    CHECK(splitting_in_cm_extension(*K, P2, 7) == SplittingBehavior::Split);
    // Unsupported period: k_5 is not inside a cubic field.
    CHECK_THROWS_AS(splitting_in_cm_extension(*K, P2, 5), PeriodNotSupported);
  }
  {
    // The disc-1125 field is k_15; its even prime splits in k(zeta_30)|k.
    auto K = make_field("d1125");
    const PrimeIdeal P2 = factor_prime(*K, 2)[0];
    CHECK(P2.norm == 16);
    CHECK(splitting_in_cm_extension(*K, P2, 15) == SplittingBehavior::Split);
  }
  {
    // Q(sqrt 2) = k_4; the norm-25 prime splits in k(zeta_8)|k.
    auto K = make_field("d8");
    const PrimeIdeal P5 = factor_prime(*K, 5)[0];
    CHECK(P5.norm == 25);
    CHECK(splitting_in_cm_extension(*K, P5, 4) == SplittingBehavior::Split);
  }
}

TEST_CASE("admissible periods") {
  auto expect = [](const char* field, std::vector<long> want) {
    auto K = make_field(field);
    INFO(field);
    CHECK(admissible_periods(*K) == want);
  };
  expect("q", {2, 3});
  expect("d5", {2, 3, 5});
  expect("d8", {2, 3, 4});
  expect("d12", {2, 3, 6});
  expect("d13", {2, 3});
  expect("d17", {2, 3});
  expect("d24", {2, 3});
  expect("d28", {2, 3});
  expect("k7", {2, 3, 7});
  expect("d81", {2, 3, 9});
  for (const char* cubic : {"d148", "d169", "d229", "d257", "d316", "d361"}) {
    expect(cubic, {2, 3});
  }
  expect("d725", {2, 3, 5});
  expect("d1125", {2, 3, 5, 15});
  expect("d2000", {2, 3, 5, 10});
  expect("d2304", {2, 3, 4, 6, 12});
  expect("d4352", {2, 3, 4});
  expect("d4752", {2, 3, 6});
  for (const char* plain : {"d1957", "d2777", "d3981", "d5744"}) {
    expect(plain, {2, 3});
  }
  for (const char* quintic : {"d24217", "d36497", "d38569"}) {
    expect(quintic, {2, 3});
  }
  expect("d106069", {2, 3});
  // The disc-722000 sextic contains Q(sqrt 5): the golden ratio is certified
  // exactly by the root search (5^3 divides the discriminant).
  expect("d722000", {2, 3, 5});
}

TEST_CASE("trace polynomial table sanity") {
  for (long m = 2; m <= 30; ++m) {
    if (m == 29) continue;  // degree 14, beyond any field handled here
    const ZPoly* psi = trace_polynomial(m);
    REQUIRE(psi != nullptr);
    long deg = euler_phi(2 * m) / 2;
    INFO("m=" << m);
    CHECK(static_cast<long>(psi->size()) - 1 == deg);
    CHECK(psi->back() == 1);
    QPoly pq = q_poly(*psi);
    CHECK(count_real_roots(pq) == deg);
    // All roots live strictly inside (-2, 2).
    auto seq = sturm_sequence(pq);
    CHECK(count_roots(seq, mpq_class(-2), mpq_class(2)) == deg);
  }
  // The quartic entries coincide with known field discriminants.
  CHECK(z_discriminant(*trace_polynomial(10)) == 2000);
  CHECK(z_discriminant(*trace_polynomial(12)) == 2304);
  CHECK(z_discriminant(*trace_polynomial(15)) == 1125);
}
