#include <random>

#include "doctest.h"
#include "quadlat/fixtures.hpp"
#include "quadlat/lattice.hpp"

using namespace quadlat;

TEST_CASE("integer helpers") {
  CHECK(gcd(-12, 18) == 6);
  i64 x, y;
  CHECK(xgcd(240, 46, x, y) == 2);
  CHECK(240 * x + 46 * y == 2);
  CHECK(inv_mod(3, 8) == 3);
  CHECK(valuation(729, 3) == 6);
  CHECK(legendre(2, 7) == 1);
  CHECK(legendre(3, 7) == -1);
  CHECK(prime_divisors(2 * 2 * 3 * 3 * 3 * 7) == std::vector<i64>{2, 3, 7});
  CHECK(isqrt(729) == 27);
  CHECK(squarefree_part(54) == 6);
  CHECK_THROWS_AS(checked_mul(INT64_MAX, 2), OverflowError);
}

TEST_CASE("matrix basics") {
  Mat a{{2, 1, 0, 0}, {1, 14, 0, 0}, {0, 0, 6, 3}, {0, 0, 3, 6}};
  CHECK(det(a) == 729);
  Mat adj = adjugate(a);
  Mat prod = adj * a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(prod(i, j) == (i == j ? 729 : 0));

  Mat gens{{2, 4}, {4, 2}, {6, 6}};
  Mat h = hnf_rows(gens);
  CHECK(h.rows() == 2);
  CHECK(det(h) == 12);

  Smith s = smith(a);
  Mat check = s.U * a * s.V;
  CHECK(check == s.D);
  CHECK(s.V * s.Vinv == Mat::identity(4));
  for (int i = 0; i + 1 < 4; ++i) CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
}

TEST_CASE("discriminants of fixtures") {
  CHECK(discriminant(*fixture("F729")) == 729);
  CHECK(discriminant(*fixture("I4")) == 1);
  CHECK(discriminant(*fixture("L2")) == 729);
  for (const char* n : {"L1", "L3", "M1", "M2", "M3"}) CHECK(discriminant(*fixture(n)) == 729);
  CHECK(discriminant(*fixture("K1")) == 4 * 729);
  for (int m : {4, 5, 6})
    for (int k = 1; k <= 4; ++k) {
      auto f = fixture("CaseI_m" + std::to_string(m) + "_L" + std::to_string(k));
      if (!f) continue;
      CHECK(discriminant(*f) == (i64(1) << (2 * m)));
    }
}

TEST_CASE("non positive definite Gram rejected") {
  CHECK_THROWS_AS(GramLattice({{1, 2}, {2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(GramLattice({{1, 0}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("form to lattice conventions") {
  auto f = ClassicalForm::from_ternary_sextuple({1, 1, 9, 0, 0, 1});
  CHECK(form_discriminant(f) == 54);
  CHECK(form_to_lattice(f).gram() == Mat{{2, 1, 0}, {1, 2, 0}, {0, 0, 18}});

  auto g = ClassicalForm::from_ternary_sextuple({2, 2, 5, 2, 2, 0});
  GramLattice lg = form_to_lattice(g);
  CHECK(lg.gram() == Mat{{2, 0, 1}, {0, 2, 1}, {1, 1, 5}});
  CHECK(discriminant(lg) == 16);
  CHECK(form_discriminant(g) == 128);

  CHECK(form_to_lattice(form_729()).gram() == fixture("F729")->gram());
  CHECK(lattice_to_form(GramLattice{{2, 1, 0}, {1, 2, 0}, {0, 0, 18}}).coeffs() ==
        std::vector<i64>{1, 1, 9, 0, 0, 1});
  CHECK(lattice_to_form(*fixture("I4")).coeffs() == std::vector<i64>{1, 1, 1, 1, 0, 0, 0, 0, 0, 0});
  CHECK_THROWS(form_to_lattice(ClassicalForm::from_coeffs(4, {2, 2, 2, 2, 0, 0, 0, 0, 0, 0})));
}

TEST_CASE("ternary table discriminants") {
  const auto& t = ternary_table();
  CHECK(t.size() == 45);
  int regular = 0;
  for (const auto& e : t) {
    auto f = ClassicalForm::from_ternary_sextuple(e.sextuple);
    CHECK(form_discriminant(f) == e.discriminant);
    if (e.regular) ++regular;
  }
  CHECK(regular == 18);
}

TEST_CASE("scale and norm") {
  auto sn = scale_norm(*fixture("I4"), 2);
  CHECK(sn.scale_exp == 0);
  CHECK(sn.norm_exp == 0);
  auto two = rescale(*fixture("I4"), 2, 1);
  CHECK(discriminant(two) == 16 * 16);
  // rescale by a multiplies the Gram by a^2
  CHECK(two(0, 0) == 4);
  GramLattice a2{{2, 1}, {1, 2}};
  auto s = scale_norm(a2, 2);
  CHECK(s.scale_exp == 0);
  CHECK(s.norm_exp == 1);
  GramLattice nine{{9, 0, 0, 0}, {0, 9, 0, 0}, {0, 0, 9, 0}, {0, 0, 0, 9}};
  CHECK(rescale(nine, 1, 3) == *fixture("I4"));
  CHECK_THROWS(rescale(a2, 1, 2));
}


TEST_CASE("form lattice round trip on random quaternary Grams") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(1, 6), o(-3, 3);
  int done = 0;
  while (done < 1000) {
    Mat g(4, 4);
    for (int i = 0; i < 4; ++i) {
      g(i, i) = d(rng) + 6;
      for (int j = i + 1; j < 4; ++j) g(i, j) = g(j, i) = o(rng);
    }
    if (!is_positive_definite(g)) continue;
    GramLattice l(g);
    ClassicalForm f = lattice_to_form(l);
    if (!f.primitive()) continue;
    CHECK(form_to_lattice(f) == l);
    ++done;
  }
  // discriminant scales by a^(2n)
  GramLattice l = *fixture("L1");
  CHECK(discriminant(rescale(l, 3, 1)) == discriminant(l) * ipow(3, 8));
}
