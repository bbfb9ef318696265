#include <cmath>

#include "doctest.h"
#include "quadlat/fixtures.hpp"
#include "quadlat/isometry.hpp"
#include "quadlat/mass.hpp"

using namespace quadlat;

namespace {

mpq_class q(long a, long b = 1) {
  mpq_class r(a, b);
  r.canonicalize();
  return r;
}

MassValue m2(const char* text) { return local_mass(parse_splitting(text, 2)); }

// L(2,chi) by direct summation, for the Bernoulli closed form
double l2_numeric(i64 f) {
  double s = 0;
  for (i64 n = 1; n < 2000000; ++n) s += kronecker(f, n) / (double(n) * n);
  return s;
}

}  // namespace

TEST_CASE("MassValue arithmetic") {
  MassValue a = MassValue::sqrt_of(3) * MassValue::sqrt_of(3);
  CHECK(a == MassValue(q(3)));
  MassValue b = MassValue(q(1, 2), 12);
  CHECK(b.radicand() == 3);
  CHECK(b.coeff() == 1);
  CHECK((b / MassValue::sqrt_of(3)) == MassValue(q(1)));
  CHECK(MassValue(q(3, 2), 2).compare(2) > 0);   // 2.12 > 2
  CHECK(MassValue(q(1, 2), 3).compare(1) < 0);   // 0.87 < 1
  CHECK(MassValue(q(1, 4), 16).compare(1) == 0);
}

TEST_CASE("species factors") {
  CHECK(species_factor(0, 2) == 1);
  CHECK(species_factor(1, 2) == q(1, 2));
  CHECK(species_factor(2, 2) == 1);
  CHECK(species_factor(-2, 2) == q(1, 3));
  CHECK(species_factor(4, 2) == q(8, 9));
  CHECK(species_factor(-4, 2) == q(8, 15));
  CHECK(species_factor(3, 3) == q(9, 16));
}

TEST_CASE("dyadic species cases") {
  // four unimodular rank 4 cases
  CHECK(local_mass(GramLattice{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 3}}, 2) == MassValue(q(1, 4)));
  CHECK(local_mass(*fixture("I4"), 2) == MassValue(q(1, 12)));
  CHECK(m2("A A") == MassValue(q(1, 18)));
  CHECK(m2("A H") == MassValue(q(1, 30)));
  CHECK(m2("<1,1,3,3>") == MassValue(q(1, 4)));
  CHECK(m2("<1,1,1,1>") == MassValue(q(1, 12)));
  // same values from honest Gram matrices
  GramLattice aa{{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, 2}};
  CHECK(local_mass(aa, 2) == MassValue(q(1, 18)));
  GramLattice ah{{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, 4}};
  CHECK(local_mass(ah, 2) == MassValue(q(1, 30)));

  auto sp = species_list(parse_splitting("<1,1,1,1>", 2));
  REQUIRE(sp.size() == 3);
  CHECK(sp[0].species.bound);
  CHECK(sp[0].species.factor == q(1, 2));
  CHECK(sp[1].species.label() == "2-");
  CHECK(species_list(parse_splitting("A A", 2))[0].species.label() == "4+");
  CHECK(species_list(parse_splitting("A H", 2))[0].species.label() == "4-");
}

TEST_CASE("A + 4A at 2") {
  CHECK(m2("A 2^2A") == MassValue(q(1, 9)));
  GramLattice g{{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 8, 4}, {0, 0, 4, 8}};
  CHECK(local_mass(g, 2) == MassValue(q(1, 9)));
}

TEST_CASE("odd p closed form for four rank one components") {
  for (i64 p : {3, 5, 7})
    for (auto [k, l, m] : {std::array<int, 3>{1, 2, 3}, {1, 3, 4}, {2, 3, 5}, {1, 2, 6}}) {
      std::string t = "<1> " + std::to_string(p) + "^" + std::to_string(k) + "<1> " + std::to_string(p) + "^" +
                      std::to_string(l) + "<1> " + std::to_string(p) + "^" + std::to_string(m) + "<1>";
      MassValue got = local_mass(parse_splitting(t, p));
      int e = 3 * m + l - k;
      mpz_class pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), p, e / 2);
      MassValue want = MassValue(mpq_class(pw, 16));
      if (e % 2) want = want * MassValue::sqrt_of(p);
      CHECK(got == want);
    }
  // the irrational one: 3^(13/2)/2^4
  MassValue v = local_mass(parse_splitting("<1> 3<1> 3^2<1> 3^4<1>", 3));
  CHECK(v == MassValue(q(729, 16), 3));
}

TEST_CASE("global mass of small lattices") {
  CHECK(total_mass(GramLattice{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == MassValue(q(1, 48)));
  CHECK(total_mass(*fixture("I4")) == MassValue(q(1, 384)));
  CHECK(total_mass(GramLattice{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}) == MassValue(q(1, 16)));
  // D4, A3, A4: single-class genera, mass = 1/|O|
  GramLattice d4{{2, 0, -1, 0}, {0, 2, -1, 0}, {-1, -1, 2, -1}, {0, 0, -1, 2}};
  CHECK(total_mass(d4) == MassValue(q(1, aut_order(d4))));
  GramLattice a3{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  CHECK(total_mass(a3) == MassValue(q(1, aut_order(a3))));
  GramLattice a4{{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
  auto rep = total_mass_report(a4);
  CHECK(rep.branch == "rank4-character");
  CHECK(rep.mass == MassValue(q(1, aut_order(a4))));
}

TEST_CASE("Bernoulli closed form for L(2,chi)") {
  CHECK(bernoulli2_chi(5) == q(4, 5));
  for (i64 f : {5, 8, 12, 13}) {
    double closed = 9.869604401089358 * bernoulli2_chi(f).get_d() / std::pow(double(f), 1.5);
    CHECK(closed == doctest::Approx(l2_numeric(f)).epsilon(1e-5));
  }
  CHECK(fundamental_discriminant(5) == 5);
  CHECK(fundamental_discriminant(3) == 12);
  CHECK(fundamental_discriminant(2 * 9) == 8);
}

TEST_CASE("configuration with total mass 7") {
  // 2-adic A + 4A, 7-adic <1> 7<1> 7^2<1> 7^3<1>, square discriminant
  MassValue a = m2("A 2^2A"), b = local_mass(parse_splitting("<1> 7<1> 7^2<1> 7^3<1>", 7));
  CHECK(b == MassValue(q(16807, 16)));
  mpq_class t2 = 1 - q(1, 4), t7 = 1 - q(1, 49);
  MassValue m = MassValue(q(1, 36)) * a * b * MassValue(4 * t2 * t2 * t7 * t7);
  CHECK(m == MassValue(q(7)));
}

TEST_CASE("Case I identities") {
  for (int m = 3; m <= 8; ++m) {
    std::string t = "<1,1> 2^" + std::to_string(m) + "<1,1>";
    CHECK(m2(t.c_str()) == MassValue(mpq_class(mpz_class(1) << (2 * m - 6))));
  }
  for (int m : {4, 5, 6})
    for (int k = 1; k <= 4; ++k) {
      auto f = fixture("CaseI_m" + std::to_string(m) + "_L" + std::to_string(k));
      if (!f) continue;
      // the identity is for two binary components of neither odd nor even order
      auto js = jordan_split(*f, 2);
      if (js.components.size() != 2 || js.components[0].rank != 2 ||
          binary_order_class(js.components[0]) != OrderClass::Neither ||
          binary_order_class(js.components[1]) != OrderClass::Neither)
        continue;
      CHECK(local_mass(*f, 2) == MassValue(mpq_class(mpz_class(1) << (2 * m - 6))));
      mpq_class want = 2 * m >= 11 ? mpq_class(mpz_class(1) << (2 * m - 11)) : mpq_class(1, mpz_class(1) << (11 - 2 * m));
      CHECK(total_mass(*f) == MassValue(want));
    }
}

TEST_CASE("lower bound thresholds") {
  CHECK(bound_exponent_threshold(3, true) == 16);
  CHECK(bound_exponent_threshold(3, false) == 17);
  CHECK(bound_exponent_threshold(5, true) == 11);
  CHECK(bound_exponent_threshold(5, false) == 11);
  CHECK(bound_exponent_threshold(7, true) == 9);
  CHECK(bound_exponent_threshold(7, false) == 9);
  // monotone in the exponent and independent of how it splits
  CHECK(mass_lower_bound(3, 1, 2, 5, true) == mass_lower_bound(3, 0, 16, 0, true));
  CHECK(mass_lower_bound(5, 1, 2, 3, false).compare(1) < 0);
  CHECK(mass_lower_bound(5, 1, 2, 4, false).compare(1) > 0);
}
