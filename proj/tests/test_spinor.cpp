#include <algorithm>
#include <random>

#include "doctest.h"
#include "quadlat/fixtures.hpp"
#include "quadlat/spinor.hpp"
#include "test_support.hpp"

using namespace quadlat;

namespace {

GramLattice diag(std::vector<i64> d) {
  Mat g(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) g(i, i) = d[i];
  return GramLattice(g);
}

// Norms of vectors in a small box whose symmetries are integral at p.
std::vector<SquareClass> symmetry_norms(const GramLattice& l, i64 p, int box) {
  const int n = l.rank();
  std::vector<SquareClass> out;
  std::vector<i64> v(n, -box);
  while (true) {
    bool zero = std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
    if (!zero) {
      i64 q = 0, g = 0;
      for (int i = 0; i < n; ++i) {
        i64 row = 0;
        for (int j = 0; j < n; ++j) row += l(i, j) * v[j];
        q += v[i] * row;
        g = gcd(g, row);
      }
      if (valuation(q, p) <= valuation(2 * g, p)) {
        SquareClass c = SquareClass::of(q, p);
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
      }
    }
    int k = 0;
    while (k < n && v[k] == box) v[k++] = -box;
    if (k == n) break;
    ++v[k];
  }
  return out;
}

}  // namespace

TEST_CASE("square classes") {
  CHECK(SquareClass::of(6, 2).representative() == 6);
  CHECK(SquareClass::of(14, 2).representative() == 14);
  CHECK(SquareClass::of(9 * 5, 2).representative() == 5);
  CHECK(SquareClass::of(-1, 2).representative() == 7);
  CHECK(SquareClass::of(2, 7).representative() == 1);  // 2 is a square mod 7
  CHECK(SquareClass::of(3, 7).representative() == 3);
  CHECK(SquareClass::of(21, 7).representative() == 21);
  CHECK((SquareClass::of(3, 2) * SquareClass::of(5, 2)) == SquareClass::of(15, 2));
}

TEST_CASE("dyadic theta in the Case III configuration") {
  JordanSplitting js = parse_splitting("<3> 2^4<3,7> 2^8<7>", 2);
  SpinorNormGroup t = theta_group(js);
  CHECK(t.str() == "{1,5,6,14}");
  CHECK_FALSE(t.contains_units);
  CHECK_FALSE(is_type_E(js));
  // the same from an actual lattice
  CHECK(theta_group(diag({3, 48, 112, 1792}), 2).str() == "{1,5,6,14}");
}

TEST_CASE("theta contains units in the sufficient cases") {
  // odd p modular component of rank >= 2
  CHECK(theta_group(parse_splitting("<1,1> 3<1> 9<2>", 3)).contains_units);
  CHECK(theta_group(parse_splitting("<1> 3<1,2> 27<1>", 3)).contains_units);
  CHECK_FALSE(theta_group(parse_splitting("<1> 3<1> 9<1> 27<1>", 3)).contains_units);
  // p not dividing 2d: exactly the units
  SpinorNormGroup t = theta_group(*fixture("I4"), 5);
  CHECK(t.str() == "{1,2}");
  // dyadic modular rank >= 3, and A/H components
  CHECK(theta_group(parse_splitting("<1,1,1> 2^5<1>", 2)).contains_units);
  CHECK(theta_group(parse_splitting("A 2^6<1,3>", 2)).contains_units);
  CHECK(theta_group(parse_splitting("<1> 2^3H", 2)).contains_units);
  // type E examples
  for (const char* s : {"<1> 2<1> 4<3> 2^6<7>", "<1> 2<1> 8<3> 2^7<7>"}) {
    JordanSplitting js = parse_splitting(s, 2);
    CHECK(is_type_E(js));
    CHECK(theta_group(js).contains_units);
  }
}

TEST_CASE("symmetry norms lie in theta") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> e(0, 4), u(0, 3);
  const i64 units2[] = {1, 3, 5, 7};
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<i64> d(4);
    for (auto& x : d) x = ipow(2, e(rng)) * units2[u(rng)] * (trial % 2 ? 1 : ipow(3, e(rng) % 3));
    d[0] = units2[u(rng)];
    GramLattice l0 = diag(d);
    GramLattice l(congruent(testing::random_unimodular(rng, 4, 8), l0.gram()));
    for (i64 p : bad_primes(l)) {
      SpinorNormGroup t = theta_group(l, p);
      CHECK(t.contains(SquareClass{p, 0}));
      auto norms = symmetry_norms(l0, p, 2);
      for (size_t i = 0; i < norms.size(); ++i)
        for (size_t j = i; j < norms.size(); ++j) CHECK(t.contains(norms[i] * norms[j]));
      // invariant under change of basis
      CHECK(t.basis == theta_group(l0, p).basis);
    }
  }
}

TEST_CASE("proper spinor genera") {
  CHECK(g_plus(*fixture("I4")) == 1);
  IdeleClassQuotient q = idele_quotient(*fixture("I4"));
  for (i64 r : {3, 5, 7, 11}) CHECK(prime_idele_image(r, q) == 0);
  CHECK_THROWS(prime_idele_image(2, q));

  GramLattice l1 = *fixture("L1");
  CHECK(g_plus(l1) == 2);
  CHECK(g_count(l1) == 2);
  IdeleClassQuotient q1 = idele_quotient(l1);
  CHECK(q1.dim == 1);

  // Case III style lattice: only one proper spinor genus
  GramLattice c3 = diag({3, 48, 112, 1792});
  CHECK(g_plus(c3) == 1);
  CHECK(g_count(c3) == 1);

  // g+ is a power of two and g is g+ or g+/2
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> e(0, 3), pk(0, 3);
  const i64 primes[] = {3, 5, 7, 11};
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<i64> d{1, ipow(primes[pk(rng)], e(rng)), ipow(primes[pk(rng)], e(rng)), ipow(primes[pk(rng)], e(rng))};
    GramLattice l = diag(d);
    int gp = g_plus(l), g = g_count(l);
    CHECK((gp & (gp - 1)) == 0);
    CHECK((g == gp || 2 * g == gp));
  }
}
