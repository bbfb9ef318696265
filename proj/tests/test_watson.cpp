#include <random>

#include "doctest.h"
#include "quadlat/fixtures.hpp"
#include "quadlat/isometry.hpp"
#include "quadlat/watson.hpp"
#include "test_support.hpp"

using namespace quadlat;

namespace {

GramLattice diag(std::vector<i64> d) {
  Mat g(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) g(i, i) = d[i];
  return GramLattice(g);
}

std::set<std::vector<int>> S(std::initializer_list<std::vector<int>> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("mu_p on explicit lattices") {
  GramLattice l1 = *fixture("L1");
  GramLattice m = mu_p(l1, 3);
  CHECK(discriminant(m) == 9);
  CHECK(p_profile(m, 3).exps == std::vector<int>{0, 0, 1, 1});

  CHECK(p_profile(mu_p(diag({1, 9, 9, 27}), 3), 3).exps == std::vector<int>{0, 0, 0, 1});
  // fixed point
  GramLattice f = diag({1, 1, 1, 5});
  CHECK(mu_p(f, 5) == f);

  // dyadic: <1> 2^4<3,7> 2^8<7> has 2-profile (0,4,4,8)
  GramLattice c3 = diag({1, 48, 112, 7 * 256});
  CHECK(p_profile(c3, 2).exps == std::vector<int>{0, 4, 4, 8});
  GramLattice c3m = mu_p(c3, 2);
  CHECK(p_profile(c3m, 2).exps == std::vector<int>{0, 2, 2, 6});
  CHECK(local_isometric(c3m, c3, 3));
  CHECK(local_isometric(c3m, c3, 7));
}

TEST_CASE("mu_hat") {
  MuResult r = mu_hat(*fixture("L1"));
  CHECK(discriminant(r.lattice) == 9);
  CHECK(r.iterations.at(3) == 1);
  CHECK(r.fixed);

  GramLattice already = diag({1, 1, 9, 9});
  MuResult r2 = mu_hat(already);
  CHECK(r2.lattice == already);
  CHECK(r2.iterations.at(3) == 0);

  MuResult r3 = mu_hat(diag({1, 1, 1, 81}));
  CHECK(p_profile(r3.lattice, 3).exps == std::vector<int>{0, 0, 0, 2});
  CHECK(r3.iterations.at(3) == 1);
}

TEST_CASE("mu_hat keeps prime support and lands in the admissible list") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 3), e(0, 5);
  const i64 primes[] = {2, 3, 5, 7};
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<i64> d(4, 1);
    i64 p = primes[pick(rng)];
    for (int i = 1; i < 4; ++i) d[i] = ipow(p, e(rng));
    if (d[1] * d[2] * d[3] == 1) d[3] = p;
    i64 q = primes[pick(rng)];
    if (q != p) d[0] = q;
    GramLattice l = diag(d);
    Mat u = testing::random_unimodular(rng, 4, 12);
    GramLattice lu(congruent(u, l.gram()));
    MuResult r = mu_hat(lu);
    CHECK(prime_divisors(discriminant(r.lattice)) == prime_divisors(discriminant(l)));
    for (i64 pp : prime_divisors(discriminant(l))) {
      PProfile pr = p_profile(r.lattice, pp);
      CAPTURE(pr.str());
      CHECK(admissible(pr));
    }
    CHECK(r.fixed);
    // isometric inputs give isometric outputs
    CHECK(isometric(mu_hat(l).lattice, r.lattice));
    // untouched primes keep their local structure
    for (i64 qq : bad_primes(l))
      if (qq != p) CHECK(local_isometric(mu_p(lu, p), lu, qq));
  }
}

TEST_CASE("mu respects isometry on the 729 fixtures") {
  std::mt19937_64 rng(5);
  for (const char* n : {"L1", "L2", "L3", "M1", "M2", "M3", "F729"}) {
    GramLattice l = *fixture(n);
    GramLattice lu(congruent(testing::random_unimodular(rng, 4, 15), l.gram()));
    CHECK(isometric(mu_p(l, 3), mu_p(lu, 3)));
  }
}

TEST_CASE("profile preimages") {
  CHECK(mu_preimage_profiles({3, {0, 0, 0, 1}}) ==
        S({{0, 0, 1, 2}, {0, 0, 0, 3}, {0, 1, 2, 2}, {0, 0, 2, 3}, {0, 2, 2, 3}}));
  CHECK(mu_preimage_profiles({3, {0, 1, 1, 1}}) == S({{0, 1, 1, 3}, {0, 1, 3, 3}, {0, 3, 3, 3}}));
  CHECK(mu_preimage_profiles({3, {0, 0, 1, 1}}) ==
        S({{0, 0, 3, 3}, {0, 0, 1, 3}, {0, 1, 2, 3}, {0, 1, 1, 2}, {0, 2, 3, 3}}));
  // every preimage maps back
  for (const auto& a : admissible_profiles())
    for (const auto& pre : mu_preimage_profiles({5, a})) CHECK(mu_profile({5, pre}).exps == a);
}
