#include <algorithm>
#include <set>

#include "doctest.h"
#include "quadlat/fixtures.hpp"
#include "quadlat/isometry.hpp"
#include "test_support.hpp"

using namespace quadlat;

namespace {

// Naive box search, independent of the reduction-based enumeration.
std::vector<std::vector<i64>> box_search(const Mat& g, i64 bound, int r) {
  int n = g.rows();
  std::vector<std::vector<i64>> out;
  std::vector<i64> x(n, -r);
  while (true) {
    i64 q = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q += x[i] * g(i, j) * x[j];
    bool zero = std::all_of(x.begin(), x.end(), [](i64 v) { return v == 0; });
    if (!zero && q <= bound) out.push_back(x);
    int k = 0;
    while (k < n && x[k] == r) x[k++] = -r;
    if (k == n) break;
    ++x[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Signed permutation count by brute force over images of the standard basis.
i64 count_orthonormal_images(int n) {
  std::vector<std::vector<i64>> units;
  for (int i = 0; i < n; ++i)
    for (int s : {1, -1}) {
      std::vector<i64> v(n, 0);
      v[i] = s;
      units.push_back(v);
    }
  i64 count = 0;
  std::vector<int> pick;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(pick.size()) == n) {
      ++count;
      return;
    }
    for (int u = 0; u < static_cast<int>(units.size()); ++u) {
      bool ok = true;
      for (int p : pick) {
        i64 dot = 0;
        for (int t = 0; t < n; ++t) dot += units[u][t] * units[p][t];
        if (dot != 0) ok = false;
      }
      if (!ok) continue;
      pick.push_back(u);
      rec();
      pick.pop_back();
    }
  };
  rec();
  return count;
}

}  // namespace

TEST_CASE("LLL transform is unimodular and congruent") {
  std::mt19937_64 rng(11);
  for (const auto& [name, l] : quaternary_fixtures()) {
    Mat u = testing::random_unimodular(rng, 4, 30);
    Mat g = congruent(u, l.gram());
    Mat t = lll_transform(g);
    CHECK(std::abs(static_cast<long long>(det(t))) == 1);
    Mat r = congruent(t, g);
    i64 maxdiag = 0;
    for (int i = 0; i < 4; ++i) maxdiag = std::max(maxdiag, r(i, i));
    CHECK(maxdiag <= 64);
  }
}

TEST_CASE("short vectors agree with box search") {
  for (const char* name : {"L1", "L2", "M3", "K1", "I4"}) {
    Mat g = fixture(name)->gram();
    for (i64 b : {1, 2, 6, 8}) {
      auto fp = short_vectors_all(g, b);
      std::sort(fp.begin(), fp.end());
      CHECK(fp == box_search(g, b, 6));
    }
  }
  CHECK(short_vectors(*fixture("I4"), 1).size() == 4);
  CHECK(short_vectors(*fixture("L1"), 1).empty());
  for (const auto& sv : short_vectors(*fixture("L1"), 2)) CHECK(sv.norm == 2);
  CHECK(lattice_minimum(*fixture("M1")) == 4);
}

TEST_CASE("automorphism orders") {
  CHECK(aut_order(*fixture("I4")) == count_orthonormal_images(4));
  CHECK(aut_order(*fixture("I4")) == 384);
  CHECK(aut_proper_order(*fixture("I4")) == 192);
  CHECK(has_improper_aut(*fixture("I4")));
  GramLattice d4{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
  CHECK(aut_order(d4) == 1152);
  GramLattice a2{{2, 1}, {1, 2}};
  CHECK(aut_order(a2) == 12);
  GramLattice i3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(aut_order(i3) == 48);
  for (const auto& [name, l] : quaternary_fixtures()) CHECK(aut_order(l) % 2 == 0);
}

TEST_CASE("canonical form is a class invariant") {
  std::mt19937_64 rng(5);
  for (const auto& [name, l] : quaternary_fixtures()) {
    CanonicalData c = canonical(l);
    CHECK(congruent(c.basis, l.gram()) == c.canon);
    CHECK(canonical(GramLattice(c.canon)).canon == c.canon);
    for (int rep = 0; rep < 5; ++rep) {
      Mat u = testing::random_unimodular(rng, 4, 25);
      GramLattice m(congruent(u, l.gram()));
      CanonicalData cm = canonical(m);
      CHECK(cm.canon == c.canon);
      CHECK(cm.aut == c.aut);
      CHECK(cm.aut_plus == c.aut_plus);
      auto w = isometry_witness(l, m);
      REQUIRE(w.has_value());
      CHECK(w->transpose() * l.gram() * (*w) == m.gram());
    }
  }
}

TEST_CASE("isometry on the discriminant 729 fixtures") {
  CHECK(isometric(*fixture("L1"), *fixture("F729")));
  CHECK_FALSE(isometric(*fixture("L1"), *fixture("L2")));
  CHECK_FALSE(isometric(*fixture("L2"), *fixture("L3")));
  CHECK(isometric(*fixture("M1"), *fixture("M1")));
  std::set<Mat> canons;
  for (const char* n : {"L1", "L2", "L3", "M1", "M2", "M3"}) canons.insert(canonical(*fixture(n)).canon);
  CHECK(canons.size() == 6);
}
