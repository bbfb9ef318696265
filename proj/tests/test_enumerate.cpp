#include <algorithm>
#include <random>

#include "doctest.h"
#include "quadlat/enumerate.hpp"
#include "quadlat/fixtures.hpp"
#include "quadlat/isometry.hpp"

using namespace quadlat;

namespace {

std::vector<int> profile3(const GramLattice& l) { return p_profile(l, 3).exps; }

const ClassSet& classes_729() {
  static const ClassSet cs = classes_by_form_disc(4, 729);
  return cs;
}

const ClassificationReport& report_729() {
  static const ClassificationReport rep = classify(classes_729());
  return rep;
}

bool contains_class(const std::vector<GramLattice>& ls, const GramLattice& l) {
  Mat c = canonical(l).canon;
  return std::any_of(ls.begin(), ls.end(), [&](const GramLattice& m) { return m.gram() == c; });
}

}  // namespace

TEST_CASE("form matrix conventions") {
  GramLattice even{{2, 1, 0}, {1, 2, 0}, {0, 0, 18}};
  CHECK(form_disc(even) == 54);
  CHECK(form_matrix(even) == even.gram());
  GramLattice odd{{2, 0, 1}, {0, 2, 1}, {1, 1, 5}};
  CHECK(form_disc(odd) == 128);
  CHECK(*lattice_of_form_matrix(form_matrix(odd)) == odd);
  CHECK_FALSE(lattice_of_form_matrix(Mat{{6, 3, 0}, {3, 6, 0}, {0, 0, 6}}).has_value());
}

TEST_CASE("reduced enumeration") {
  // ternary disc 8: Z^3 only
  ClassSet c8 = classes_by_form_disc(3, 8);
  REQUIRE(c8.classes.size() == 1);
  CHECK(isometric(c8.classes[0], GramLattice(Mat::identity(3))));
  // two classes of discriminant 16: Z^4 and A3 + <4>
  ClassSet c16 = classes_by_form_disc(4, 16);
  REQUIRE(c16.classes.size() == 2);
  CHECK(contains_class(c16.classes, GramLattice(Mat::identity(4))));
  ClassSet c4 = classes_by_form_disc(4, 4);
  REQUIRE(c4.classes.size() == 1);
  CHECK(isometric(c4.classes[0], GramLattice{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}));  // D4
  for (const auto& l : classes_729().classes) CHECK(form_disc(l) == 729);
}

TEST_CASE("neighbors keep the genus") {
  for (const char* name : {"L1", "L2", "M1", "K1"}) {
    GramLattice l = *fixture(name);
    GenusSymbol s = genus_symbol(l);
    for (i64 p : {5, 7})
      for (const auto& n : p_neighbors(l, p)) {
        CHECK(det(n.gram()) == det(l.gram()));
        CHECK(genus_symbol(n) == s);
      }
  }
  CHECK_THROWS(p_neighbors(*fixture("L1"), 3));
  CHECK_THROWS(p_neighbors(*fixture("L1"), 2));
}

TEST_CASE("neighbor closure inside spinor genera") {
  GenusClasses g1 = genus_classes(*fixture("L1"));
  const i64 q0 = g1.primes.front();
  // L1 alone, L2 and L3 together
  for (const auto& n : p_neighbors(*fixture("L1"), q0)) CHECK(isometric(n, *fixture("L1")));
  for (const auto& n : p_neighbors(*fixture("L2"), q0))
    CHECK((isometric(n, *fixture("L2")) || isometric(n, *fixture("L3"))));
}

TEST_CASE("genus class sets") {
  GenusClasses g1 = genus_classes(*fixture("L1"));
  CHECK(g1.classes.size() == 3);
  CHECK(g1.parts == 2);
  CHECK(g1.g_plus == 2);
  for (const char* n : {"L1", "L2", "L3"}) CHECK(contains_class(g1.classes, *fixture(n)));
  MassValue sum;
  for (i64 a : g1.aut) sum = sum + MassValue(mpq_class(1, a));
  CHECK(sum == g1.mass);
  CHECK(spinor_class_number(*fixture("L1")) == 1);
  CHECK(spinor_class_number(*fixture("L2")) == 2);
  CHECK(spinor_class_number(*fixture("L3")) == 2);

  CHECK(genus_classes(*fixture("M1")).classes.size() == 1);
  GenusClasses gi = genus_classes(*fixture("I4"));
  CHECK(gi.classes.size() == 1);
  CHECK(gi.mass == MassValue(mpq_class(1, 384)));
}

TEST_CASE("classification of discriminant 729") {
  const ClassSet& cs = classes_729();
  CHECK(cs.classes.size() == 33);
  std::vector<GramLattice> slice;
  for (const auto& l : cs.classes)
    if (profile3(l) == std::vector<int>{0, 1, 2, 3}) slice.push_back(l);
  CHECK(slice.size() == 6);
  for (const char* n : {"L1", "L2", "L3", "M1", "M2", "M3"}) CHECK(contains_class(slice, *fixture(n)));

  const ClassificationReport& rep = report_729();
  CHECK(rep.total_classes() == 33);
  for (const auto& g : rep.genera) {
    CHECK(g.equal_spinor_masses);
    CHECK(g.genus.parts == g_count(g.genus.classes.front()));
    CHECK(g.seen.size() == g.genus.classes.size());
  }
  auto ocs = find_one_class_spinor({rep});
  REQUIRE(ocs.size() == 1);
  CHECK(isometric(ocs[0].lattice, form_to_lattice(form_729())));
  CHECK(ocs[0].h == 3);
  CHECK(ocs[0].g == 2);
}

TEST_CASE("ternary one-class spinor genera at 54") {
  auto ocs = find_one_class_spinor({classify(54, 3)});
  REQUIRE(ocs.size() == 2);
  std::vector<GramLattice> want{form_to_lattice(ClassicalForm::from_ternary_sextuple({1, 1, 9, 0, 0, 1})),
                                form_to_lattice(ClassicalForm::from_ternary_sextuple({1, 3, 3, 3, 0, 0}))};
  for (const auto& w : want)
    CHECK(std::any_of(ocs.begin(), ocs.end(), [&](const OneClassSpinor& o) { return isometric(o.lattice, w); }));
}

TEST_CASE("ascension from the disc 16 seed") {
  ClassSet seed = classes_by_form_disc(4, 16);
  ClassSet up = pall_ascend(seed, 2);
  CHECK(up.disc == 64);
  CHECK_FALSE(up.classes.empty());
  for (const auto& l : up.classes) CHECK(form_disc(l) == 64);
  // every result is in the reduced enumeration of disc 64
  ClassSet all = classes_by_form_disc(4, 64);
  for (const auto& l : up.classes) CHECK(contains_class(all.classes, l));
}

TEST_CASE("ascension at 3") {
  ClassSet seed = classes_by_form_disc(4, 81);
  ClassSet up = pall_ascend(seed, 3);
  CHECK(up.disc == 729);
  for (const auto& l : up.classes) CHECK(contains_class(classes_729().classes, l));
  // parallel and serial runs agree
  ClassSet par = pall_ascend(seed, 3, 3);
  REQUIRE(par.classes.size() == up.classes.size());
  for (size_t i = 0; i < up.classes.size(); ++i) CHECK(par.classes[i] == up.classes[i]);
}

TEST_CASE("mass certificate over random diagonal genera") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> e(0, 2);
  const i64 primes[] = {3, 5, 7};
  for (int trial = 0; trial < 6; ++trial) {
    Mat g(4, 4);
    g(0, 0) = 1;
    for (int i = 1; i < 4; ++i) g(i, i) = ipow(primes[(trial + i) % 3], e(rng));
    GramLattice l(g);
    GenusClasses gc = genus_classes(l);
    MassValue sum;
    for (i64 a : gc.aut) sum = sum + MassValue(mpq_class(1, a));
    CHECK(sum == gc.mass);
    CHECK(gc.parts == g_count(l));
    for (const auto& c : gc.classes) CHECK(genus_symbol(c) == genus_symbol(l));
  }
}

TEST_CASE("proper spinor genus sizes") {
  auto sizes = [](const char* n) {
    std::vector<int> s = proper_spinor_sizes(genus_classes(*fixture(n)));
    std::sort(s.begin(), s.end());
    return s;
  };
  CHECK(sizes("CaseI_m4_L1") == std::vector<int>{2, 3});
  CHECK(sizes("CaseI_m4_L4") == std::vector<int>{1, 1});
  CHECK(sizes("CaseI_m5_L3") == std::vector<int>{3, 3});
  CHECK(sizes("L1") == std::vector<int>{1, 2});
}
