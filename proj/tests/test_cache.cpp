#include <unistd.h>

#include <filesystem>

#include "doctest.h"
#include "quadlat/cache.hpp"
#include "quadlat/fixtures.hpp"

using namespace quadlat;
namespace fs = std::filesystem;

TEST_CASE("genus cache round trip") {
  fs::path dir = fs::temp_directory_path() / ("quadlat_cache_test_" + stable_hash(std::to_string(::getpid())));
  fs::remove_all(dir);
  GenusCache cache(dir);
  GramLattice l1 = *fixture("L1");
  GenusClasses a = cache.get(l1);
  CHECK(cache.misses() == 1);
  fs::path p = cache.path_for(l1);
  CHECK(fs::exists(p));
  CHECK(p.parent_path().filename() == "729");
  CHECK(p.parent_path().parent_path().filename() == "4");

  GenusCache again(dir);
  GenusClasses b = again.get(*fixture("L2"));  // same genus
  CHECK(again.hits() == 1);
  CHECK(b.classes == a.classes);
  CHECK(b.part == a.part);
  CHECK(b.aut == a.aut);
  CHECK(b.mass == a.mass);
  CHECK(b.g_plus == a.g_plus);

  // classification through the cache matches the direct one
  ClassSet cs = classes_by_form_disc(4, 81);
  auto direct = classify(cs);
  auto cached = classify(cs, true, again.source());
  REQUIRE(direct.genera.size() == cached.genera.size());
  for (size_t i = 0; i < direct.genera.size(); ++i) {
    CHECK(direct.genera[i].genus.classes == cached.genera[i].genus.classes);
    CHECK(direct.genera[i].h_s == cached.genera[i].h_s);
  }
  fs::remove_all(dir);
}

TEST_CASE("stable hash") {
  CHECK(stable_hash("") == "cbf29ce484222325");
  CHECK(stable_hash("a") == "af63dc4c8601ec8c");
}
