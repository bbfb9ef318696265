#include "quadlat/cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace quadlat {

namespace fs = std::filesystem;
using nlohmann::json;

std::string stable_hash(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json genus_to_json(const GenusClasses& g) {
  json j;
  j["classes"] = json::array();
  for (const auto& c : g.classes) j["classes"].push_back(c.gram().to_rows());
  j["aut"] = g.aut;
  j["part"] = g.part;
  j["parts"] = g.parts;
  j["mass"] = {{"coeff", g.mass.coeff().get_str()}, {"radicand", g.mass.radicand()}};
  j["primes"] = g.primes;
  j["g"] = g.g;
  j["g_plus"] = g.g_plus;
  return j;
}

GenusClasses genus_from_json(const json& j) {
  GenusClasses g;
  for (const auto& rows : j.at("classes")) g.classes.emplace_back(Mat::from_rows(rows.get<std::vector<std::vector<i64>>>()));
  g.aut = j.at("aut").get<std::vector<i64>>();
  g.part = j.at("part").get<std::vector<int>>();
  g.parts = j.at("parts").get<int>();
  g.mass = MassValue(mpq_class(j.at("mass").at("coeff").get<std::string>()), j.at("mass").at("radicand").get<i64>());
  g.primes = j.at("primes").get<std::vector<i64>>();
  g.g = j.at("g").get<int>();
  g.g_plus = j.at("g_plus").get<int>();
  if (g.aut.size() != g.classes.size() || g.part.size() != g.classes.size())
    throw std::runtime_error("genus cache: inconsistent entry");
  return g;
}

fs::path GenusCache::path_for(const GramLattice& l) const {
  GenusSymbol s = genus_symbol(l);
  return dir_ / std::to_string(s.rank) / std::to_string(s.disc) / (stable_hash(s.str()) + ".json");
}

GenusClasses GenusCache::get(const GramLattice& l) {
  fs::path p = path_for(l);
  std::ifstream in(p);
  if (in) {
    try {
      json j = json::parse(in);
      // a hash collision shows up as a different symbol
      if (j.value("symbol", std::string()) == genus_symbol(l).str()) {
        ++hits_;
        return genus_from_json(j.at("genus"));
      }
    } catch (const std::exception&) {
      // unreadable entry: recompute and overwrite
    }
  }
  ++misses_;
  GenusClasses g = genus_classes(l);
  fs::create_directories(p.parent_path());
  std::ostringstream tag;
  tag << std::this_thread::get_id();
  fs::path tmp = p;
  tmp += ".tmp" + tag.str();
  {
    std::ofstream out(tmp);
    out << json{{"symbol", genus_symbol(l).str()}, {"genus", genus_to_json(g)}}.dump();
  }
  fs::rename(tmp, p);
  return g;
}

}  // namespace quadlat
