#include "quadlat/catalogue.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace quadlat {

namespace {

using nlohmann::json;

Mat gram_from_json(const json& g) {
  if (!g.is_array() || g.empty()) throw std::runtime_error("gram must be a non-empty array");
  if (g.front().is_array()) {
    std::vector<std::vector<i64>> rows;
    for (const auto& r : g) rows.push_back(r.get<std::vector<i64>>());
    return Mat::from_rows(rows);
  }
  auto flat = g.get<std::vector<i64>>();
  int n = 0;
  while (n * n < static_cast<int>(flat.size())) ++n;
  if (n * n != static_cast<int>(flat.size())) throw std::runtime_error("flattened gram is not square");
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = flat[i * n + j];
  return m;
}

}  // namespace

std::vector<OneClassGenusEntry> parse_catalogue(const std::string& text, size_t expected) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("catalogue: ") + e.what());
  }
  if (!doc.is_array()) throw std::runtime_error("catalogue: top level must be an array");
  std::vector<OneClassGenusEntry> out;
  for (size_t row = 0; row < doc.size(); ++row) {
    const json& r = doc[row];
    try {
      OneClassGenusEntry e;
      e.gram = GramLattice(gram_from_json(r.at("gram")));
      e.disc = r.at("disc").get<i64>();
      if (e.disc != narrow(det(e.gram.gram()))) throw std::runtime_error("disc does not match the Gram determinant");
      for (i64 p : bad_primes(e.gram)) e.profiles[p] = p_profile(e.gram, p);
      out.push_back(std::move(e));
    } catch (const std::exception& ex) {
      throw std::runtime_error("catalogue row " + std::to_string(row) + ": " + ex.what());
    }
  }
  if (expected && out.size() != expected)
    throw std::runtime_error("catalogue: expected " + std::to_string(expected) + " entries, found " +
                             std::to_string(out.size()));
  return out;
}

std::vector<OneClassGenusEntry> load_catalogue(const std::string& path, size_t expected) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("catalogue: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_catalogue(ss.str(), expected);
}

std::string default_catalogue_path() { return std::string(QUADLAT_DATA_DIR) + "/one_class_genera.json"; }

std::string convert_export(const std::string& export_json) {
  json doc = json::parse(export_json);
  if (doc.is_object() && doc.contains("data")) doc = doc["data"];
  json out = json::array();
  for (const auto& r : doc) {
    Mat g = gram_from_json(r.at("gram"));
    i64 d = narrow(det(g));
    if (r.contains("det") && r["det"].get<i64>() != d) throw std::runtime_error("export: det mismatch");
    out.push_back({{"disc", d}, {"gram", g.to_rows()}});
  }
  return out.dump(1);
}

std::vector<const OneClassGenusEntry*> profile_matches(const std::vector<OneClassGenusEntry>& cat, i64 p,
                                                       const std::vector<int>& exps, const EntryFilter& filter) {
  std::vector<const OneClassGenusEntry*> out;
  for (const auto& e : cat) {
    auto it = e.profiles.find(p);
    std::vector<int> have = it != e.profiles.end() ? it->second.exps : std::vector<int>(e.gram.rank(), 0);
    if (have == exps && (!filter || filter(e))) out.push_back(&e);
  }
  return out;
}

bool profile_exists(const std::vector<OneClassGenusEntry>& cat, i64 p, const std::vector<int>& exps,
                    const EntryFilter& filter) {
  return !profile_matches(cat, p, exps, filter).empty();
}

std::set<std::vector<int>> profiles_at(const std::vector<OneClassGenusEntry>& cat, i64 p) {
  std::set<std::vector<int>> out;
  for (const auto& e : cat)
    if (e.disc % p == 0) out.insert(e.profiles.at(p).exps);
  return out;
}

std::set<i64> catalogue_primes(const std::vector<OneClassGenusEntry>& cat) {
  std::set<i64> out;
  for (const auto& e : cat)
    for (i64 p : prime_divisors(e.disc)) out.insert(p);
  return out;
}

}  // namespace quadlat
