#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "quadlat/enumerate.hpp"

namespace quadlat {

nlohmann::json genus_to_json(const GenusClasses& g);
GenusClasses genus_from_json(const nlohmann::json& j);

/// Genus class sets on disk under <dir>/<rank>/<disc>/<hash>.json, keyed by
/// the genus symbol. Files are written to a temporary name and renamed.
class GenusCache {
 public:
  explicit GenusCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(const GramLattice& l) const;
  /// Cached class set of gen(l), computing and storing it on a miss.
  GenusClasses get(const GramLattice& l);
  GenusSource source() {
    return [this](const GramLattice& l) { return get(l); };
  }
  int hits() const { return hits_; }
  int misses() const { return misses_; }

 private:
  std::filesystem::path dir_;
  int hits_ = 0, misses_ = 0;
};

/// FNV-1a, hex.
std::string stable_hash(const std::string& s);

}  // namespace quadlat
