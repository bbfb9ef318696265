#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "quadlat/padic.hpp"

namespace quadlat {

/// One lattice of the external list of one-class genera.
struct OneClassGenusEntry {
  GramLattice gram;
  i64 disc = 0;
  std::map<i64, PProfile> profiles;  // every p | 2d
};

constexpr size_t kCatalogueSize = 481;

/// Reads a JSON array of {"disc": int, "gram": [[...]...]} objects. Throws
/// std::runtime_error on malformed rows, a disc that disagrees with the Gram,
/// or a count different from `expected` (0 disables the count check).
std::vector<OneClassGenusEntry> load_catalogue(const std::string& path, size_t expected = kCatalogueSize);
std::vector<OneClassGenusEntry> parse_catalogue(const std::string& json_text, size_t expected = kCatalogueSize);

/// Bundled location under the data directory.
std::string default_catalogue_path();

/// Converts a database export (records carrying a Gram matrix under "gram",
/// either nested or flattened row-major, and optionally "det") into the
/// catalogue schema.
std::string convert_export(const std::string& export_json);

using EntryFilter = std::function<bool(const OneClassGenusEntry&)>;

std::vector<const OneClassGenusEntry*> profile_matches(const std::vector<OneClassGenusEntry>& cat, i64 p,
                                                       const std::vector<int>& exps, const EntryFilter& filter = {});
bool profile_exists(const std::vector<OneClassGenusEntry>& cat, i64 p, const std::vector<int>& exps,
                    const EntryFilter& filter = {});

/// Distinct p-profiles occurring in the catalogue at p (entries with p | d only).
std::set<std::vector<int>> profiles_at(const std::vector<OneClassGenusEntry>& cat, i64 p);

/// Primes dividing some catalogue discriminant.
std::set<i64> catalogue_primes(const std::vector<OneClassGenusEntry>& cat);

}  // namespace quadlat
