#pragma once

#include <map>
#include <set>
#include <vector>

#include "quadlat/padic.hpp"

namespace quadlat {

/// L + p^-1 {x in L : B(x, L) in p^2 Z}, returned LLL-reduced.
GramLattice mu_p(const GramLattice& l, i64 p);

struct MuStep {
  i64 p;
  GramLattice lattice;
  PProfile profile;
};

struct MuResult {
  GramLattice lattice;
  std::map<i64, int> iterations;
  /// every p-profile of the result is one of the six admissible tuples
  bool fixed = false;
  std::vector<MuStep> trace;
};

MuResult mu_hat(const GramLattice& l);

/// Exponent map of one mu_p step on a profile (e -> e for e <= 1, e - 2 otherwise).
PProfile mu_profile(const PProfile& pr);
/// Profiles P' of primitive lattices with mu_p of profile P' equal to pr, P' != pr.
std::set<std::vector<int>> mu_preimage_profiles(const PProfile& pr);
/// The six possible profiles after mu_hat for quaternary lattices.
const std::vector<std::vector<int>>& admissible_profiles();
bool admissible(const PProfile& pr);

}  // namespace quadlat
