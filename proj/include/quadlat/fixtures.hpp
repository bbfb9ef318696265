#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadlat/lattice.hpp"

namespace quadlat {

struct TernaryOCSGEntry {
  std::vector<i64> sextuple;  // [a,b,c,d,e,g]: ax^2+by^2+cz^2+dyz+exz+gxy
  i64 discriminant;
  bool regular;
};

/// The 45 ternary forms with a one-class spinor genus that is not a
/// one-class genus.
const std::vector<TernaryOCSGEntry>& ternary_table();

/// Named quaternary Gram matrices: I4, F729 (the form x^2+xy+7y^2+3z^2+3zw+3w^2),
/// L1..L3, M1..M3, K1, and the dyadic family CaseI_m{4,5,6}_L{k}.
const std::map<std::string, GramLattice>& quaternary_fixtures();
std::optional<GramLattice> fixture(const std::string& name);

/// The quaternary form of discriminant 729 with a one-class spinor genus.
ClassicalForm form_729();

/// Primes that can divide the discriminant of a quaternary one-class genus.
const std::vector<i64>& one_class_primes();

}  // namespace quadlat
