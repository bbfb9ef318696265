#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quadlat/padic.hpp"

namespace quadlat {

constexpr i64 kInfinitePlace = 0;

/// Element of Q_v^x / squares as an F2 vector.
/// odd p: bit0 = valuation parity, bit1 = non-square unit.
/// p = 2: bit0 = valuation parity, bit1 = factor 5, bit2 = factor -1.
/// infinity: bit0 = sign.
struct SquareClass {
  i64 p = 2;
  unsigned bits = 0;

  static SquareClass of(i64 a, i64 p);
  static int width(i64 p);
  SquareClass operator*(const SquareClass& o) const { return {p, bits ^ o.bits}; }
  bool operator==(const SquareClass& o) const { return p == o.p && bits == o.bits; }
  /// Smallest positive integer representative (odd p uses the least non-residue).
  i64 representative() const;
};

struct SpinorNormGroup {
  i64 p = 2;
  std::vector<unsigned> basis;  // reduced echelon form
  bool contains_units = false;

  bool contains(const SquareClass& c) const;
  std::vector<SquareClass> elements() const;
  int dim() const { return static_cast<int>(basis.size()); }
  std::string str() const;  // e.g. "{1,5,6,14}"
};

/// theta(O+(L_p)) modulo squares.
SpinorNormGroup theta_group(const JordanSplitting& js);
SpinorNormGroup theta_group(const GramLattice& l, i64 p);

/// Square classes whose products generate theta (before closure), for reports.
std::vector<i64> automorphous_generators(const JordanSplitting& js);

struct IdeleClassQuotient {
  std::vector<i64> places;     // kInfinitePlace first, then the primes of 2d
  std::vector<int> offsets;    // bit offset of each place
  int ambient_dim = 0;
  std::vector<std::uint64_t> relations;  // echelon basis of Q^x-image plus thetas
  std::vector<SpinorNormGroup> thetas;   // per finite place
  int dim = 0;

  /// Reduce an ambient vector modulo the relations.
  std::uint64_t reduce(std::uint64_t v) const;
  /// Diagonal image of the rational a at the places.
  std::uint64_t diagonal(i64 a) const;
};

IdeleClassQuotient idele_quotient(const GramLattice& l);
int g_plus(const GramLattice& l);
/// Number of (improper) spinor genera; decided locally from an improper
/// automorphism of each L_p.
int g_count(const GramLattice& l);
/// Reduced image of the prime idele at q; zero iff q-neighbors stay in the
/// proper spinor genus.
std::uint64_t prime_idele_image(i64 q, const IdeleClassQuotient& quot);

}  // namespace quadlat
