#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "quadlat/lattice.hpp"

namespace quadlat {

/// Binary unimodular even dyadic block.
enum class EvenBlock { A, H };  // A = <A(2,2)>, det 3 mod 8; H = <A(0,0)>, det 7 mod 8

struct JordanComponent {
  i64 p = 0;
  int scale_exp = 0;
  int rank = 0;
  /// Unit parts of a diagonalization. Odd p: residues mod p. p = 2 type I:
  /// residues mod 8 (the component is fully diagonalized).
  std::vector<i64> units;
  /// p = 2 type II only.
  std::vector<EvenBlock> blocks;
  /// Odd p: Legendre symbol of the unit determinant. p = 2: +1 iff the
  /// unit determinant is +-1 mod 8.
  int det_class = 1;
  /// p = 2: unit determinant mod 8.
  int det_mod8 = 1;
  /// p = 2: true for type II (norm = 2 * scale).
  bool even = false;
  /// p = 2: trace of the diagonal units mod 8, 0 for type II.
  int oddity = 0;

  bool type_one() const { return p == 2 && !even; }
  std::string str() const;
};

struct JordanSplitting {
  i64 p = 0;
  std::vector<JordanComponent> components;  // strictly increasing scale_exp
  int total_rank() const;
  const JordanComponent* at_scale(int s) const;
  std::string str() const;
};

struct PProfile {
  i64 p = 0;
  std::vector<int> exps;
  bool operator==(const PProfile& o) const { return p == o.p && exps == o.exps; }
  bool operator<(const PProfile& o) const { return exps < o.exps; }
  std::string str() const;
};

/// Jordan splitting of L_p.
JordanSplitting jordan_split(const GramLattice& l, i64 p);
/// Same for any nondegenerate symmetric integer matrix.
JordanSplitting jordan_split_matrix(const Mat& g, i64 p);
/// Jordan splitting of the block diagonal form given directly by components.
Mat jordan_gram(const JordanSplitting& js);

PProfile p_profile(const GramLattice& l, i64 p);
PProfile profile_of(const JordanSplitting& js);

/// Canonical local symbol. Odd p: (scale, rank, det_class) per component.
/// p = 2: Conway-Sloane canonical symbol after oddity fusion and sign walking.
struct LocalSymbol {
  i64 p = 0;
  // each entry: scale, rank, sign, type (1 = I, 0 = II), oddity
  std::vector<std::array<int, 5>> entries;
  bool operator==(const LocalSymbol& o) const { return p == o.p && entries == o.entries; }
  bool operator<(const LocalSymbol& o) const { return entries < o.entries; }
  std::string str() const;
};

LocalSymbol local_symbol(const JordanSplitting& js);
LocalSymbol local_symbol(const GramLattice& l, i64 p);
bool local_isometric(const GramLattice& l, const GramLattice& m, i64 p);

/// Local symbols at every p | 2 d(L), keyed by prime.
struct GenusSymbol {
  int rank = 0;
  i64 disc = 0;
  std::map<i64, LocalSymbol> local;
  bool operator==(const GenusSymbol& o) const { return rank == o.rank && disc == o.disc && local == o.local; }
  bool operator<(const GenusSymbol& o) const;
  std::string str() const;
};

GenusSymbol genus_symbol(const GramLattice& l);

/// Primes dividing 2 d(L).
std::vector<i64> bad_primes(const GramLattice& l);

enum class OrderClass { Even, Odd, Neither };
std::string to_string(OrderClass c);

/// For a binary unimodular dyadic component.
OrderClass binary_order_class(const JordanComponent& c);
/// For a rank-1 dyadic component 2^m<e>.
OrderClass unary_order_class(const JordanComponent& c);

/// Dyadic quaternary splittings whose spinor norm group contains all units
/// by the structural criterion; see spinor.cpp for the cross-check.
bool is_type_E(const JordanSplitting& js);

/// Build a dyadic splitting from explicit data, e.g. "<3> 2^4<3,7> 2^8<7>"
/// or "H 2<1,7>"; used by tests and the CLI. Odd p: "<1,2> 3^2<1>".
JordanSplitting parse_splitting(const std::string& text, i64 p);

}  // namespace quadlat
