#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "quadlat/padic.hpp"

namespace quadlat {

/// Exact value coeff * sqrt(radicand), radicand square-free.
class MassValue {
 public:
  MassValue() : coeff_(0), radicand_(1) {}
  MassValue(mpq_class c, i64 radicand = 1);
  static MassValue sqrt_of(i64 n);  // sqrt(n) for n > 0

  const mpq_class& coeff() const { return coeff_; }
  i64 radicand() const { return radicand_; }
  bool rational() const { return radicand_ == 1; }

  MassValue operator*(const MassValue& o) const;
  MassValue operator/(const MassValue& o) const;
  /// Only defined for equal radicands.
  MassValue operator+(const MassValue& o) const;
  bool operator==(const MassValue& o) const { return radicand_ == o.radicand_ && coeff_ == o.coeff_; }
  bool operator!=(const MassValue& o) const { return !(*this == o); }
  /// Sign of (this - q) for rational q, by squaring.
  int compare(const mpq_class& q) const;
  double to_double() const;
  std::string str() const;

 private:
  mpq_class coeff_;
  i64 radicand_;
};

struct SpeciesId {
  int dim = 0;
  /// Encoding: 0 is "0+", 2t > 0 is "2t+", -2t is "2t-", odd is unsigned.
  int code = 0;
  bool bound = false;
  mpq_class factor;  // M_p
  std::string label() const;
};

/// M_p for a species code.
mpq_class species_factor(int code, i64 p);

/// Species of each component, indexed like the components of js. At p = 2
/// the zero-dimensional forms adjacent to type I components are included
/// in the result with dim 0.
struct SpeciesEntry {
  int scale;
  SpeciesId species;
};
std::vector<SpeciesEntry> species_list(const JordanSplitting& js);

/// Octane value of a dyadic component.
int octane(const JordanComponent& c);

MassValue local_mass(const JordanSplitting& js);
MassValue local_mass(const GramLattice& l, i64 p);

/// Standard p-factor std_p for p not dividing 2d.
mpq_class standard_factor(int rank, i64 det, i64 p);

struct MassReport {
  MassValue mass;
  std::string branch;  // "rank4-square", "rank4-character", "rank3"
  std::vector<std::pair<i64, MassValue>> local;
};

MassReport total_mass_report(const GramLattice& l);
MassValue total_mass(const GramLattice& l);
/// m(L) / g(L).
MassValue spinor_mass(const GramLattice& l, int g);

/// Kronecker symbol (a|n) for n > 0.
int kronecker(i64 a, i64 n);
/// Generalized Bernoulli number B_{2,chi} for the primitive character of
/// the fundamental discriminant f > 1.
mpq_class bernoulli2_chi(i64 f);
/// Fundamental discriminant of Q(sqrt(n)), n > 0 not a square.
i64 fundamental_discriminant(i64 n);

MassValue mass_lower_bound(i64 q, int k, int l, int m, bool n_even);
int bound_exponent_threshold(i64 q, bool n_even);

}  // namespace quadlat
