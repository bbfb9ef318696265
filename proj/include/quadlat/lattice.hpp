#pragma once

#include <string>
#include <vector>

#include "quadlat/matrix.hpp"

namespace quadlat {

/// Positive definite integral lattice given by its Gram matrix B(x_i, x_j).
class GramLattice {
 public:
  GramLattice() = default;
  /// Validates symmetry and positive definiteness; throws std::invalid_argument.
  explicit GramLattice(Mat gram);
  GramLattice(std::initializer_list<std::initializer_list<i64>> rows) : GramLattice(Mat(rows)) {}

  int rank() const { return gram_.rows(); }
  const Mat& gram() const { return gram_; }
  i64 operator()(int i, int j) const { return gram_(i, j); }
  bool operator==(const GramLattice& o) const { return gram_ == o.gram_; }
  bool operator<(const GramLattice& o) const { return gram_ < o.gram_; }

 private:
  Mat gram_;
};

/// Integral form sum_{i<=j} f_ij x_i x_j; coefficients stored as diagonal
/// then crosses in the order (1,2),(1,3),...,(1,n),(2,3),...
struct ClassicalForm {
  int rank = 0;
  std::vector<i64> diag;
  std::vector<i64> cross;

  /// Flat coefficient list, diagonal first.
  std::vector<i64> coeffs() const;
  static ClassicalForm from_coeffs(int rank, const std::vector<i64>& c);
  /// Ternary [a,b,c,d,e,g] meaning ax^2+by^2+cz^2+dyz+exz+gxy.
  static ClassicalForm from_ternary_sextuple(const std::vector<i64>& s);
  std::vector<i64> ternary_sextuple() const;

  i64 cross_at(int i, int j) const;  // i < j
  bool primitive() const;
  /// Matrix of second partials.
  Mat second_partials() const;
  bool operator==(const ClassicalForm& o) const {
    return rank == o.rank && diag == o.diag && cross == o.cross;
  }
};

struct IdealExponents {
  i64 prime;
  int scale_exp;
  int norm_exp;
};

/// Index of the pair (i,j), i<j, in the cross-coefficient list.
int cross_index(int n, int i, int j);

bool is_positive_definite(const Mat& g);
i64 discriminant(const GramLattice& l);
i64 form_discriminant(const ClassicalForm& f);
GramLattice form_to_lattice(const ClassicalForm& f);
ClassicalForm lattice_to_form(const GramLattice& l);
IdealExponents scale_norm(const GramLattice& l, i64 p);
/// aL for a = num/den, Gram multiplied by a^2; throws if not integral.
GramLattice rescale(const GramLattice& l, i64 num, i64 den);

/// gcd of the Gram entries.
i64 scale_content(const GramLattice& l);
/// gcd of diagonal and twice the off-diagonal entries.
i64 norm_content(const GramLattice& l);
/// Primitive in the lattice sense: scale content is 1.
bool is_primitive(const GramLattice& l);

/// Parse "[[a,b],[c,d]]" or a form "r: [c1,...]" / "r:[...]".
GramLattice parse_gram(const std::string& text);
ClassicalForm parse_form(const std::string& text);

}  // namespace quadlat
