#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "quadlat/integer.hpp"

namespace quadlat {

/// Dense row-major integer matrix with overflow-checked products.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows * cols), 0) {}
  Mat(std::initializer_list<std::initializer_list<i64>> rows);
  static Mat identity(int n);
  static Mat from_rows(const std::vector<std::vector<i64>>& rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  i64& operator()(int i, int j) { return a_[static_cast<size_t>(i * c_ + j)]; }
  i64 operator()(int i, int j) const { return a_[static_cast<size_t>(i * c_ + j)]; }
  const std::vector<i64>& data() const { return a_; }

  std::vector<i64> row(int i) const;
  void set_row(int i, const std::vector<i64>& v);
  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  /// row_i += k * row_j
  void add_row(int i, int j, i64 k);
  void add_col(int i, int j, i64 k);

  Mat transpose() const;
  Mat operator*(const Mat& o) const;
  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const { return a_ < o.a_; }

  std::vector<std::vector<i64>> to_rows() const;
  std::string str() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<i64> a_;
};

/// Exact determinant of a square matrix (fraction-free elimination).
i128 det(const Mat& m);

/// Row Hermite normal form of the row span. Zero rows are dropped, so the
/// result has rank-many rows, upper triangular with positive pivots.
Mat hnf_rows(const Mat& gens);

/// Smith form D = U * A * V for square A, with U, V unimodular. Also
/// returns V^{-1} so callers can go back to the original coordinates.
struct Smith {
  Mat D, U, V, Vinv;
};
Smith smith(const Mat& a);

/// B * G * B^T.
Mat congruent(const Mat& basis_rows, const Mat& gram);

/// Adjugate of a square matrix: adj(A) * A = det(A) * I.
Mat adjugate(const Mat& a);

/// gcd of all entries.
i64 content(const Mat& m);

}  // namespace quadlat
