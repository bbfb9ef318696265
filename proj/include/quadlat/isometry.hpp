#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "quadlat/lattice.hpp"

namespace quadlat {

/// Integral LLL on a Gram matrix. Returns T (rows = new basis in old
/// coordinates) with T * G * T^T reduced.
Mat lll_transform(const Mat& gram);

/// All nonzero x with x^T G x <= bound, both signs included.
std::vector<std::vector<i64>> short_vectors_all(const Mat& gram, i64 bound);

struct ShortVector {
  std::vector<i64> v;
  i64 norm;
};
/// One representative per +-pair (first nonzero coordinate positive),
/// sorted by norm then coordinates.
std::vector<ShortVector> short_vectors(const GramLattice& l, i64 bound);

i64 lattice_minimum(const GramLattice& l);

struct ReducedGram {
  GramLattice gram;
  i64 min = 0;
};

/// Canonical data of an isometry class.
struct CanonicalData {
  Mat canon;       // canonical Gram
  Mat basis;       // rows: a canonical basis in the input coordinates
  i64 aut = 0;     // |O(L)|
  i64 aut_plus = 0;  // |O+(L)|
};

CanonicalData canonical(const GramLattice& l);
ReducedGram reduce(const GramLattice& l);

/// Returns P with P^T gram(L) P = gram(M), if L and M are isometric.
std::optional<Mat> isometry_witness(const GramLattice& l, const GramLattice& m);
bool isometric(const GramLattice& l, const GramLattice& m);

i64 aut_order(const GramLattice& l);
i64 aut_proper_order(const GramLattice& l);
bool has_improper_aut(const GramLattice& l);

/// Inverse of a unimodular matrix.
Mat unimodular_inverse(const Mat& u);

}  // namespace quadlat
