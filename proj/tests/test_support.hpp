#pragma once

#include <random>

#include "quadlat/matrix.hpp"

namespace quadlat::testing {

inline Mat random_unimodular(std::mt19937_64& rng, int n, int steps) {
  Mat u = Mat::identity(n);
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2), flip(0, 5);
  for (int s = 0; s < steps; ++s) {
    int i = idx(rng), j = idx(rng);
    if (flip(rng) == 0) {
      u.swap_rows(i, j);
      continue;
    }
    if (i == j) continue;
    u.add_row(i, j, coef(rng));
  }
  return u;
}

}  // namespace quadlat::testing
