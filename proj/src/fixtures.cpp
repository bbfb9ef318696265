#include "quadlat/fixtures.hpp"

namespace quadlat {

const std::vector<TernaryOCSGEntry>& ternary_table() {
  static const std::vector<TernaryOCSGEntry> table = {
      {{1, 1, 9, 0, 0, 1}, 54, true},
      {{1, 3, 3, 3, 0, 0}, 54, true},
      {{1, 1, 16, 0, 0, 0}, 128, true},
      {{2, 2, 5, 2, 2, 0}, 128, false},
      {{1, 3, 7, 0, 1, 0}, 162, true},
      {{1, 1, 36, 0, 0, 1}, 216, true},
      {{1, 3, 10, 3, 1, 0}, 216, true},
      {{3, 3, 4, 0, 0, 3}, 216, false},
      {{3, 4, 4, 4, 3, 3}, 216, false},
      {{1, 4, 9, 4, 0, 0}, 256, false},
      {{1, 7, 9, 0, 0, 1}, 486, true},
      {{1, 4, 16, 0, 0, 0}, 512, true},
      {{2, 5, 8, 4, 0, 2}, 512, false},
      {{4, 4, 5, 0, 4, 0}, 512, false},
      {{1, 7, 12, 0, 0, 1}, 648, false},
      {{2, 7, 8, 7, 1, 0}, 686, false},
      {{1, 3, 36, 0, 0, 0}, 864, true},
      {{1, 12, 12, 12, 0, 0}, 864, true},
      {{3, 4, 9, 0, 0, 0}, 864, false},
      {{4, 4, 9, 0, 0, 4}, 864, false},
      {{1, 7, 36, 0, 0, 1}, 1944, true},
      {{1, 16, 16, 0, 0, 0}, 2048, true},
      {{4, 5, 13, 2, 0, 0}, 2048, false},
      {{4, 9, 9, 2, 4, 4}, 2048, false},
      {{5, 8, 8, 0, 4, 4}, 2048, false},
      {{3, 4, 28, 4, 0, 0}, 2592, true},
      {{7, 8, 9, 6, 7, 0}, 2744, false},
      {{1, 12, 36, 0, 0, 0}, 3456, true},
      {{4, 9, 12, 0, 0, 0}, 3456, false},
      {{1, 8, 64, 0, 0, 0}, 4096, true},
      {{4, 8, 17, 0, 4, 0}, 4096, false},
      {{4, 9, 28, 0, 4, 0}, 7776, false},
      {{4, 9, 32, 0, 0, 4}, 8192, false},
      {{5, 13, 16, 0, 0, 2}, 8192, false},
      {{9, 9, 16, 8, 8, 2}, 8192, false},
      {{8, 9, 25, 2, 4, 8}, 10976, false},
      {{1, 48, 48, 48, 0, 0}, 13824, true},
      {{4, 13, 37, 2, 4, 4}, 13824, true},
      {{9, 16, 16, 16, 0, 0}, 13824, false},
      {{13, 13, 16, -8, 8, 10}, 13824, false},
      {{9, 16, 36, 16, 4, 8}, 32768, false},
      {{9, 17, 32, -8, 8, 6}, 32768, false},
      {{3, 16, 112, 16, 0, 0}, 41472, true},
      {{9, 16, 112, 16, 0, 0}, 124416, false},
      {{29, 32, 36, 32, 12, 24}, 175616, false},
  };
  return table;
}

const std::map<std::string, GramLattice>& quaternary_fixtures() {
  static const std::map<std::string, GramLattice> fx = {
      {"I4", GramLattice{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}},
      {"F729", GramLattice{{2, 1, 0, 0}, {1, 14, 0, 0}, {0, 0, 6, 3}, {0, 0, 3, 6}}},
      {"L1", GramLattice{{2, 0, 0, 1}, {0, 6, 3, 0}, {0, 3, 6, 0}, {1, 0, 0, 14}}},
      {"L2", GramLattice{{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 18, 9}, {0, 0, 9, 18}}},
      {"L3", GramLattice{{6, 3, 3, 3}, {3, 6, 0, 3}, {3, 0, 8, 4}, {3, 3, 4, 8}}},
      {"M1", GramLattice{{4, 1, 1, 2}, {1, 4, 1, 2}, {1, 1, 4, -1}, {2, 2, -1, 16}}},
      {"M2", GramLattice{{4, 2, 1, 1}, {2, 4, -1, 2}, {1, -1, 10, 4}, {1, 2, 4, 10}}},
      {"M3", GramLattice{{2, 1, 1, 1}, {1, 8, -1, 2}, {1, -1, 8, 2}, {1, 2, 2, 8}}},
      {"K1", GramLattice{{4, 2, -1, 0}, {2, 10, 4, 0}, {-1, 4, 10, 3}, {0, 0, 3, 12}}},
      {"CaseI_m4_L1", GramLattice{{2, 0, 1, -2}, {0, 2, 1, -2}, {1, 1, 5, -2}, {-2, -2, -2, 20}}},
      {"CaseI_m4_L2", GramLattice{{1, 0, 0, 0}, {0, 4, 2, 4}, {0, 2, 5, 2}, {0, 4, 2, 20}}},
      {"CaseI_m4_L3", GramLattice{{8, 0, 2, 4}, {0, 2, -1, 0}, {2, -1, 3, 1}, {4, 0, 1, 10}}},
      {"CaseI_m4_L4", GramLattice{{3, 0, 0, -1}, {0, 12, -2, 6}, {0, -2, 3, -1}, {-1, 6, -1, 6}}},
      {"CaseI_m5_L1", GramLattice{{3, 1, -1, -1}, {1, 4, -2, -2}, {-1, -2, 4, 4}, {-1, -2, 4, 36}}},
      {"CaseI_m5_L2", GramLattice{{2, 0, -1, -2}, {0, 2, 1, -2}, {-1, 1, 9, 0}, {-2, -2, 0, 36}}},
      {"CaseI_m5_L3", GramLattice{{3, -2, 0, 0}, {-2, 12, 0, 0}, {0, 0, 3, 1}, {0, 0, 1, 11}}},
      {"CaseI_m6_L1", GramLattice{{4, -2, 0, 0}, {-2, 5, -2, 0}, {0, -2, 5, 0}, {0, 0, 0, 64}}},
      {"CaseI_m6_L2", GramLattice{{2, 0, 1, -2}, {0, 8, 2, 4}, {1, 2, 9, 0}, {-2, 4, 0, 36}}},
      {"CaseI_m6_L3", GramLattice{{2, -1, 0, 0}, {-1, 6, 1, 0}, {0, 1, 6, 0}, {0, 0, 0, 64}}},
      {"CaseI_m6_L4", GramLattice{{6, 0, 1, 6}, {0, 6, 3, 2}, {1, 3, 7, 2}, {6, 2, 2, 28}}},
  };
  return fx;
}

std::optional<GramLattice> fixture(const std::string& name) {
  const auto& fx = quaternary_fixtures();
  auto it = fx.find(name);
  if (it == fx.end()) return std::nullopt;
  return it->second;
}

ClassicalForm form_729() { return ClassicalForm::from_coeffs(4, {1, 7, 3, 3, 1, 0, 0, 0, 0, 3}); }

const std::vector<i64>& one_class_primes() {
  static const std::vector<i64> p = {2, 3, 5, 7, 11, 13, 17, 23};
  return p;
}

}  // namespace quadlat
