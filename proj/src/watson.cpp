#include "quadlat/watson.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "quadlat/isometry.hpp"

namespace quadlat {

GramLattice mu_p(const GramLattice& l, i64 p) {
  const int n = l.rank();
  const i64 p2 = checked_mul(p, p);
  const Mat& g = l.gram();
  // G x = 0 mod p^2  <=>  D y = 0 mod p^2 with x = V y
  Smith s = smith(g);
  std::vector<std::vector<i64>> gens;
  for (int i = 0; i < n; ++i) {
    std::vector<i64> r(n, 0);
    r[i] = p;
    gens.push_back(r);
  }
  for (int i = 0; i < n; ++i) {
    i64 c = p2 / gcd(s.D(i, i), p2);
    std::vector<i64> r(n);
    for (int k = 0; k < n; ++k) r[k] = mod(checked_mul(s.V(k, i), c), p2 * p);
    gens.push_back(r);
  }
  // rows are coordinates of p * (basis of mu_p L)
  Mat b = hnf_rows(Mat::from_rows(gens));
  if (b.rows() != n) throw std::logic_error("mu_p: basis has wrong rank");
  Mat m = congruent(b, g);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (m(i, j) % p2 != 0) throw std::logic_error("mu_p: result not integral");
      m(i, j) /= p2;
    }
  Mat t = lll_transform(m);
  return GramLattice(congruent(t, m));
}

MuResult mu_hat(const GramLattice& l) {
  MuResult r{l, {}, false, {}};
  for (i64 p : prime_divisors(discriminant(l))) {
    int cap = valuation(discriminant(l), p);
    int steps = 0;
    while (true) {
      if (steps > cap) throw std::logic_error("mu_hat: iteration cap exceeded");
      GramLattice next = mu_p(r.lattice, p);
      i64 dn = discriminant(next);
      if (dn == discriminant(r.lattice) || valuation(dn, p) == 0) break;
      r.lattice = next;
      ++steps;
      r.trace.push_back({p, next, p_profile(next, p)});
    }
    r.iterations[p] = steps;
  }
  r.fixed = true;
  for (i64 p : prime_divisors(discriminant(r.lattice)))
    if (!admissible(p_profile(r.lattice, p))) r.fixed = false;
  return r;
}

PProfile mu_profile(const PProfile& pr) {
  PProfile out{pr.p, {}};
  for (int e : pr.exps) out.exps.push_back(e <= 1 ? e : e - 2);
  std::sort(out.exps.begin(), out.exps.end());
  return out;
}

std::set<std::vector<int>> mu_preimage_profiles(const PProfile& pr) {
  std::set<std::vector<int>> out;
  const auto& e = pr.exps;
  std::vector<int> cur(e.size());
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == e.size()) {
      std::vector<int> s = cur;
      std::sort(s.begin(), s.end());
      if (s != e && !s.empty() && s[0] == 0) out.insert(s);
      return;
    }
    cur[i] = e[i];
    if (e[i] <= 1) rec(i + 1);  // e >= 2 cannot survive a step unchanged
    cur[i] = e[i] + 2;
    rec(i + 1);
  };
  rec(0);
  return out;
}

const std::vector<std::vector<int>>& admissible_profiles() {
  static const std::vector<std::vector<int>> v{{0, 0, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 1},
                                               {0, 0, 0, 2}, {0, 0, 2, 2}, {0, 2, 2, 2}};
  return v;
}

bool admissible(const PProfile& pr) {
  const auto& v = admissible_profiles();
  return std::find(v.begin(), v.end(), pr.exps) != v.end();
}

}  // namespace quadlat
