#include "quadlat/isometry.hpp"

#include <algorithm>
#include <functional>

namespace quadlat {

namespace {

i128 mul128(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
  return r;
}

i128 add128(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
  return r;
}

// Exact rational with 128-bit parts, always normalized with d > 0.
struct Frac {
  i128 n = 0, d = 1;
  Frac() = default;
  Frac(i128 num, i128 den = 1) : n(num), d(den) { norm(); }
  void norm() {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
  }
  Frac operator+(const Frac& o) const {
    i128 g = gcd128(d, o.d);
    return Frac(add128(mul128(n, o.d / g), mul128(o.n, d / g)), mul128(d / g, o.d));
  }
  Frac operator-() const { return Frac(-n, d); }
  Frac operator-(const Frac& o) const { return *this + (-o); }
  Frac operator*(const Frac& o) const {
    i128 g1 = gcd128(n, o.d), g2 = gcd128(o.n, d);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Frac(mul128(n / g1, o.n / g2), mul128(d / g2, o.d / g1));
  }
  Frac operator/(const Frac& o) const { return *this * Frac(o.d, o.n); }
  bool operator<=(const Frac& o) const { return mul128(n, o.d) <= mul128(o.n, d); }
};

// Nearest integer to a fraction.
i128 round_frac(const Frac& f) { return floor_div128(add128(mul128(2, f.n), f.d), mul128(2, f.d)); }

}  // namespace

// Integral LLL with delta = 3/4, operating on the Gram matrix only.
Mat lll_transform(const Mat& gram) {
  int n = gram.rows();
  std::vector<std::vector<i128>> g(n, std::vector<i128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = gram(i, j);
  std::vector<std::vector<i128>> h(n, std::vector<i128>(n, 0));
  for (int i = 0; i < n; ++i) h[i][i] = 1;
  // d[0] = 1, d[i+1] = det of leading i+1 block; lam[k][j] for j < k.
  std::vector<i128> d(n + 1, 0);
  std::vector<std::vector<i128>> lam(n, std::vector<i128>(n, 0));
  d[0] = 1;
  d[1] = g[0][0];
  int kmax = 0;

  auto redi = [&](int k, int l) {
    if (mul128(2, lam[k][l] < 0 ? -lam[k][l] : lam[k][l]) <= d[l + 1]) return;
    i128 q = floor_div128(add128(mul128(2, lam[k][l]), d[l + 1]), mul128(2, d[l + 1]));
    // b_k -= q b_l
    for (int t = 0; t < n; ++t) h[k][t] -= mul128(q, h[l][t]);
    i128 gkk = g[k][k], gkl = g[k][l], gll = g[l][l];
    for (int t = 0; t < n; ++t) g[k][t] -= mul128(q, g[l][t]);
    g[k][k] = add128(gkk - mul128(mul128(2, q), gkl), mul128(mul128(q, q), gll));
    for (int t = 0; t < n; ++t) g[t][k] = g[k][t];
    lam[k][l] -= mul128(q, d[l + 1]);
    for (int i = 0; i < l; ++i) lam[k][i] -= mul128(q, lam[l][i]);
  };
  auto swapi = [&](int k) {
    std::swap(h[k], h[k - 1]);
    std::swap(g[k], g[k - 1]);
    for (int t = 0; t < n; ++t) std::swap(g[t][k], g[t][k - 1]);
    for (int j = 0; j < k - 1; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    i128 l = lam[k][k - 1];
    i128 B = (add128(mul128(d[k - 1], d[k + 1]), mul128(l, l))) / d[k];
    for (int i = k + 1; i <= kmax; ++i) {
      i128 t = lam[i][k];
      lam[i][k] = (mul128(d[k + 1], lam[i][k - 1]) - mul128(l, t)) / d[k];
      lam[i][k - 1] = (add128(mul128(B, t), mul128(l, lam[i][k]))) / d[k + 1];
    }
    d[k] = B;
  };

  int k = 1;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (int j = 0; j <= k; ++j) {
        i128 u = g[k][j];
        for (int i = 0; i < j; ++i) u = (mul128(d[i + 1], u) - mul128(lam[k][i], lam[j][i])) / d[i];
        if (j < k)
          lam[k][j] = u;
        else
          d[k + 1] = u;
      }
    }
    redi(k, k - 1);
    if (mul128(4, mul128(d[k + 1], d[k - 1])) < mul128(3, mul128(d[k], d[k])) - mul128(4, mul128(lam[k][k - 1], lam[k][k - 1]))) {
      swapi(k);
      if (k > 1) --k;
    } else {
      for (int l = k - 2; l >= 0; --l) {
        redi(k, l);
      }
      ++k;
    }
  }
  Mat t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = narrow(h[i][j]);
  return t;
}

std::vector<std::vector<i64>> short_vectors_all(const Mat& gram, i64 bound) {
  int n = gram.rows();
  std::vector<std::vector<Frac>> q(n, std::vector<Frac>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Frac s(gram(i, j));
      for (int k = 0; k < i; ++k) s = s - q[k][k] * q[k][i] * q[k][j];
      q[i][j] = s;
    }
    for (int j = i + 1; j < n; ++j) q[i][j] = q[i][j] / q[i][i];
  }
  std::vector<std::vector<i64>> out;
  std::vector<i64> x(n, 0);
  std::vector<Frac> rem(n + 1);
  rem[n] = Frac(bound);
  std::function<void(int)> rec = [&](int i) {
    if (i < 0) {
      bool zero = std::all_of(x.begin(), x.end(), [](i64 v) { return v == 0; });
      if (!zero) out.push_back(x);
      return;
    }
    Frac c;
    for (int j = i + 1; j < n; ++j) c = c + q[i][j] * Frac(x[j]);
    i128 z = round_frac(-c);
    auto term = [&](i128 xi) {
      Frac y = Frac(xi) + c;
      return q[i][i] * y * y;
    };
    if (!(term(z) <= rem[i + 1])) return;
    // the admissible x_i form an interval around -c
    i128 lo = z, hi = z;
    while (term(lo - 1) <= rem[i + 1]) --lo;
    while (term(hi + 1) <= rem[i + 1]) ++hi;
    for (i128 xi = lo; xi <= hi; ++xi) {
      x[i] = narrow(xi);
      rem[i] = rem[i + 1] - term(xi);
      rec(i - 1);
    }
    x[i] = 0;
  };
  rec(n - 1);
  return out;
}

namespace {

i64 qform(const Mat& g, const std::vector<i64>& v) {
  i128 s = 0;
  int n = g.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += static_cast<i128>(v[i]) * g(i, j) * v[j];
  return narrow(s);
}

std::vector<i64> row_times(const std::vector<i64>& v, const Mat& t) {
  int n = t.cols();
  std::vector<i64> r(n, 0);
  for (int i = 0; i < t.rows(); ++i)
    if (v[i] != 0)
      for (int j = 0; j < n; ++j) r[j] = checked_add(r[j], checked_mul(v[i], t(i, j)));
  return r;
}

// gcd of the k x k minors of the given rows.
i64 minor_gcd(const std::vector<const std::vector<i64>*>& rows, int n) {
  int k = static_cast<int>(rows.size());
  i64 g = 0;
  std::vector<int> cols(k);
  std::function<void(int, int)> pick = [&](int pos, int start) {
    if (g == 1) return;
    if (pos == k) {
      Mat m(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) m(a, b) = (*rows[a])[cols[b]];
      g = gcd(g, narrow(det(m)));
      return;
    }
    for (int c = start; c <= n - (k - pos); ++c) {
      cols[pos] = c;
      pick(pos + 1, c + 1);
    }
  };
  pick(0, 0);
  return g;
}

struct CanonSearch {
  const Mat& g;
  int n;
  std::vector<std::vector<i64>> vecs;
  std::vector<std::vector<i64>> gv;  // G v
  std::vector<i64> norms;

  std::vector<i64> best, cur;
  std::vector<int> chosen, best_basis;
  i64 leaves = 0, leaves_plus = 0;
  i64 best_det = 0;

  CanonSearch(const Mat& gram, std::vector<std::vector<i64>> v) : g(gram), n(gram.rows()), vecs(std::move(v)) {
    for (const auto& x : vecs) {
      std::vector<i64> y(n, 0);
      for (int i = 0; i < n; ++i) {
        i128 s = 0;
        for (int j = 0; j < n; ++j) s += static_cast<i128>(g(i, j)) * x[j];
        y[i] = narrow(s);
      }
      gv.push_back(y);
      norms.push_back(qform(g, x));
    }
  }

  i64 inner(int a, int b) const {
    i128 s = 0;
    for (int i = 0; i < n; ++i) s += static_cast<i128>(vecs[a][i]) * gv[b][i];
    return narrow(s);
  }

  // -1, 0, 1 comparing cur with the same-length prefix of best.
  int cmp_prefix() const {
    if (best.empty()) return -1;
    for (size_t i = 0; i < cur.size(); ++i) {
      if (cur[i] < best[i]) return -1;
      if (cur[i] > best[i]) return 1;
    }
    return 0;
  }

  void dfs(int k) {
    if (k == n) {
      std::vector<const std::vector<i64>*> rows;
      for (int c : chosen) rows.push_back(&vecs[c]);
      Mat m(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) m(a, b) = vecs[chosen[a]][b];
      i64 dt = narrow(det(m));
      if (dt != 1 && dt != -1) return;
      int c = cmp_prefix();
      if (c < 0) {
        best = cur;
        best_basis = chosen;
        best_det = dt;
        leaves = 1;
        leaves_plus = 1;
      } else if (c == 0) {
        ++leaves;
        if (dt == best_det) ++leaves_plus;
      }
      return;
    }
    struct Cand {
      std::vector<i64> t;
      int idx;
    };
    const size_t base = cur.size();
    const int total = static_cast<int>(vecs.size());
    // at the last slot det(chosen, v) = cof . v
    std::vector<i64> cof;
    if (k == n - 1) {
      Mat m(n, n);
      for (int a = 0; a < n - 1; ++a)
        for (int b = 0; b < n; ++b) m(a, b) = vecs[chosen[a]][b];
      for (int b = 0; b < n; ++b) m(n - 1, b) = 0;
      for (int b = 0; b < n; ++b) {
        m(n - 1, b) = 1;
        cof.push_back(narrow(det(m)));
        m(n - 1, b) = 0;
      }
    }
    // vecs are sorted by norm and the norm leads each candidate's key, so
    // whole norm groups can be handled in order
    for (int i0 = 0, i1 = 0; i0 < total; i0 = i1) {
      while (i1 < total && norms[i1] == norms[i0]) ++i1;
      bool equal_so_far = !best.empty();
      for (size_t i = 0; i < base && equal_so_far; ++i)
        if (cur[i] != best[i]) equal_so_far = false;
      if (equal_so_far && norms[i0] > best[base]) break;
      std::vector<Cand> cands;
      for (int idx = i0; idx < i1; ++idx) {
        if (!cof.empty()) {
          i128 d = 0;
          for (int b = 0; b < n; ++b) d += static_cast<i128>(cof[b]) * vecs[idx][b];
          if (d != 1 && d != -1) continue;
        }
        Cand c{{norms[idx]}, idx};
        for (int j = 0; j < k; ++j) c.t.push_back(inner(chosen[j], idx));
        if (equal_so_far) {
          bool worse = false;
          for (size_t i = 0; i < c.t.size(); ++i) {
            if (c.t[i] < best[base + i]) break;
            if (c.t[i] > best[base + i]) {
              worse = true;
              break;
            }
          }
          if (worse) continue;
        }
        cands.push_back(std::move(c));
      }
      std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.t != y.t) return x.t < y.t;
        return x.idx < y.idx;
      });
      for (const auto& c : cands) {
        cur.resize(base);
        cur.insert(cur.end(), c.t.begin(), c.t.end());
        if (cmp_prefix() > 0) break;
        if (std::find(chosen.begin(), chosen.end(), c.idx) != chosen.end()) continue;
        chosen.push_back(c.idx);
        std::vector<const std::vector<i64>*> rows;
        for (int ch : chosen) rows.push_back(&vecs[ch]);
        if (k + 1 < n ? minor_gcd(rows, n) == 1 : true) dfs(k + 1);
        chosen.pop_back();
      }
      cur.resize(base);
    }
  }
};

}  // namespace

std::vector<ShortVector> short_vectors(const GramLattice& l, i64 bound) {
  Mat t = lll_transform(l.gram());
  Mat gr = congruent(t, l.gram());
  std::vector<ShortVector> out;
  for (const auto& v : short_vectors_all(gr, bound)) {
    auto w = row_times(v, t);
    auto first = std::find_if(w.begin(), w.end(), [](i64 x) { return x != 0; });
    if (*first < 0) continue;
    out.push_back({w, qform(l.gram(), w)});
  }
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.v < b.v;
  });
  return out;
}

i64 lattice_minimum(const GramLattice& l) {
  Mat t = lll_transform(l.gram());
  Mat gr = congruent(t, l.gram());
  i64 b = gr(0, 0);
  for (int i = 1; i < gr.rows(); ++i) b = std::min(b, gr(i, i));
  i64 m = b;
  for (const auto& v : short_vectors_all(gr, b)) m = std::min(m, qform(gr, v));
  return m;
}

CanonicalData canonical(const GramLattice& l) {
  int n = l.rank();
  Mat t = lll_transform(l.gram());
  Mat gr = congruent(t, l.gram());
  i64 bmax = 0;
  for (int i = 0; i < n; ++i) bmax = std::max(bmax, gr(i, i));
  auto all = short_vectors_all(gr, bmax);
  std::vector<std::pair<i64, std::vector<i64>>> byn;
  for (auto& v : all) byn.push_back({qform(gr, v), std::move(v)});
  std::sort(byn.begin(), byn.end());
  std::vector<i64> levels;
  for (const auto& p : byn)
    if (levels.empty() || levels.back() != p.first) levels.push_back(p.first);
  // The threshold is the least norm level whose vectors contain a basis;
  // it depends only on the isometry class.
  Mat span(0, n);
  size_t pos = 0;
  for (i64 b : levels) {
    // grow the span level by level instead of re-reducing everything
    std::vector<std::vector<i64>> add;
    for (; pos < byn.size() && byn[pos].first <= b; ++pos) add.push_back(byn[pos].second);
    Mat gens(span.rows() + static_cast<int>(add.size()), n);
    for (int i = 0; i < span.rows(); ++i) gens.set_row(i, span.row(i));
    for (size_t i = 0; i < add.size(); ++i) gens.set_row(span.rows() + static_cast<int>(i), add[i]);
    span = hnf_rows(gens);
    if (span.rows() < n || det(span) != 1) continue;
    std::vector<std::vector<i64>> s;
    for (size_t i = 0; i < pos; ++i) s.push_back(byn[i].second);
    CanonSearch cs(gr, std::move(s));
    cs.dfs(0);
    if (cs.best.empty()) continue;
    CanonicalData out;
    out.canon = Mat(n, n);
    Mat basis(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b2 = 0; b2 < n; ++b2) basis(a, b2) = cs.vecs[cs.best_basis[a]][b2];
    }
    out.basis = basis * t;
    out.canon = congruent(out.basis, l.gram());
    out.aut = cs.leaves;
    out.aut_plus = cs.leaves_plus;
    return out;
  }
  throw std::logic_error("canonical form search found no basis");
}

ReducedGram reduce(const GramLattice& l) {
  CanonicalData c = canonical(l);
  return {GramLattice(c.canon), c.canon(0, 0)};
}

Mat unimodular_inverse(const Mat& u) {
  i64 d = narrow(det(u));
  if (d != 1 && d != -1) throw std::invalid_argument("matrix is not unimodular");
  Mat a = adjugate(u);
  if (d == -1)
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
  return a;
}

std::optional<Mat> isometry_witness(const GramLattice& l, const GramLattice& m) {
  if (l.rank() != m.rank()) throw std::invalid_argument("rank mismatch");
  if (discriminant(l) != discriminant(m)) return std::nullopt;
  CanonicalData cl = canonical(l), cm = canonical(m);
  if (cl.canon != cm.canon) return std::nullopt;
  Mat p = (unimodular_inverse(cm.basis) * cl.basis).transpose();
  return p;
}

bool isometric(const GramLattice& l, const GramLattice& m) { return isometry_witness(l, m).has_value(); }

i64 aut_order(const GramLattice& l) { return canonical(l).aut; }
i64 aut_proper_order(const GramLattice& l) { return canonical(l).aut_plus; }
bool has_improper_aut(const GramLattice& l) {
  CanonicalData c = canonical(l);
  return c.aut != c.aut_plus;
}

}  // namespace quadlat
