#include "quadlat/padic.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

namespace quadlat {

namespace {

struct RawBlock {
  int scale;
  bool binary;
  i128 a, b, c;  // unit parts (divided by p^scale), reduced mod p^(K - scale)
};

i128 pmod(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

i128 inv_mod128(i128 a, i128 m) {
  i128 old_r = pmod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    i128 q = old_r / r;
    i128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw std::domain_error("unit expected in p-adic pivot");
  return pmod(old_s, m);
}

i128 ipow128(i64 p, int e) {
  i128 r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

int val_mod(i128 a, i64 p, int K) {
  if (a == 0) return K;
  int v = 0;
  while (a % p == 0 && v < K) {
    a /= p;
    ++v;
  }
  return v;
}

// Decompose a symmetric matrix over Z/p^K into rank-1 and (p = 2) binary blocks.
std::vector<RawBlock> raw_split(const Mat& g, i64 p, int K) {
  int n = g.rows();
  const i128 M = ipow128(p, K);
  std::vector<std::vector<i128>> A(n, std::vector<i128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A[i][j] = pmod(g(i, j), M);
  std::vector<bool> active(n, true);
  std::vector<RawBlock> out;
  int left = n;
  auto mulm = [&](i128 x, i128 y) { return pmod(x * y, M); };

  while (left > 0) {
    int v = K, di = -1, oi = -1, oj = -1;
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (int j = i; j < n; ++j) {
        if (!active[j]) continue;
        int w = val_mod(A[i][j], p, K);
        if (w < v || (w == v && i == j && di < 0)) {
          if (w < v) {
            di = -1;
            oi = oj = -1;
          }
          v = w;
          if (i == j)
            di = i;
          else if (oi < 0) {
            oi = i;
            oj = j;
          }
        }
      }
    }
    if (v >= K) throw std::logic_error("degenerate form in Jordan splitting");
    // re-scan: a diagonal entry of minimal valuation takes priority
    if (di < 0)
      for (int i = 0; i < n; ++i)
        if (active[i] && val_mod(A[i][i], p, K) == v) di = i;
    if (di < 0 && p != 2) {
      // e_i <- e_i + e_j makes the diagonal reach valuation v
      for (int k = 0; k < n; ++k) A[oi][k] = pmod(A[oi][k] + A[oj][k], M);
      for (int k = 0; k < n; ++k) A[k][oi] = A[oi][k];
      A[oi][oi] = pmod(A[oi][oi] + A[oj][oi], M);
      di = oi;
    }
    const i128 pv = ipow128(p, v);
    if (di >= 0) {
      int i = di;
      i128 u = A[i][i] / pv;
      i128 uinv = inv_mod128(u, M);
      std::vector<i128> t(n, 0);
      for (int j = 0; j < n; ++j)
        if (active[j] && j != i) t[j] = mulm(A[j][i] / pv, uinv);
      for (int j = 0; j < n; ++j) {
        if (!active[j] || j == i) continue;
        for (int k = 0; k < n; ++k) {
          if (!active[k] || k == i) continue;
          A[j][k] = pmod(A[j][k] - mulm(t[j], A[i][k]), M);
        }
      }
      i128 m2 = ipow128(p, K - v);
      out.push_back({v, false, pmod(u, m2), 0, 0});
      active[i] = false;
      --left;
    } else {
      int i = oi, j = oj;
      i128 a = A[i][i], b = A[i][j], c = A[j][j];
      i128 D = pmod(a * c - b * b, M);
      i128 p2v = ipow128(2, 2 * v);
      i128 w = D / p2v;
      i128 winv = inv_mod128(w, M);
      std::vector<i128> x(n, 0), y(n, 0);
      for (int k = 0; k < n; ++k) {
        if (!active[k] || k == i || k == j) continue;
        i128 nx = pmod(c * A[i][k] - b * A[j][k], M);
        i128 ny = pmod(-b * A[i][k] + a * A[j][k], M);
        x[k] = mulm(nx / p2v, winv);
        y[k] = mulm(ny / p2v, winv);
      }
      for (int k = 0; k < n; ++k) {
        if (!active[k] || k == i || k == j) continue;
        for (int l = 0; l < n; ++l) {
          if (!active[l] || l == i || l == j) continue;
          A[k][l] = pmod(A[k][l] - mulm(x[k], A[i][l]) - mulm(y[k], A[j][l]), M);
        }
      }
      i128 m2 = ipow128(2, K - v);
      out.push_back({v, true, pmod(a / pv, m2), pmod(b / pv, m2), pmod(c / pv, m2)});
      active[i] = active[j] = false;
      left -= 2;
    }
  }
  return out;
}

// Fully diagonalize an odd unimodular dyadic form given as a symmetric
// matrix mod 8 with at least one odd diagonal entry.
std::vector<i64> diagonalize_odd_unimodular(std::vector<std::vector<i64>> A) {
  auto m8 = [](i64 x) { return ((x % 8) + 8) % 8; };
  std::vector<i64> units;
  std::vector<bool> active(A.size(), true);
  size_t left = A.size();
  int last_pivot = -1, forced = -1;
  i64 last_unit = 0;
  while (left > 0) {
    int piv = forced;
    forced = -1;
    for (size_t i = 0; i < A.size() && piv < 0; ++i)
      if (active[i] && A[i][i] % 2 != 0) {
        piv = static_cast<int>(i);
        break;
      }
    if (piv < 0) {
      // Everything left is even: put back the last pivot and mix it in.
      if (last_pivot < 0) throw std::logic_error("odd unimodular form expected");
      int i = -1;
      for (size_t a = 0; a < A.size() && i < 0; ++a)
        if (active[a]) i = static_cast<int>(a);
      int e0 = last_pivot;
      units.pop_back();
      active[e0] = true;
      ++left;
      for (size_t k = 0; k < A.size(); ++k) A[e0][k] = A[k][e0] = 0;
      A[e0][e0] = last_unit;
      // e_i <- e_i + e_0
      for (size_t k = 0; k < A.size(); ++k) A[i][k] = m8(A[i][k] + A[e0][k]);
      for (size_t k = 0; k < A.size(); ++k) A[k][i] = A[i][k];
      A[i][i] = m8(A[i][i] + A[e0][i]);
      last_pivot = -1;
      forced = i;  // pivoting e_0 again would undo the mix
      continue;
    }
    i64 u = m8(A[piv][piv]);
    i64 uinv = inv_mod(u, 8);
    for (size_t j = 0; j < A.size(); ++j) {
      if (!active[j] || static_cast<int>(j) == piv) continue;
      i64 t = m8(A[j][piv] * uinv);
      for (size_t k = 0; k < A.size(); ++k) {
        if (!active[k] || static_cast<int>(k) == piv) continue;
        A[j][k] = m8(A[j][k] - t * A[piv][k]);
      }
    }
    for (size_t k = 0; k < A.size(); ++k)
      if (static_cast<int>(k) != piv) A[piv][k] = A[k][piv] = 0;
    units.push_back(u);
    last_pivot = piv;
    last_unit = u;
    active[piv] = false;
    --left;
  }
  return units;
}

}  // namespace

std::string JordanComponent::str() const {
  std::ostringstream os;
  if (scale_exp == 1)
    os << p;
  else if (scale_exp > 1)
    os << p << '^' << scale_exp;
  if (p == 2 && even) {
    for (size_t i = 0; i < blocks.size(); ++i) os << (i ? "+" : "") << (blocks[i] == EvenBlock::A ? "A" : "H");
  } else {
    os << '<';
    for (size_t i = 0; i < units.size(); ++i) os << (i ? "," : "") << units[i];
    os << '>';
  }
  return os.str();
}

int JordanSplitting::total_rank() const {
  int r = 0;
  for (const auto& c : components) r += c.rank;
  return r;
}

const JordanComponent* JordanSplitting::at_scale(int s) const {
  for (const auto& c : components)
    if (c.scale_exp == s) return &c;
  return nullptr;
}

std::string JordanSplitting::str() const {
  std::string s;
  for (const auto& c : components) {
    if (!s.empty()) s += " ";
    s += c.str();
  }
  return s;
}

std::string PProfile::str() const {
  std::string s = "(";
  for (size_t i = 0; i < exps.size(); ++i) s += (i ? "," : "") + std::to_string(exps[i]);
  return s + ")_" + std::to_string(p);
}

namespace {

void finish_component(JordanComponent& c) {
  if (c.p != 2) {
    i64 d = 1;
    for (i64 u : c.units) d = mod(d * u, c.p);
    c.det_class = legendre(d, c.p);
    return;
  }
  if (c.even) {
    i64 d = 1;
    for (auto b : c.blocks) d = d * (b == EvenBlock::A ? 3 : 7) % 8;
    // canonical block list: all H, or one A in front
    int r2 = static_cast<int>(c.blocks.size());
    c.blocks.assign(r2, EvenBlock::H);
    i64 hd = (r2 % 2 == 0) ? 1 : 7;
    if (hd != d && r2 > 0) c.blocks[0] = EvenBlock::A;
    c.det_mod8 = static_cast<int>(d);
    c.oddity = 0;
  } else {
    i64 d = 1, t = 0;
    for (i64 u : c.units) {
      d = d * u % 8;
      t += u;
    }
    c.det_mod8 = static_cast<int>(d);
    c.oddity = static_cast<int>(t % 8);
  }
  c.det_class = (c.det_mod8 == 1 || c.det_mod8 == 7) ? 1 : -1;
}

}  // namespace

JordanSplitting jordan_split_matrix(const Mat& g, i64 p) {
  i64 d = narrow(det(g));
  if (d == 0) throw std::invalid_argument("degenerate form");
  int vd = valuation(d, p);
  int K = (p == 2) ? 2 * vd + 6 : vd + 1;
  if (ipow128(p, K) > (static_cast<i128>(1) << 62)) throw OverflowError("p-adic working precision too large");
  auto raw = raw_split(g, p, K);
  std::map<int, std::vector<RawBlock>> by_scale;
  for (const auto& b : raw) by_scale[b.scale].push_back(b);
  JordanSplitting js;
  js.p = p;
  for (auto& [s, blocks] : by_scale) {
    JordanComponent c;
    c.p = p;
    c.scale_exp = s;
    bool any_odd = false;
    for (const auto& b : blocks) {
      c.rank += b.binary ? 2 : 1;
      if (!b.binary) any_odd = true;
    }
    if (p != 2) {
      for (const auto& b : blocks) c.units.push_back(static_cast<i64>(pmod(b.a, p)));
    } else if (!any_odd) {
      c.even = true;
      for (const auto& b : blocks) {
        i64 dd = static_cast<i64>(pmod(b.a * b.c - b.b * b.b, 8));
        c.blocks.push_back(dd == 3 ? EvenBlock::A : EvenBlock::H);
      }
    } else {
      int r = c.rank;
      std::vector<std::vector<i64>> A(r, std::vector<i64>(r, 0));
      int pos = 0;
      for (const auto& b : blocks) {
        if (b.binary) {
          A[pos][pos] = static_cast<i64>(pmod(b.a, 8));
          A[pos][pos + 1] = A[pos + 1][pos] = static_cast<i64>(pmod(b.b, 8));
          A[pos + 1][pos + 1] = static_cast<i64>(pmod(b.c, 8));
          pos += 2;
        } else {
          A[pos][pos] = static_cast<i64>(pmod(b.a, 8));
          pos += 1;
        }
      }
      c.units = diagonalize_odd_unimodular(A);
      std::sort(c.units.begin(), c.units.end());
    }
    finish_component(c);
    js.components.push_back(c);
  }
  return js;
}

JordanSplitting jordan_split(const GramLattice& l, i64 p) { return jordan_split_matrix(l.gram(), p); }

Mat jordan_gram(const JordanSplitting& js) {
  int n = js.total_rank();
  Mat g(n, n);
  int pos = 0;
  for (const auto& c : js.components) {
    i64 ps = ipow(js.p, static_cast<unsigned>(c.scale_exp));
    if (js.p == 2 && c.even) {
      for (auto b : c.blocks) {
        i64 diag = b == EvenBlock::A ? 2 : 0;
        g(pos, pos) = g(pos + 1, pos + 1) = diag * ps;
        g(pos, pos + 1) = g(pos + 1, pos) = ps;
        pos += 2;
      }
    } else {
      for (i64 u : c.units) {
        g(pos, pos) = u * ps;
        ++pos;
      }
    }
  }
  return g;
}

PProfile profile_of(const JordanSplitting& js) {
  PProfile pr;
  pr.p = js.p;
  for (const auto& c : js.components)
    for (int i = 0; i < c.rank; ++i) pr.exps.push_back(c.scale_exp);
  std::sort(pr.exps.begin(), pr.exps.end());
  return pr;
}

PProfile p_profile(const GramLattice& l, i64 p) { return profile_of(jordan_split(l, p)); }

std::string LocalSymbol::str() const {
  std::ostringstream os;
  for (const auto& e : entries) {
    os << '[' << e[0] << ',' << e[1] << ',' << (e[2] > 0 ? '+' : '-');
    if (p == 2) os << ',' << (e[3] ? "I" : "II") << ',' << e[4];
    os << ']';
  }
  return os.str();
}

LocalSymbol local_symbol(const JordanSplitting& js) {
  LocalSymbol s;
  s.p = js.p;
  for (const auto& c : js.components)
    s.entries.push_back({c.scale_exp, c.rank, c.det_class, js.p == 2 ? (c.even ? 0 : 1) : 0,
                         js.p == 2 ? c.oddity : 0});
  if (js.p != 2) return s;
  auto& sym = s.entries;
  int r = static_cast<int>(sym.size());
  // compartments: maximal runs of type I components with consecutive scales
  std::vector<std::vector<int>> comps;
  for (int i = 0; i < r;) {
    if (sym[i][3] == 1) {
      int v = sym[i][0];
      std::vector<int> c;
      while (i < r && sym[i][3] == 1 && sym[i][0] == v) {
        c.push_back(i);
        ++i;
        ++v;
      }
      comps.push_back(c);
    } else {
      ++i;
    }
  }
  for (const auto& c : comps) {
    int o = 0;
    for (int i : c) {
      o += sym[i][4];
      sym[i][4] = 0;
    }
    sym[c[0]][4] = o % 8;
  }
  // trains
  std::vector<std::vector<int>> trains;
  std::vector<int> cur{0};
  for (int i = 1; i < r; ++i) {
    const auto& prev = sym[i - 1];
    const auto& now = sym[i];
    int gap = now[0] - prev[0];
    bool split = gap > 2 || (gap == 2 && now[3] * prev[3] == 0) || (prev[3] == 0 && now[3] == 0);
    if (split) {
      trains.push_back(cur);
      cur = {i};
    } else {
      cur.push_back(i);
    }
  }
  if (r > 0) trains.push_back(cur);
  for (const auto& t : trains) {
    int len = static_cast<int>(t.size());
    for (int k = 0; k < len - 1; ++k) {
      int t1 = t[len - k - 1];
      if (sym[t1][2] == -1) {
        sym[t1][2] = 1;
        sym[t1 - 1][2] = -sym[t1 - 1][2];
        for (const auto& c : comps) {
          bool hit = std::find(c.begin(), c.end(), t1 - 1) != c.end() || std::find(c.begin(), c.end(), t1) != c.end();
          if (hit) sym[c[0]][4] = (sym[c[0]][4] + 4) % 8;
        }
      }
    }
  }
  return s;
}

LocalSymbol local_symbol(const GramLattice& l, i64 p) { return local_symbol(jordan_split(l, p)); }

bool local_isometric(const GramLattice& l, const GramLattice& m, i64 p) {
  if (l.rank() != m.rank()) throw std::invalid_argument("rank mismatch");
  if (valuation(discriminant(l), p) != valuation(discriminant(m), p)) return false;
  return local_symbol(l, p) == local_symbol(m, p);
}

std::vector<i64> bad_primes(const GramLattice& l) {
  auto ps = prime_divisors(2 * discriminant(l));
  return ps;
}

bool GenusSymbol::operator<(const GenusSymbol& o) const {
  if (rank != o.rank) return rank < o.rank;
  if (disc != o.disc) return disc < o.disc;
  return str() < o.str();
}

std::string GenusSymbol::str() const {
  std::ostringstream os;
  os << "r" << rank << ";d" << disc;
  for (const auto& [p, s] : local) os << ";" << p << ":" << s.str();
  return os.str();
}

GenusSymbol genus_symbol(const GramLattice& l) {
  GenusSymbol g;
  g.rank = l.rank();
  g.disc = discriminant(l);
  for (i64 p : bad_primes(l)) g.local[p] = local_symbol(l, p);
  return g;
}

std::string to_string(OrderClass c) {
  switch (c) {
    case OrderClass::Even:
      return "even";
    case OrderClass::Odd:
      return "odd";
    default:
      return "neither";
  }
}

OrderClass binary_order_class(const JordanComponent& c) {
  if (c.p != 2 || c.rank != 2) throw std::invalid_argument("binary dyadic component expected");
  if (c.even) return OrderClass::Odd;
  // <1,3> ~ A(1,4e) and <1,7> ~ A(1,0) classes have determinant 3 or 7
  if (c.det_mod8 == 3 || c.det_mod8 == 7) return OrderClass::Even;
  return OrderClass::Neither;
}

OrderClass unary_order_class(const JordanComponent& c) {
  if (c.p != 2 || c.rank != 1) throw std::invalid_argument("rank-1 dyadic component expected");
  return c.scale_exp % 2 == 0 ? OrderClass::Even : OrderClass::Odd;
}

bool is_type_E(const JordanSplitting& js) {
  if (js.p != 2) throw std::invalid_argument("dyadic splitting expected");
  for (const auto& c : js.components) {
    if (c.rank >= 3) return true;
    if (c.even) return true;
  }
  auto has = [&](int s) { return js.at_scale(s) != nullptr; };
  for (const auto& c : js.components) {
    int s = c.scale_exp;
    if (has(s + 1) && (has(s + 2) || has(s + 3))) return true;
  }
  return false;
}

JordanSplitting parse_splitting(const std::string& text, i64 p) {
  JordanSplitting js;
  js.p = p;
  std::map<int, JordanComponent> comps;
  std::regex tok(R"((?:(\d+)(?:\^(\d+))?)?\s*(<[-0-9,\s]*>|A|H))");
  auto begin = std::sregex_iterator(text.begin(), text.end(), tok);
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    int s = 0;
    if (m[1].matched) {
      i64 base = std::stoll(m[1].str());
      if (m[2].matched) {
        if (base != p) throw std::invalid_argument("scale base must be the prime");
        s = std::stoi(m[2].str());
      } else {
        s = valuation(base, p);
        if (ipow(p, static_cast<unsigned>(s)) != base) throw std::invalid_argument("scale must be a power of p");
      }
    }
    JordanComponent& c = comps[s];
    c.p = p;
    c.scale_exp = s;
    std::string body = m[3].str();
    if (body == "A" || body == "H") {
      c.even = true;
      c.blocks.push_back(body == "A" ? EvenBlock::A : EvenBlock::H);
      c.rank += 2;
    } else {
      std::string inner = body.substr(1, body.size() - 2);
      std::stringstream ss(inner);
      std::string item;
      while (std::getline(ss, item, ',')) {
        i64 u = std::stoll(item);
        c.units.push_back(p == 2 ? mod(u, 8) : mod(u, p));
        c.rank += 1;
      }
    }
  }
  for (auto& [s, c] : comps) {
    if (c.even && !c.units.empty()) {
      // mixed input: let the matrix splitter sort it out
      Mat g(c.rank, c.rank);
      int pos = 0;
      for (auto b : c.blocks) {
        g(pos, pos) = g(pos + 1, pos + 1) = b == EvenBlock::A ? 2 : 0;
        g(pos, pos + 1) = g(pos + 1, pos) = 1;
        pos += 2;
      }
      for (i64 u : c.units) g(pos, pos) = u, ++pos;
      JordanComponent d = jordan_split_matrix(g, p).components.at(0);
      d.scale_exp = s;
      c = d;
      continue;
    }
    finish_component(c);
    if (!c.even) std::sort(c.units.begin(), c.units.end());
    js.components.push_back(c);
  }
  std::sort(js.components.begin(), js.components.end(),
            [](const JordanComponent& a, const JordanComponent& b) { return a.scale_exp < b.scale_exp; });
  // components pushed above exclude the mixed ones; add them back
  for (auto& [s, c] : comps)
    if (js.at_scale(s) == nullptr) js.components.push_back(c);
  std::sort(js.components.begin(), js.components.end(),
            [](const JordanComponent& a, const JordanComponent& b) { return a.scale_exp < b.scale_exp; });
  return js;
}

}  // namespace quadlat
