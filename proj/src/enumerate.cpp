#include "quadlat/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "quadlat/isometry.hpp"

namespace quadlat {

namespace {

bool even_diagonal(const Mat& g) {
  for (int i = 0; i < g.rows(); ++i)
    if (g(i, i) % 2) return false;
  return true;
}

GramLattice lll(const GramLattice& l) { return GramLattice(congruent(lll_transform(l.gram()), l.gram())); }

// basis of {y : f.y = 0 mod p}, f nonzero mod p
Mat hyperplane_basis(const std::vector<i64>& f, i64 p) {
  const int n = static_cast<int>(f.size());
  int k = 0;
  while (mod(f[k], p) == 0) ++k;
  i64 inv = inv_mod(mod(f[k], p), p);
  Mat b(n, n);
  for (int i = 0, r = 0; i < n; ++i) {
    if (i == k) continue;
    b(r, i) = 1;
    b(r, k) = mod(-f[i] * inv, p);
    ++r;
  }
  b(n - 1, k) = p;
  return b;
}

// normalized representatives of the points of P^{n-1}(F_p)
std::vector<std::vector<i64>> projective_points(int n, i64 p) {
  std::vector<std::vector<i64>> out;
  for (int lead = 0; lead < n; ++lead) {
    const int free = n - lead - 1;
    i64 count = ipow(p, free);
    for (i64 c = 0; c < count; ++c) {
      std::vector<i64> v(n, 0);
      v[lead] = 1;
      i64 t = c;
      for (int j = lead + 1; j < n; ++j) {
        v[j] = t % p;
        t /= p;
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

// Canonical Grams of a batch of lattices, spread over worker threads.
std::vector<CanonicalData> canonical_batch(const std::vector<GramLattice>& ls, int jobs) {
  std::vector<CanonicalData> out(ls.size());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(ls.size())));
  if (jobs == 1) {
    for (size_t i = 0; i < ls.size(); ++i) out[i] = canonical(ls[i]);
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      for (size_t i = w; i < ls.size(); i += jobs) out[i] = canonical(ls[i]);
    });
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace

i64 form_disc(const GramLattice& l) {
  i64 d = narrow(det(l.gram()));
  return even_diagonal(l.gram()) ? d : checked_mul(d, ipow(2, l.rank()));
}

Mat form_matrix(const GramLattice& l) {
  if (even_diagonal(l.gram())) return l.gram();
  Mat f = l.gram();
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.cols(); ++j) f(i, j) = checked_mul(f(i, j), 2);
  return f;
}

std::optional<GramLattice> lattice_of_form_matrix(const Mat& f) {
  const int n = f.rows();
  i64 g = 0;
  bool odd_cross = false;
  for (int i = 0; i < n; ++i) {
    if (f(i, i) % 2) throw std::invalid_argument("form matrix needs an even diagonal");
    g = gcd(g, f(i, i) / 2);
    for (int j = i + 1; j < n; ++j) {
      g = gcd(g, f(i, j));
      if (f(i, j) % 2) odd_cross = true;
    }
  }
  if (g != 1) return std::nullopt;
  if (odd_cross) return GramLattice(f);
  Mat h = f;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) /= 2;
  return GramLattice(h);
}

std::vector<Mat> reduced_grams(int n, i64 D, bool even_diag) {
  if (n != 3 && n != 4) throw std::invalid_argument("reduced_grams: rank must be 3 or 4");
  if (D <= 0) throw std::invalid_argument("reduced_grams: determinant must be positive");
  const i128 bound = i128(n == 3 ? 2 : 4) * D;  // product of the diagonal
  const i64 step = even_diag ? 2 : 1;
  std::vector<Mat> out;
  Mat a(n, n);

  auto last_row = [&](i128 prod) {
    Mat lead(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n - 1; ++j) lead(i, j) = a(i, j);
    const i64 dl = narrow(det(lead));
    Mat adj = adjugate(lead);
    std::vector<i64> w(n - 1);
    std::vector<i64> lo(n - 1), hi(n - 1);
    for (int i = 0; i < n - 1; ++i) {
      hi[i] = a(i, i) / 2;
      lo[i] = -hi[i];
    }
    hi[0] = 0;
    for (int i = 0; i < n - 1; ++i) w[i] = lo[i];
    while (true) {
      i128 c = 0;
      for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) c += i128(w[i]) * adj(i, j) * w[j];
      i128 num = D + c;
      if (num % dl == 0) {
        i128 ann = num / dl;
        if (ann >= a(n - 2, n - 2) && ann % step == 0 && prod * ann <= bound) {
          Mat g = a;
          for (int i = 0; i < n - 1; ++i) g(i, n - 1) = g(n - 1, i) = w[i];
          g(n - 1, n - 1) = narrow(ann);
          out.push_back(g);
        }
      }
      int k = 0;
      while (k < n - 1 && w[k] == hi[k]) w[k] = lo[k], ++k;
      if (k == n - 1) break;
      ++w[k];
    }
  };

  // rows 0 .. n-2 recursively
  std::function<void(int, i128)> row = [&](int k, i128 prod) {
    if (k == n - 1) {
      last_row(prod);
      return;
    }
    i64 start = k == 0 ? step : a(k - 1, k - 1);
    for (i64 akk = start;; akk += step) {
      // remaining diagonal entries are at least akk
      i128 p = prod;
      for (int r = k; r < n; ++r) p *= akk;
      if (p > bound) break;
      a(k, k) = akk;
      if (k == 0) {
        row(1, prod * akk);
        continue;
      }
      std::vector<i64> w(k), lo(k), hi(k);
      for (int i = 0; i < k; ++i) {
        hi[i] = a(i, i) / 2;
        lo[i] = -hi[i];
      }
      hi[0] = 0;
      for (int i = 0; i < k; ++i) w[i] = lo[i];
      while (true) {
        for (int i = 0; i < k; ++i) a(i, k) = a(k, i) = w[i];
        Mat lead(k + 1, k + 1);
        for (int i = 0; i <= k; ++i)
          for (int j = 0; j <= k; ++j) lead(i, j) = a(i, j);
        if (det(lead) > 0) row(k + 1, prod * akk);
        int t = 0;
        while (t < k && w[t] == hi[t]) w[t] = lo[t], ++t;
        if (t == k) break;
        ++w[t];
      }
      for (int i = 0; i < k; ++i) a(i, k) = a(k, i) = 0;
    }
  };
  row(0, 1);
  return out;
}

ClassSet classes_by_form_disc(int n, i64 D) {
  ClassSet cs;
  cs.rank = n;
  cs.disc = D;
  std::map<Mat, GramLattice> seen;
  auto collect = [&](i64 det, bool even) {
    for (const Mat& g : reduced_grams(n, det, even)) {
      if (content(g) != 1) continue;
      if (!even && even_diagonal(g)) continue;
      GramLattice l(g);
      Mat c = canonical(l).canon;
      if (!seen.count(c)) seen.emplace(c, GramLattice(c));
    }
  };
  collect(D, true);
  const i64 two_n = ipow(2, n);
  if (D % two_n == 0) collect(D / two_n, false);
  for (auto& [c, l] : seen) {
    cs.classes.push_back(l);
    cs.provenance.push_back("reduced enumeration");
  }
  return cs;
}

std::vector<GramLattice> p_neighbors(const GramLattice& l, i64 p) {
  const Mat& g = l.gram();
  const int n = l.rank();
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("p_neighbors: p must be an odd prime");
  if (narrow(det(g)) % p == 0) throw std::invalid_argument("p_neighbors: p divides the discriminant");
  std::vector<GramLattice> out;
  for (auto x : projective_points(n, p)) {
    auto q = [&](const std::vector<i64>& v) {
      i128 s = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += i128(v[i]) * g(i, j) * v[j];
      return s;
    };
    if (q(x) % p != 0) continue;
    std::vector<i64> f(n);
    for (int i = 0; i < n; ++i) {
      i64 s = 0;
      for (int j = 0; j < n; ++j) s += g(i, j) * x[j];
      f[i] = s;
    }
    int k = 0;
    while (mod(f[k], p) == 0) ++k;
    // lift so that Q(x) = 0 mod p^2
    i64 c = mod(static_cast<i64>(q(x) / p), p);
    i64 t = mod(-c * inv_mod(mod(2 * f[k], p), p), p);
    x[k] += p * t;
    for (int i = 0; i < n; ++i) {
      i64 s = 0;
      for (int j = 0; j < n; ++j) s += g(i, j) * x[j];
      f[i] = s;
    }
    Mat lx = hyperplane_basis(f, p);
    Mat gens(n + 1, n);
    for (int j = 0; j < n; ++j) gens(0, j) = x[j];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gens(i + 1, j) = checked_mul(p, lx(i, j));
    Mat b = hnf_rows(gens);
    Mat ng = congruent(b, g);
    const i64 p2 = p * p;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ng(i, j) /= p2;
    out.push_back(lll(GramLattice(ng)));
  }
  return out;
}

ClassSet pall_ascend(const ClassSet& seed, i64 p, int jobs, bool keep_imprimitive) {
  ClassSet out;
  out.rank = seed.rank;
  out.disc = checked_mul(seed.disc, p * p);
  std::vector<GramLattice> cand;
  std::vector<i64> mult;
  const auto planes = projective_points(seed.rank, p);
  for (size_t i = 0; i < seed.classes.size(); ++i) {
    Mat f = form_matrix(seed.classes[i]);
    const i64 m = seed.content(i);
    for (const auto& h : planes) {
      Mat fp = congruent(hyperplane_basis(h, p), f);
      i64 c = 0;
      for (int r = 0; r < fp.rows(); ++r) {
        c = gcd(c, fp(r, r) / 2);
        for (int s = r + 1; s < fp.cols(); ++s) c = gcd(c, fp(r, s));
      }
      if (c > 1 && !keep_imprimitive) continue;
      if (m > 1 && !keep_imprimitive) continue;
      for (int r = 0; r < fp.rows(); ++r)
        for (int s = 0; s < fp.cols(); ++s) fp(r, s) /= c;
      cand.push_back(lll(*lattice_of_form_matrix(fp)));
      mult.push_back(checked_mul(m, c));
    }
  }
  std::map<std::pair<i64, Mat>, GramLattice> seen;
  auto cds = canonical_batch(cand, jobs);
  for (size_t i = 0; i < cds.size(); ++i) {
    auto key = std::make_pair(mult[i], cds[i].canon);
    if (!seen.count(key)) seen.emplace(key, GramLattice(cds[i].canon));
  }
  std::ostringstream prov;
  prov << "ascended from " << seed.classes.size() << " classes of disc " << seed.disc << " at p=" << p;
  bool any_imprimitive = false;
  for (auto& [key, l] : seen) {
    out.classes.push_back(l);
    out.multiplier.push_back(key.first);
    out.provenance.push_back(prov.str());
    any_imprimitive = any_imprimitive || key.first > 1;
  }
  if (!any_imprimitive) out.multiplier.clear();
  return out;
}

namespace {

std::vector<i64> neighbor_primes(const GramLattice& l, const IdeleClassQuotient& quot) {
  const i64 d = narrow(det(l.gram()));
  std::vector<i64> primes;
  std::vector<std::uint64_t> span;
  auto reduce = [&](std::uint64_t v) {
    for (auto b : span)
      if ((v ^ b) < v) v ^= b;
    return v;
  };
  for (i64 q = 3; q < 2000 && (primes.empty() || static_cast<int>(span.size()) < quot.dim); q = next_prime(q)) {
    if (d % q == 0) continue;
    std::uint64_t img = prime_idele_image(q, quot);
    if (primes.empty()) {
      if (img == 0) primes.push_back(q);
      continue;
    }
    std::uint64_t r = reduce(img);
    if (r) {
      span.push_back(r);
      std::sort(span.rbegin(), span.rend());
      primes.push_back(q);
    }
  }
  if (primes.empty() || static_cast<int>(span.size()) < quot.dim)
    throw IncompleteGenusError("genus_classes: no suitable neighbor primes below 2000");
  return primes;
}

}  // namespace

GenusClasses genus_classes(const GramLattice& l, int max_classes) {
  IdeleClassQuotient quot = idele_quotient(l);
  GenusClasses out;
  out.primes = neighbor_primes(l, quot);
  out.mass = total_mass(l);
  out.g_plus = 1 << quot.dim;
  const i64 q0 = out.primes[0];
  const int g_expected = g_count(l);

  std::map<Mat, int> index;
  std::vector<int> parent;
  int components = 0;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return;
    parent[std::max(a, b)] = std::min(a, b);
    --components;
  };
  mpq_class found = 0;
  // class id, and whether it is new
  auto add = [&](const GramLattice& m) -> std::pair<int, bool> {
    CanonicalData cd = canonical(m);
    auto it = index.find(cd.canon);
    if (it != index.end()) return {it->second, false};
    int id = static_cast<int>(out.classes.size());
    if (id >= max_classes) throw IncompleteGenusError("genus_classes: class limit exceeded");
    index.emplace(cd.canon, id);
    out.classes.emplace_back(cd.canon);
    out.aut.push_back(cd.aut);
    parent.push_back(id);
    ++components;
    found += mpq_class(1, cd.aut);
    return {id, true};
  };
  auto complete = [&] { return MassValue(found) == out.mass; };
  // every class found and no two components can merge any more
  auto done = [&] { return complete() && components == g_expected; };
  std::deque<int> queue;
  std::vector<char> expanded;
  auto expand = [&](int c) {
    for (const auto& nb : p_neighbors(out.classes[c], q0)) {
      auto [id, fresh] = add(nb);
      if (fresh) queue.push_back(id);
      unite(c, id);
    }
    expanded.resize(out.classes.size());
    expanded[c] = 1;
  };
  auto closure = [&] {
    while (!queue.empty() && !done()) {
      int c = queue.front();
      queue.pop_front();
      if (c >= static_cast<int>(expanded.size()) || !expanded[c]) expand(c);
    }
  };

  queue.push_back(add(lll(l)).first);
  closure();
  // cross into the other spinor genera
  for (bool grew = true; grew && !complete();) {
    grew = false;
    std::set<int> roots;
    for (size_t c = 0; c < out.classes.size(); ++c) roots.insert(find(static_cast<int>(c)));
    for (int r : roots)
      for (size_t k = 1; k < out.primes.size() && !complete(); ++k)
        for (const auto& nb : p_neighbors(out.classes[r], out.primes[k])) {
          auto [id, fresh] = add(nb);
          if (!fresh) continue;
          queue.push_back(id);
          grew = true;
        }
    closure();
  }
  if (!complete()) {
    std::ostringstream os;
    os << "genus_classes: mass certificate failed (found " << found.get_str() << ", expected " << out.mass.str()
       << ")";
    throw IncompleteGenusError(os.str());
  }
  // the mass was reached before the components settled: finish the q0 graph
  if (components != g_expected) {
    expanded.resize(out.classes.size());
    for (size_t c = 0; c < out.classes.size(); ++c)
      if (!expanded[c]) expand(static_cast<int>(c));
  }

  // deterministic order: sorted canonical Grams
  std::vector<int> order(out.classes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return out.classes[a] < out.classes[b]; });
  GenusClasses sorted = out;
  std::map<int, int> part_id;
  for (size_t i = 0; i < order.size(); ++i) {
    int c = order[i];
    sorted.classes[i] = out.classes[c];
    sorted.aut[i] = out.aut[c];
    int r = find(c);
    if (!part_id.count(r)) part_id.emplace(r, static_cast<int>(part_id.size()));
    sorted.part.push_back(part_id[r]);
  }
  sorted.parts = static_cast<int>(part_id.size());
  sorted.g = sorted.parts;
  return sorted;
}

int ClassificationReport::total_classes() const {
  int n = 0;
  for (const auto& g : genera) n += static_cast<int>(g.genus.classes.size());
  return n;
}

ClassificationReport classify(const ClassSet& cs, bool complete_genera, const GenusSource& source) {
  ClassificationReport rep;
  rep.rank = cs.rank;
  rep.disc = cs.disc;
  std::map<std::pair<i64, GenusSymbol>, std::vector<int>> by_genus;
  for (size_t i = 0; i < cs.classes.size(); ++i)
    by_genus[{cs.content(i), genus_symbol(cs.classes[i])}].push_back(static_cast<int>(i));
  for (auto& [key, members] : by_genus) {
    GenusReport gr;
    gr.multiplier = key.first;
    gr.symbol = key.second;
    if (!complete_genera) {
      for (int i : members) {
        gr.genus.classes.push_back(cs.classes[i]);
        gr.genus.aut.push_back(aut_order(cs.classes[i]));
        gr.seen.push_back(static_cast<int>(gr.genus.classes.size()) - 1);
      }
      rep.genera.push_back(std::move(gr));
      continue;
    }
    const GramLattice& rep_l = cs.classes[members.front()];
    gr.genus = source ? source(rep_l) : genus_classes(rep_l);
    std::map<Mat, int> pos;
    for (size_t c = 0; c < gr.genus.classes.size(); ++c) pos.emplace(gr.genus.classes[c].gram(), static_cast<int>(c));
    for (int i : members) {
      auto it = pos.find(canonical(cs.classes[i]).canon);
      if (it == pos.end()) throw std::logic_error("classify: input class missing from its genus");
      gr.seen.push_back(it->second);
    }
    gr.h_s.assign(gr.genus.parts, 0);
    std::vector<mpq_class> pm(gr.genus.parts, 0);
    for (size_t c = 0; c < gr.genus.classes.size(); ++c) {
      ++gr.h_s[gr.genus.part[c]];
      pm[gr.genus.part[c]] += mpq_class(1, gr.genus.aut[c]);
    }
    for (const auto& m : pm) gr.equal_spinor_masses = gr.equal_spinor_masses && m == pm.front();
    rep.genera.push_back(std::move(gr));
  }
  return rep;
}

ClassificationReport classify(i64 D, int rank) { return classify(classes_by_form_disc(rank, D)); }

ClassSet complete_classes(const ClassificationReport& rep) {
  ClassSet cs;
  cs.rank = rep.rank;
  cs.disc = rep.disc;
  bool any = false;
  for (const auto& g : rep.genera)
    for (const auto& c : g.genus.classes) {
      cs.classes.push_back(c);
      cs.multiplier.push_back(g.multiplier);
      cs.provenance.push_back("genus closure");
      any = any || g.multiplier > 1;
    }
  if (!any) cs.multiplier.clear();
  return cs;
}

std::vector<SweepStep> ascension_sweep(const ClassSet& seed, i64 p, int steps, const SweepOptions& opt) {
  std::vector<SweepStep> out;
  ClassSet current = seed;
  for (int k = 1; k <= steps; ++k) {
    SweepStep st;
    st.ascended = pall_ascend(current, p, opt.jobs, opt.keep_imprimitive);
    st.disc = st.ascended.disc;
    const bool complete = k < steps || opt.complete_last;
    st.report = classify(st.ascended, complete, opt.source);
    if (opt.progress) opt.progress(st);
    if (complete) current = complete_classes(st.report);
    out.push_back(std::move(st));
  }
  return out;
}

std::vector<OneClassSpinor> find_one_class_spinor(const std::vector<ClassificationReport>& reports) {
  std::vector<OneClassSpinor> out;
  for (const auto& rep : reports)
    for (const auto& gr : rep.genera) {
      const int h = static_cast<int>(gr.genus.classes.size());
      for (size_t c = 0; c < gr.genus.classes.size() && !gr.h_s.empty(); ++c) {
        int hs = gr.h_s[gr.genus.part[c]];
        if (hs == 1 && h > 1) out.push_back({gr.genus.classes[c], h, hs, gr.genus.g});
      }
    }
  return out;
}

int spinor_class_number(const GramLattice& l) {
  GenusClasses gc = genus_classes(l);
  Mat c = canonical(l).canon;
  for (size_t i = 0; i < gc.classes.size(); ++i)
    if (gc.classes[i].gram() == c) {
      int part = gc.part[i];
      return static_cast<int>(std::count(gc.part.begin(), gc.part.end(), part));
    }
  throw std::logic_error("spinor_class_number: lattice missing from its genus");
}

std::vector<int> proper_spinor_sizes(const GenusClasses& gc) {
  std::vector<int> per(gc.parts, 0);
  if (gc.g_plus == gc.g) {
    for (size_t i = 0; i < gc.classes.size(); ++i) per[gc.part[i]] += has_improper_aut(gc.classes[i]) ? 1 : 2;
    return per;
  }
  // no class has an improper automorph here; L and its mirror sit in
  // different proper spinor genera
  for (size_t i = 0; i < gc.classes.size(); ++i) ++per[gc.part[i]];
  std::vector<int> out;
  for (int c : per) out.insert(out.end(), gc.g_plus / gc.g, c);
  return out;
}

}  // namespace quadlat
