#include "quadlat/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "quadlat/enumerate.hpp"
#include "quadlat/fixtures.hpp"
#include "quadlat/isometry.hpp"
#include "quadlat/mass.hpp"
#include "quadlat/spinor.hpp"
#include "quadlat/watson.hpp"

namespace quadlat {

namespace {

const std::vector<int> kProfile0123{0, 1, 2, 3};

struct Context {
  int jobs = 1;
  std::optional<ClassificationReport> r729;
  std::vector<ClassificationReport> a7;
  std::vector<ClassificationReport> a8;
  std::map<std::string, GenusClasses> extra;  // genera computed outside the reports
};

struct Check {
  bool ok = true;
  std::ostringstream out;
  std::vector<std::string> failures;
  void expect(bool c, const std::string& what) {
    if (!c) {
      ok = false;
      failures.push_back(what);
    }
  }
};

std::string failures_text(const Check& c) {
  if (c.failures.empty()) return {};
  std::string s = "; failed: ";
  for (size_t i = 0; i < c.failures.size() && i < 6; ++i) s += (i ? ", " : "") + c.failures[i];
  if (c.failures.size() > 6) s += ", ... (" + std::to_string(c.failures.size()) + ")";
  return s;
}

GramLattice diag_lattice(const std::vector<i64>& d) {
  Mat g(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) g(i, i) = d[i];
  return GramLattice(g);
}

Mat random_unimodular(std::mt19937_64& rng, int n, int steps) {
  Mat u = Mat::identity(n);
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2), flip(0, 5);
  for (int s = 0; s < steps; ++s) {
    int i = idx(rng), j = idx(rng);
    if (flip(rng) == 0) {
      u.swap_rows(i, j);
    } else if (i != j) {
      u.add_row(i, j, coef(rng));
    }
  }
  return u;
}

int index_of(const std::vector<GramLattice>& cls, const GramLattice& l) {
  Mat c = canonical(l).canon;
  for (size_t i = 0; i < cls.size(); ++i)
    if (cls[i].gram() == c) return static_cast<int>(i);
  return -1;
}

const ClassificationReport& report_729(Context& ctx) {
  if (!ctx.r729) ctx.r729 = classify(classes_by_form_disc(4, 729));
  return *ctx.r729;
}

std::vector<ClassificationReport> primitive_only(const std::vector<ClassificationReport>& reps) {
  std::vector<ClassificationReport> out = reps;
  for (auto& r : out)
    r.genera.erase(std::remove_if(r.genera.begin(), r.genera.end(), [](const GenusReport& g) { return g.multiplier != 1; }),
                   r.genera.end());
  return out;
}

void a1(Context& ctx, Check& c) {
  ClassSet cs = classes_by_form_disc(4, 729);
  int slice = 0;
  for (const auto& l : cs.classes) slice += p_profile(l, 3).exps == kProfile0123;
  c.expect(cs.classes.size() == 33, "33 classes");
  c.expect(slice == 6, "6 in the slice");
  ctx.r729 = classify(cs);

  GramLattice f = form_to_lattice(form_729());
  const GenusReport* gen = nullptr;
  for (const auto& g : ctx.r729->genera)
    if (g.symbol == genus_symbol(f)) gen = &g;
  c.expect(gen != nullptr, "genus of F729 present");
  int h = 0, g = 0;
  if (gen) {
    const GenusClasses& gc = gen->genus;
    h = static_cast<int>(gc.classes.size());
    g = gc.parts;
    int i1 = index_of(gc.classes, *fixture("L1")), i2 = index_of(gc.classes, *fixture("L2")),
        i3 = index_of(gc.classes, *fixture("L3"));
    bool part_ok = i1 >= 0 && i2 >= 0 && i3 >= 0 && gc.part[i2] == gc.part[i3] && gc.part[i1] != gc.part[i2];
    c.expect(h == 3 && g == 2, "h=3, g=2");
    c.expect(part_ok, "partition {L1} | {L2,L3}");
    c.expect(index_of(gc.classes, f) == i1, "F729 is L1");
  }
  int one_class = 0;
  for (const char* n : {"M1", "M2", "M3"}) {
    GramLattice m = *fixture(n);
    for (const auto& gr : ctx.r729->genera)
      if (gr.symbol == genus_symbol(m) && gr.genus.classes.size() == 1) ++one_class;
  }
  c.expect(one_class == 3, "M1..M3 one-class");
  c.out << "classes " << cs.classes.size() << ", slice (0,1,2,3) " << slice << ", gen(F729) h=" << h << " g=" << g
        << ", one-class M_i " << one_class << "/3";
}

void a2(Context& ctx, Check& c) {
  auto ocs = find_one_class_spinor({report_729(ctx)});
  bool match = ocs.size() == 1 && isometric(ocs[0].lattice, form_to_lattice(form_729()));
  c.expect(match, "unique F729");
  c.out << "one-class spinor genera with h>1: " << ocs.size();
  if (!ocs.empty()) c.out << ", h=" << ocs[0].h << " g=" << ocs[0].g << (match ? ", = x^2+xy+7y^2+3z^2+3zw+3w^2" : "");
}

MassValue pow2(int e) {
  mpz_class one(1);
  return e >= 0 ? MassValue(mpq_class(one << e)) : MassValue(mpq_class(one, one << -e));
}

void a3(Context&, Check& c) {
  auto m2 = [](const std::string& t) { return local_mass(parse_splitting(t, 2)); };
  c.expect(m2("<1,1,3,3>") == MassValue(mpq_class(1, 4)), "m2 <1,1,3,3>");
  c.expect(m2("<1,1,1,1>") == MassValue(mpq_class(1, 12)), "m2 <1,1,1,1>");
  c.expect(m2("A A") == MassValue(mpq_class(1, 18)), "m2 A A");
  c.expect(m2("A H") == MassValue(mpq_class(1, 30)), "m2 A H");
  c.expect(m2("A 2^2A") == MassValue(mpq_class(1, 9)), "m2 A 4A");
  c.expect(local_mass(GramLattice{{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 8, 4}, {0, 0, 4, 8}}, 2) == MassValue(mpq_class(1, 9)),
           "m2 A 4A gram");

  int closed = 0;
  for (i64 q : {3, 5, 7, 11})
    for (int k = 1; k <= 3; ++k)
      for (int l = k + 1; l <= 5; ++l)
        for (int m = l + 1; m <= 7; ++m) {
          std::ostringstream t;
          t << "<1> " << q << "^" << k << "<1> " << q << "^" << l << "<1> " << q << "^" << m << "<1>";
          int e = 3 * m + l - k;
          mpz_class pw;
          mpz_ui_pow_ui(pw.get_mpz_t(), q, e / 2);
          MassValue want(mpq_class(pw, 16));
          if (e % 2) want = want * MassValue::sqrt_of(q);
          bool ok = local_mass(parse_splitting(t.str(), q)) == want;
          c.expect(ok, "m_q " + t.str());
          closed += ok;
        }

  // 2-adic A + 4A, 7-adic <1> 7<1> 49<1> 343<1>, d = 2^4 7^6 a square
  MassValue a = m2("A 2^2A"), b = local_mass(parse_splitting("<1> 7<1> 7^2<1> 7^3<1>", 7));
  mpq_class t2 = 1 - mpq_class(1, 4), t7 = 1 - mpq_class(1, 49);
  MassValue total = MassValue(mpq_class(1, 36)) * a * b * MassValue(4 * t2 * t2 * t7 * t7);
  c.expect(total == MassValue(mpq_class(7)), "total mass 7");

  int case1 = 0;
  for (int m = 4; m <= 6; ++m) {
    for (const char* u : {"<1,1>", "<3,3>", "<3,7>", "<1,5>"}) {
      std::string t = std::string(u) + " 2^" + std::to_string(m) + u;
      bool ok = m2(t) == pow2(2 * m - 6);
      c.expect(ok, "m2 " + t);
      case1 += ok;
    }
    for (int k = 1; k <= 4; ++k) {
      auto f = fixture("CaseI_m" + std::to_string(m) + "_L" + std::to_string(k));
      if (!f) continue;
      auto js = jordan_split(*f, 2);
      if (js.components.size() != 2 || binary_order_class(js.components[0]) != OrderClass::Neither ||
          binary_order_class(js.components[1]) != OrderClass::Neither)
        continue;
      bool ok = local_mass(*f, 2) == pow2(2 * m - 6) && total_mass(*f) == pow2(2 * m - 11);
      c.expect(ok, "Case I m=" + std::to_string(m) + " L" + std::to_string(k));
      case1 += ok;
    }
  }
  c.out << "species cases 1/4,1/12,1/18,1/30; A+4A 1/9; m_q closed form " << closed << " cases; total 7: "
        << total.str() << "; Case I identities " << case1 << " checks";
}

void a4(Context&, Check& c) {
  struct Row {
    i64 q;
    bool even;
    int want;
  };
  const Row rows[] = {{3, true, 16}, {3, false, 17}, {5, true, 11}, {5, false, 11}, {7, true, 9}, {7, false, 9}};
  for (const auto& r : rows) {
    int got = bound_exponent_threshold(r.q, r.even);
    c.expect(got == r.want, "threshold q=" + std::to_string(r.q));
    c.out << "q=" << r.q << (r.even ? " even " : " odd ") << got << "; ";
    for (int k = 0; k <= 6; ++k)
      for (int l = k; l <= 12; ++l)
        for (int m = l; m <= 12; ++m) {
          bool above = mass_lower_bound(r.q, k, l, m, r.even).compare(1) > 0;
          if (above != (3 * m + l - k > r.want)) c.expect(false, "exactness at " + std::to_string(3 * m + l - k));
        }
  }
}

void a5(Context&, Check& c) {
  std::string t = theta_group(parse_splitting("<3> 2^4<3,7> 2^8<7>", 2)).str();
  GramLattice c3 = diag_lattice({3, 48, 112, 1792});
  std::string tl = theta_group(c3, 2).str();
  int gp = g_plus(c3);
  c.expect(t == "{1,5,6,14}" && tl == t, "theta");
  c.expect(gp == 1, "g+ = 1");
  c.out << "theta " << t << " (lattice " << tl << "), g+ = " << gp;
}

void a6(Context& ctx, Check& c) {
  std::vector<const GenusClasses*> all;
  std::vector<const ClassificationReport*> reps;
  if (ctx.r729) reps.push_back(&*ctx.r729);
  for (const auto& r : ctx.a7) reps.push_back(&r);
  for (const auto& r : ctx.a8) reps.push_back(&r);
  if (reps.empty()) reps.push_back(&report_729(ctx));
  for (const auto* r : reps)
    for (const auto& g : r->genera)
      if (!g.genus.classes.empty()) all.push_back(&g.genus);
  for (const auto& [_, g] : ctx.extra) all.push_back(&g);

  int good = 0;
  for (const GenusClasses* g : all) {
    MassValue sum;
    std::vector<MassValue> per(g->parts);
    for (size_t i = 0; i < g->classes.size(); ++i) {
      MassValue w(mpq_class(1, g->aut[i]));
      sum = sum + w;
      per[g->part[i]] = per[g->part[i]] + w;
    }
    bool ok = sum == g->mass && std::all_of(per.begin(), per.end(), [&](const MassValue& v) { return v == per[0]; });
    if (!ok) c.expect(false, g->classes[0].gram().str());
    good += ok;
  }
  c.out << good << "/" << all.size() << " genera with sum 1/|O| = mass and equal spinor masses";
}

void a7(Context& ctx, Check& c) {
  SweepOptions opt;
  opt.jobs = ctx.jobs;
  opt.keep_imprimitive = true;
  opt.complete_last = true;
  auto steps = ascension_sweep(classes_by_form_disc(4, 729), 2, 3, opt);
  const int want_g[] = {18, 63, 135}, want_p[] = {8, 28, 60};
  int one_class = 0;
  bool k1 = false;
  std::string which;
  for (size_t s = 0; s < steps.size(); ++s) {
    const auto& rep = steps[s].report;
    int prof = 0;
    for (const auto& g : rep.genera) {
      if (g.genus.classes.empty() || p_profile(g.genus.classes[0], 3).exps != kProfile0123) continue;
      ++prof;
      if (g.multiplier == 1 && g.genus.classes.size() == 1) {
        ++one_class;
        bool is_k1 = isometric(g.genus.classes[0], *fixture("K1"));
        k1 = k1 || is_k1;
        which += (which.empty() ? "" : ", ") + (is_k1 ? std::string("K1") : "disc " + std::to_string(steps[s].disc) + " " +
                                                                             g.genus.classes[0].gram().str());
      }
    }
    int ng = static_cast<int>(rep.genera.size());
    c.expect(ng == want_g[s] && prof == want_p[s], "counts at " + std::to_string(steps[s].disc));
    c.out << "disc " << steps[s].disc << ": " << ng << " genera, " << prof << " with (0,1,2,3); ";
    ctx.a7.push_back(rep);
  }
  auto ocs = find_one_class_spinor(primitive_only(ctx.a7));
  c.expect(one_class == 1 && k1, "single one-class genus K1");
  c.expect(ocs.empty(), "no one-class spinor genus");
  c.out << "one-class genera in the slice " << one_class << " (" << which << "); one-class spinor genera with h>1: "
        << ocs.size();
}

struct CaseISummary {
  int h = 0, g = 0, g_plus = 0;
  std::vector<int> proper;
  bool split() const {
    return g_plus > 1 && std::all_of(proper.begin(), proper.end(), [](int s) { return s > 1; });
  }
};

bool shape_m_m(const GramLattice& l, int m) {
  LocalSymbol s = local_symbol(l, 2);
  if (s.entries.size() != 2 || s.entries[0][0] != 0 || s.entries[1][0] != m) return false;
  for (int i = 1; i < 5; ++i)
    if (s.entries[0][i] != s.entries[1][i]) return false;
  return s.entries[0][1] == 2;
}

void a8(Context& ctx, Check& c) {
  SweepOptions opt;
  opt.jobs = ctx.jobs;
  opt.keep_imprimitive = false;
  opt.complete_last = true;
  auto steps = ascension_sweep(classes_by_form_disc(4, 16), 2, 6, opt);
  const std::map<int, int> want_count{{4, 4}, {5, 3}, {6, 4}};
  const std::map<int, std::set<int>> want_split{{4, {1}}, {5, {2, 3}}, {6, {2, 4}}};
  for (int m = 4; m <= 6; ++m) {
    const auto& rep = steps[m - 1].report;
    ctx.a8.push_back(rep);
    int count = 0;
    for (const auto& g : rep.genera)
      if (g.multiplier == 1 && !g.genus.classes.empty() && shape_m_m(g.genus.classes[0], m)) ++count;
    c.expect(count == want_count.at(m), "count m=" + std::to_string(m));
    c.out << "m=" << m << ": " << count << " genera";
    for (int k = 1; k <= 4; ++k) {
      auto f = fixture("CaseI_m" + std::to_string(m) + "_L" + std::to_string(k));
      if (!f) continue;
      const GenusClasses* gc = nullptr;
      bool in_sweep = false;
      for (const auto& g : rep.genera)
        if (g.symbol == genus_symbol(*f) && !g.genus.classes.empty()) {
          gc = &g.genus;
          in_sweep = shape_m_m(g.genus.classes[0], m);
        }
      std::string key = "CaseI_m" + std::to_string(m) + "_L" + std::to_string(k);
      if (!gc) gc = &(ctx.extra[key] = genus_classes(*f));
      CaseISummary s{static_cast<int>(gc->classes.size()), gc->g, gc->g_plus, proper_spinor_sizes(*gc)};
      bool want = want_split.at(m).count(k) > 0;
      c.expect(s.split() == want, "split L" + std::to_string(k) + " m=" + std::to_string(m));
      c.out << "; L" << k << " h=" << s.h << " g=" << s.g << " g+=" << s.g_plus << (s.split() ? " split" : " gen=spn");
      if (!in_sweep) c.out << " (not M+2^mM)";
    }
    c.out << (m < 6 ? " | " : "");
  }
}

void a9(Context&, Check& c) {
  int good = 0, n = 0;
  i64 largest = 0;
  for (const auto& e : ternary_table()) {
    ++n;
    GramLattice l = form_to_lattice(ClassicalForm::from_ternary_sextuple(e.sextuple));
    GenusClasses gc = genus_classes(l);
    int i = index_of(gc.classes, l);
    int hs = i < 0 ? 0 : static_cast<int>(std::count(gc.part.begin(), gc.part.end(), gc.part[i]));
    bool ok = hs == 1 && gc.classes.size() > 1;
    std::ostringstream id;
    id << "[";
    for (size_t j = 0; j < e.sextuple.size(); ++j) id << (j ? "," : "") << e.sextuple[j];
    id << "] h=" << gc.classes.size() << " hs=" << hs;
    c.expect(ok, id.str());
    good += ok;
    largest = std::max(largest, e.discriminant);
  }
  c.expect(n == 45, "45 entries");
  c.out << good << "/" << n << " forms with h_s = 1 < h (largest disc " << largest << ")";
}

GramLattice random_quaternary(std::mt19937_64& rng) {
  const i64 primes[] = {2, 3, 5, 7};
  std::uniform_int_distribution<int> pick(0, 3), e(0, 3);
  std::vector<i64> d(4, 1);
  for (int i = 1; i < 4; ++i) d[i] = d[i - 1] * ipow(primes[pick(rng)], e(rng));
  return GramLattice(congruent(random_unimodular(rng, 4, 12), diag_lattice(d).gram()));
}

void a10(Context&, Check& c) {
  std::mt19937_64 rng(20240611);
  int mu = 0, trip = 0, red = 0, nb = 0, gpc = 0;
  while (mu < 500) {
    GramLattice l = random_quaternary(rng);
    auto bad = bad_primes(l);
    std::vector<i64> ps;
    for (i64 p : bad)
      if (discriminant(l) % p == 0) ps.push_back(p);
    if (ps.empty()) continue;
    i64 p = ps[rng() % ps.size()];
    GramLattice m = mu_p(l, p);
    for (i64 q : bad)
      if (q != p && !local_isometric(m, l, q)) c.expect(false, "mu_" + std::to_string(p) + " at " + std::to_string(q));
    ++mu;
  }
  std::uniform_int_distribution<int> dg(1, 6), off(-3, 3);
  while (trip < 500) {
    Mat g(4, 4);
    for (int i = 0; i < 4; ++i) {
      g(i, i) = dg(rng) + 6;
      for (int j = i + 1; j < 4; ++j) g(i, j) = g(j, i) = off(rng);
    }
    if (!is_positive_definite(g)) continue;
    GramLattice l(g);
    ClassicalForm f = lattice_to_form(l);
    if (!f.primitive()) continue;
    if (form_to_lattice(f) != l) c.expect(false, "round trip " + g.str());
    ++trip;
  }
  for (; red < 200; ++red) {
    GramLattice l = random_quaternary(rng);
    GramLattice r = reduce(l).gram;
    GramLattice moved(congruent(random_unimodular(rng, 4, 15), l.gram()));
    if (reduce(r).gram != r || reduce(moved).gram != r) c.expect(false, "reduce " + l.gram().str());
  }
  for (int t = 0; t < 40; ++t) {
    GramLattice l = random_quaternary(rng);
    if (discriminant(l) > 2000) continue;
    GenusSymbol s = genus_symbol(l);
    i64 q = 3;
    while (discriminant(l) % q == 0 || q == 2) q += 2;
    for (const auto& n : p_neighbors(l, q))
      if (!(genus_symbol(n) == s)) c.expect(false, "neighbor " + l.gram().str());
    ++nb;
  }
  for (int t = 0; t < 200; ++t) {
    GramLattice l = random_quaternary(rng);
    int gp = g_plus(l), g = g_count(l);
    if ((gp & (gp - 1)) != 0 || !(g == gp || 2 * g == gp)) c.expect(false, "g/g+ " + l.gram().str());
    ++gpc;
  }
  c.out << "mu_p localization " << mu << ", round trips " << trip << ", reduce " << red << ", neighbor sets " << nb
        << ", g/g+ " << gpc;
}

struct Criterion {
  const char* id;
  double budget;
  void (*run)(Context&, Check&);
};

const Criterion kCriteria[] = {
    {"A1", 120, a1}, {"A2", 120, a2}, {"A3", 10, a3},    {"A4", 10, a4},    {"A5", 10, a5},
    {"A7", 2700, a7}, {"A8", 1800, a8}, {"A6", 300, a6}, {"A9", 3600, a9}, {"A10", 600, a10},
};

}  // namespace

const std::vector<std::string>& quick_criteria() {
  static const std::vector<std::string> v{"A1", "A2", "A3", "A4", "A5", "A6"};
  return v;
}

const std::vector<std::string>& all_criteria() {
  static const std::vector<std::string> v{"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10"};
  return v;
}

std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& ids, int jobs,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  Context ctx;
  ctx.jobs = jobs;
  std::vector<CriterionResult> out;
  for (const auto& s : kCriteria) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), s.id) == ids.end()) continue;
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      s.run(ctx, c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    CriterionResult r;
    r.id = s.id;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.budget = s.budget;
    bool in_time = r.seconds <= r.budget;
    if (!in_time) c.expect(false, "over time budget");
    r.pass = c.ok;
    r.detail = c.out.str() + failures_text(c);
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace quadlat
