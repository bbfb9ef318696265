#include "quadlat/spinor.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace quadlat {

namespace {

i64 least_nonresidue(i64 p) {
  for (i64 a = 2;; ++a)
    if (legendre(a, p) == -1) return a;
}

int top_bit(std::uint64_t v) { return 63 - __builtin_clzll(v); }

std::uint64_t reduce_by(std::uint64_t v, const std::vector<std::uint64_t>& basis) {
  for (std::uint64_t b : basis)
    if (v >> top_bit(b) & 1) v ^= b;
  return v;
}

// keeps basis sorted by decreasing top bit, fully reduced
void insert(std::vector<std::uint64_t>& basis, std::uint64_t v) {
  v = reduce_by(v, basis);
  if (!v) return;
  int t = top_bit(v);
  for (auto& b : basis)
    if (b >> t & 1) b ^= v;
  basis.push_back(v);
  std::sort(basis.begin(), basis.end(), [](std::uint64_t a, std::uint64_t b) { return top_bit(a) > top_bit(b); });
}

SpinorNormGroup make_group(i64 p, const std::vector<SquareClass>& gens) {
  std::vector<std::uint64_t> b;
  for (const auto& g : gens) insert(b, g.bits);
  SpinorNormGroup out;
  out.p = p;
  for (auto v : b) out.basis.push_back(static_cast<unsigned>(v));
  if (p == 2)
    out.contains_units = out.contains({2, 2}) && out.contains({2, 4});
  else
    out.contains_units = out.contains({p, 2});
  return out;
}

// 2^v * u with u mod 8
SquareClass dyadic(int v, i64 u) { return SquareClass::of(ipow(2, v % 2) * mod(u, 8), 2); }

}  // namespace

int SquareClass::width(i64 p) { return p == kInfinitePlace ? 1 : (p == 2 ? 3 : 2); }

SquareClass SquareClass::of(i64 a, i64 p) {
  if (a == 0) throw std::invalid_argument("square class of zero");
  SquareClass c{p, 0};
  if (p == kInfinitePlace) {
    c.bits = a < 0 ? 1 : 0;
    return c;
  }
  int v = valuation(a, p);
  i64 u = unit_part(a, p);
  c.bits = v & 1;
  if (p == 2) {
    switch (mod(u, 8)) {
      case 1: break;
      case 5: c.bits |= 2; break;
      case 7: c.bits |= 4; break;
      case 3: c.bits |= 6; break;
    }
  } else if (legendre(u, p) == -1) {
    c.bits |= 2;
  }
  return c;
}

i64 SquareClass::representative() const {
  if (p == kInfinitePlace) return bits ? -1 : 1;
  i64 u = 1;
  if (p == 2) {
    static const i64 units[4] = {1, 5, 7, 3};
    u = units[(bits >> 1) & 3];
  } else if (bits & 2) {
    u = least_nonresidue(p);
  }
  return (bits & 1) ? u * p : u;
}

bool SpinorNormGroup::contains(const SquareClass& c) const {
  std::vector<std::uint64_t> b(basis.begin(), basis.end());
  return reduce_by(c.bits, b) == 0;
}

std::vector<SquareClass> SpinorNormGroup::elements() const {
  std::vector<SquareClass> out;
  for (unsigned mask = 0; mask < (1u << basis.size()); ++mask) {
    unsigned v = 0;
    for (size_t i = 0; i < basis.size(); ++i)
      if (mask >> i & 1) v ^= basis[i];
    out.push_back({p, v});
  }
  return out;
}

std::string SpinorNormGroup::str() const {
  std::vector<i64> reps;
  for (const auto& e : elements()) reps.push_back(e.representative());
  std::sort(reps.begin(), reps.end());
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < reps.size(); ++i) os << (i ? "," : "") << reps[i];
  os << "}";
  return os.str();
}

std::vector<i64> automorphous_generators(const JordanSplitting& js) {
  std::vector<i64> out;
  for (const auto& g : theta_group(js).basis) out.push_back(SquareClass{js.p, g}.representative());
  return out;
}

SpinorNormGroup theta_group(const JordanSplitting& js) {
  const i64 p = js.p;
  std::vector<SquareClass> gens;
  if (p != 2) {
    // Kneser: products of pairs of diagonal norms, all units once a
    // component has rank >= 2
    std::vector<SquareClass> diag;
    for (const auto& c : js.components)
      for (i64 u : c.units) diag.push_back(SquareClass::of(ipow(p, c.scale_exp % 2) * u, p));
    for (size_t i = 0; i < diag.size(); ++i)
      for (size_t j = i + 1; j < diag.size(); ++j) gens.push_back(diag[i] * diag[j]);
    for (const auto& c : js.components)
      if (c.rank >= 2) gens.push_back({p, 2});
    return make_group(p, gens);
  }

  // dyadic automorphous numbers
  struct Entry {
    int v;
    i64 u;
  };
  std::vector<Entry> one;  // type I diagonal entries
  std::vector<SquareClass> all;
  for (const auto& c : js.components) {
    if (c.even) {
      for (size_t b = 0; b < c.blocks.size(); ++b)
        for (i64 u : {1, 3, 5, 7}) all.push_back(dyadic(c.scale_exp + 1, u));
    } else {
      for (i64 u : c.units) {
        one.push_back({c.scale_exp, u});
        all.push_back(dyadic(c.scale_exp, u));
      }
    }
  }
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j) gens.push_back(all[i] * all[j]);

  // three dimensions within scales s .. 8s
  for (const auto& c : js.components) {
    int dims = 0;
    for (const auto& d : js.components)
      if (d.scale_exp >= c.scale_exp && d.scale_exp - c.scale_exp < 4) dims += d.rank;
    if (dims >= 3) {
      for (i64 u : {3, 5, 7}) gens.push_back(dyadic(0, u));
      break;
    }
  }

  // pairs of diagonal entries
  std::stable_sort(one.begin(), one.end(), [](const Entry& a, const Entry& b) { return a.v < b.v; });
  for (size_t i = 0; i < one.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      int v = one[i].v - one[j].v;
      i64 u = mod(one[i].u * one[j].u, 8);  // units mod 8 are their own inverses
      if (v == 0 && u == 1) gens.push_back(dyadic(1, 1));
      if (v == 0 && u == 5) gens.push_back(dyadic(1, 3));
      if (v == 0 || v == 2 || v == 4) gens.push_back(dyadic(0, 5));
      if ((v == 1 || v == 3) && (u == 1 || u == 5)) gens.push_back(dyadic(0, 3));
      if ((v == 1 || v == 3) && (u == 3 || u == 7)) gens.push_back(dyadic(0, 7));
    }
  return make_group(2, gens);
}

SpinorNormGroup theta_group(const GramLattice& l, i64 p) { return theta_group(jordan_split(l, p)); }

std::uint64_t IdeleClassQuotient::reduce(std::uint64_t v) const { return reduce_by(v, relations); }

std::uint64_t IdeleClassQuotient::diagonal(i64 a) const {
  std::uint64_t v = 0;
  for (size_t i = 0; i < places.size(); ++i)
    v |= std::uint64_t(SquareClass::of(a, places[i]).bits) << offsets[i];
  return v;
}

IdeleClassQuotient idele_quotient(const GramLattice& l) {
  IdeleClassQuotient q;
  q.places.push_back(kInfinitePlace);
  for (i64 p : bad_primes(l)) q.places.push_back(p);
  int off = 0;
  for (i64 p : q.places) {
    q.offsets.push_back(off);
    off += SquareClass::width(p);
  }
  if (off > 64) throw std::overflow_error("idele_quotient: too many places");
  q.ambient_dim = off;
  // theta at infinity is the positive reals: contributes nothing
  for (size_t i = 1; i < q.places.size(); ++i) {
    SpinorNormGroup t = theta_group(l, q.places[i]);
    for (unsigned b : t.basis) insert(q.relations, std::uint64_t(b) << q.offsets[i]);
    q.thetas.push_back(std::move(t));
  }
  insert(q.relations, q.diagonal(-1));
  for (size_t i = 1; i < q.places.size(); ++i) insert(q.relations, q.diagonal(q.places[i]));
  q.dim = q.ambient_dim - static_cast<int>(q.relations.size());
  return q;
}

int g_plus(const GramLattice& l) { return 1 << idele_quotient(l).dim; }

namespace {

// norm of a vector whose symmetry lies in O(L_p)
i64 symmetry_norm(const JordanSplitting& js) {
  const JordanComponent& c = js.components.front();
  i64 scale = ipow(js.p, c.scale_exp % 2);
  if (!c.even) return scale * c.units.front();
  return 2 * scale;  // 2^s A or 2^s H: a vector of norm 2^(s+1)
}

}  // namespace

int g_count(const GramLattice& l) {
  IdeleClassQuotient q = idele_quotient(l);
  if (q.dim == 0) return 1;
  // an improper global isometry maps spn+(L) to itself iff the idele of
  // local improper spinor norms is trivial in the quotient
  std::uint64_t j = 0;
  for (size_t i = 1; i < q.places.size(); ++i) {
    JordanSplitting js = jordan_split(l, q.places[i]);
    j |= std::uint64_t(SquareClass::of(symmetry_norm(js), q.places[i]).bits) << q.offsets[i];
  }
  int gp = 1 << q.dim;
  return q.reduce(j) == 0 ? gp : gp / 2;
}

std::uint64_t prime_idele_image(i64 q, const IdeleClassQuotient& quot) {
  for (i64 p : quot.places)
    if (p == q) throw std::invalid_argument("prime_idele_image: q must lie outside the bad places");
  return quot.reduce(quot.diagonal(q));
}

}  // namespace quadlat
