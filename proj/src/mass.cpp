#include "quadlat/mass.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace quadlat {

namespace {

mpq_class qpow(i64 p, int e) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
  mpq_class r(z);
  if (e < 0) r = 1 / r;
  r.canonicalize();
  return r;
}

// p^(e/2) as a MassValue
MassValue half_power(i64 p, int e) {
  int q = e >= 0 ? e / 2 : -((-e + 1) / 2);
  MassValue v(qpow(p, q));
  if (e - 2 * q == 1) v = v * MassValue::sqrt_of(p);
  return v;
}

}  // namespace

MassValue::MassValue(mpq_class c, i64 radicand) : coeff_(std::move(c)), radicand_(radicand) {
  if (radicand <= 0) throw std::invalid_argument("radicand must be positive");
  coeff_.canonicalize();
  i64 sf = squarefree_part(radicand_);
  i64 sq = isqrt(radicand_ / sf);
  coeff_ *= sq;
  radicand_ = sf;
  if (coeff_ == 0) radicand_ = 1;
}

MassValue MassValue::sqrt_of(i64 n) { return MassValue(mpq_class(1), n); }

MassValue MassValue::operator*(const MassValue& o) const {
  i64 g = gcd(radicand_, o.radicand_);
  mpq_class c = coeff_ * o.coeff_ * g;
  return MassValue(c, (radicand_ / g) * (o.radicand_ / g));
}

MassValue MassValue::operator/(const MassValue& o) const {
  if (o.coeff_ == 0) throw std::domain_error("division by zero mass");
  // 1/(c sqrt r) = sqrt r / (c r)
  MassValue inv(1 / (o.coeff_ * o.radicand_), o.radicand_);
  return *this * inv;
}

MassValue MassValue::operator+(const MassValue& o) const {
  if (coeff_ == 0) return o;
  if (o.coeff_ == 0) return *this;
  if (radicand_ != o.radicand_) throw std::invalid_argument("adding masses with different radicands");
  return MassValue(coeff_ + o.coeff_, radicand_);
}

int MassValue::compare(const mpq_class& q) const {
  int sa = sgn(coeff_), sb = sgn(q);
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  mpq_class a2 = coeff_ * coeff_ * radicand_, b2 = q * q;
  int c = cmp(a2, b2);
  return sa > 0 ? c : -c;
}

double MassValue::to_double() const { return coeff_.get_d() * std::sqrt(static_cast<double>(radicand_)); }

std::string MassValue::str() const {
  std::string s = coeff_.get_str();
  if (radicand_ != 1) s += "*sqrt(" + std::to_string(radicand_) + ")";
  return s;
}

std::string SpeciesId::label() const {
  if (code == 0) return dim == 0 && !bound ? "0" : "0+";
  if (code % 2 != 0) return std::to_string(code < 0 ? -code : code);
  return std::to_string(code > 0 ? code : -code) + (code > 0 ? "+" : "-");
}

mpq_class species_factor(int code, i64 p) {
  if (code == 0) return 1;
  int n = code < 0 ? -code : code;
  int s = (n + 1) / 2;
  mpq_class mp = 2;
  for (int k = 1; k < s; ++k) mp *= 1 - qpow(p, -2 * k);
  if (n % 2 == 0) mp *= (code > 0 ? mpq_class(1 - qpow(p, -s)) : mpq_class(1 + qpow(p, -s)));
  return 1 / mp;
}

int octane(const JordanComponent& c) {
  int o = c.even ? 0 : c.oddity;
  if (c.det_class == -1) o += 4;
  return ((o % 8) + 8) % 8;
}

std::vector<SpeciesEntry> species_list(const JordanSplitting& js) {
  std::vector<SpeciesEntry> out;
  const i64 p = js.p;
  if (p != 2) {
    int eps = legendre(-1, p);
    for (const auto& c : js.components) {
      SpeciesId s;
      s.dim = c.rank;
      s.code = c.rank;
      if (c.rank % 2 == 0) {
        int sign = c.det_class * (((c.rank / 2) % 2 == 1) ? eps : 1);
        if (sign != 1) s.code = -c.rank;
      }
      s.factor = species_factor(s.code, p);
      out.push_back({c.scale_exp, s});
    }
    return out;
  }
  if (js.components.empty()) return out;
  int lo = js.components.front().scale_exp - 1, hi = js.components.back().scale_exp + 1;
  auto odd_at = [&](int k) {
    const JordanComponent* c = js.at_scale(k);
    return c && c->rank > 0 && !c->even;
  };
  for (int k = lo; k <= hi; ++k) {
    const JordanComponent* c = js.at_scale(k);
    int n = c ? c->rank : 0;
    bool even = !c || c->even;
    bool bound = odd_at(k - 1) || odd_at(k + 1);
    int o = c ? octane(*c) : 0;
    int t = (even || n % 2 == 1) ? n / 2 : n / 2 - 1;
    SpeciesId s;
    s.dim = n;
    s.bound = bound;
    if (!bound && (o == 0 || o == 1 || o == 7))
      s.code = 2 * t;
    else if (!bound && (o == 3 || o == 4 || o == 5))
      s.code = -2 * t;
    else
      s.code = 2 * t + 1;
    s.factor = species_factor(s.code, 2);
    if (n == 0 && !bound) continue;  // free empty forms contribute 1
    out.push_back({k, s});
  }
  return out;
}

MassValue local_mass(const JordanSplitting& js) {
  const i64 p = js.p;
  mpq_class diag = 1;
  for (const auto& e : species_list(js)) diag *= e.species.factor;
  int cross = 0;  // sum of (s_j - s_i) n_i n_j
  const auto& cs = js.components;
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t j = i + 1; j < cs.size(); ++j)
      cross += (cs[j].scale_exp - cs[i].scale_exp) * cs[i].rank * cs[j].rank;
  MassValue m = MassValue(diag) * half_power(p, cross);
  if (p == 2) {
    int n_ii = 0, n_two = 0;
    for (size_t i = 0; i < cs.size(); ++i) {
      if (cs[i].even) n_two += cs[i].rank;
      if (i + 1 < cs.size() && !cs[i].even && !cs[i + 1].even &&
          cs[i + 1].scale_exp == cs[i].scale_exp + 1)
        ++n_ii;
    }
    m = m * MassValue(qpow(2, n_ii - n_two));
  }
  return m;
}

MassValue local_mass(const GramLattice& l, i64 p) { return local_mass(jordan_split(l, p)); }

int kronecker(i64 a, i64 n) {
  if (n <= 0) throw std::invalid_argument("kronecker: n must be positive");
  int r = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    i64 m8 = mod(a, 8);
    if (m8 == 3 || m8 == 5) r = -r;
  }
  for (i64 p : prime_divisors(n)) {
    int v = valuation(n, p);
    int l = legendre(a, p);
    if (l == 0) return 0;
    if (v % 2 == 1) r *= l;
  }
  return r;
}

mpq_class standard_factor(int rank, i64 det, i64 p) {
  mpq_class s = 2;
  int half = rank / 2;
  if (rank % 2 == 1) {
    for (int k = 1; k <= half; ++k) s *= 1 - qpow(p, -2 * k);
  } else {
    for (int k = 1; k < half; ++k) s *= 1 - qpow(p, -2 * k);
    // character of Q(sqrt(D)); the same symbol is used in zeta_D so the
    // Euler factors at bad primes cancel
    i64 D = (half % 2 == 1) ? -det : det;
    int chi = 1;
    if (D <= 0) throw std::invalid_argument("standard_factor: D must be positive");
    if (!is_square(D)) chi = kronecker(fundamental_discriminant(D), p);
    s *= 1 - chi * qpow(p, -half);
  }
  return 1 / s;
}

i64 fundamental_discriminant(i64 n) {
  if (n <= 0 || is_square(n)) throw std::invalid_argument("fundamental_discriminant: need a positive non-square");
  i64 s = squarefree_part(n);
  return mod(s, 4) == 1 ? s : 4 * s;
}

mpq_class bernoulli2_chi(i64 f) {
  mpq_class sum = 0;
  for (i64 a = 1; a <= f; ++a) {
    int c = kronecker(f, a);
    if (c == 0) continue;
    mpq_class x(a, f);
    x.canonicalize();
    sum += c * (x * x - x + mpq_class(1, 6));
  }
  return f * sum;
}

MassReport total_mass_report(const GramLattice& l) {
  const int n = l.rank();
  if (n != 3 && n != 4) throw std::invalid_argument("total_mass: rank 3 or 4 only");
  const i64 d = discriminant(l);
  MassReport r;
  MassValue prod(1);
  for (i64 p : bad_primes(l)) {
    MassValue mp = local_mass(l, p);
    r.local.push_back({p, mp});
    prod = prod * mp / MassValue(standard_factor(n, d, p));
  }
  if (n == 3) {
    r.branch = "rank3";
    r.mass = prod * MassValue(mpq_class(1, 6));
  } else if (is_square(d)) {
    // pi^-4 zeta(2)^2
    r.branch = "rank4-square";
    r.mass = prod * MassValue(mpq_class(1, 36));
  } else {
    // pi^-4 zeta(2) L(2, chi_f) with L(2, chi_f) = pi^2 B / f^(3/2)
    r.branch = "rank4-character";
    i64 f = fundamental_discriminant(d);
    r.mass = prod * MassValue(bernoulli2_chi(f) / (6 * mpq_class(f) * f), f);
  }
  if (!r.mass.rational()) throw std::logic_error("total_mass: irrational result " + r.mass.str());
  return r;
}

MassValue total_mass(const GramLattice& l) { return total_mass_report(l).mass; }

MassValue spinor_mass(const GramLattice& l, int g) {
  if (g <= 0) throw std::invalid_argument("spinor_mass: g must be positive");
  return total_mass(l) / MassValue(mpq_class(g));
}

MassValue mass_lower_bound(i64 q, int k, int l, int m, bool n_even) {
  MassValue v = half_power(q, 3 * m + l - k);
  mpq_class c;
  if (n_even) {
    mpq_class t = 1 - qpow(q, -2);
    c = t * t / (512 * 3 * 5);
  } else {
    c = (1 - qpow(q, -4)) / (256 * 9 * 5);
  }
  return v * MassValue(c);
}

int bound_exponent_threshold(i64 q, bool n_even) {
  // smallest E with bound > 1, minus one; the bound is increasing in E
  for (int e = 0; e < 200; ++e)
    if (mass_lower_bound(q, 0, e, 0, n_even).compare(1) > 0) return e - 1;
  throw std::logic_error("bound_exponent_threshold: not found");
}

}  // namespace quadlat
