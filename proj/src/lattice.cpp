#include "quadlat/lattice.hpp"

#include "json.hpp"

namespace quadlat {

namespace {

Mat leading_minor(const Mat& g, int k) {
  Mat m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = g(i, j);
  return m;
}

}  // namespace

bool is_positive_definite(const Mat& g) {
  for (int k = 1; k <= g.rows(); ++k)
    if (det(leading_minor(g, k)) <= 0) return false;
  return true;
}

GramLattice::GramLattice(Mat gram) : gram_(std::move(gram)) {
  int n = gram_.rows();
  if (n != gram_.cols() || n == 0) throw std::invalid_argument("Gram matrix must be square and non-empty");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (gram_(i, j) != gram_(j, i)) throw std::invalid_argument("Gram matrix is not symmetric");
  if (!is_positive_definite(gram_)) throw std::invalid_argument("Gram matrix is not positive definite");
}

int cross_index(int n, int i, int j) {
  int idx = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (a == i && b == j) return idx;
      ++idx;
    }
  throw std::out_of_range("cross_index");
}

i64 ClassicalForm::cross_at(int i, int j) const {
  if (i > j) std::swap(i, j);
  return cross[static_cast<size_t>(cross_index(rank, i, j))];
}

// Rank 3 uses the sextuple order [a,b,c,yz,xz,xy] of the ternary tables;
// other ranks list crosses as (1,2),(1,3),...
std::vector<i64> ClassicalForm::coeffs() const {
  if (rank == 3) return ternary_sextuple();
  std::vector<i64> c = diag;
  c.insert(c.end(), cross.begin(), cross.end());
  return c;
}

ClassicalForm ClassicalForm::from_coeffs(int rank, const std::vector<i64>& c) {
  if (static_cast<int>(c.size()) != rank * (rank + 1) / 2)
    throw std::invalid_argument("wrong number of form coefficients");
  if (rank == 3) return from_ternary_sextuple(c);
  ClassicalForm f;
  f.rank = rank;
  f.diag.assign(c.begin(), c.begin() + rank);
  f.cross.assign(c.begin() + rank, c.end());
  return f;
}

ClassicalForm ClassicalForm::from_ternary_sextuple(const std::vector<i64>& s) {
  if (s.size() != 6) throw std::invalid_argument("ternary sextuple needs 6 entries");
  ClassicalForm f;
  f.rank = 3;
  f.diag = {s[0], s[1], s[2]};
  f.cross = {s[5], s[4], s[3]};
  return f;
}

std::vector<i64> ClassicalForm::ternary_sextuple() const {
  if (rank != 3) throw std::invalid_argument("not a ternary form");
  return {diag[0], diag[1], diag[2], cross[2], cross[1], cross[0]};
}

bool ClassicalForm::primitive() const {
  i64 g = 0;
  for (i64 x : diag) g = gcd(g, x);
  for (i64 x : cross) g = gcd(g, x);
  return g == 1;
}

Mat ClassicalForm::second_partials() const {
  Mat f(rank, rank);
  for (int i = 0; i < rank; ++i) {
    f(i, i) = checked_mul(2, diag[i]);
    for (int j = i + 1; j < rank; ++j) f(i, j) = f(j, i) = cross_at(i, j);
  }
  return f;
}

i64 discriminant(const GramLattice& l) { return narrow(det(l.gram())); }

i64 form_discriminant(const ClassicalForm& f) { return narrow(det(f.second_partials())); }

GramLattice form_to_lattice(const ClassicalForm& f) {
  if (!f.primitive()) throw std::invalid_argument("form is not primitive");
  Mat F = f.second_partials();
  bool odd_cross = false;
  for (i64 c : f.cross)
    if (c % 2 != 0) odd_cross = true;
  if (odd_cross) return GramLattice(F);
  Mat g(f.rank, f.rank);
  for (int i = 0; i < f.rank; ++i)
    for (int j = 0; j < f.rank; ++j) g(i, j) = F(i, j) / 2;
  return GramLattice(g);
}

ClassicalForm lattice_to_form(const GramLattice& l) {
  int n = l.rank();
  const Mat& g = l.gram();
  bool even_diag = true, odd_off = false;
  for (int i = 0; i < n; ++i) {
    if (g(i, i) % 2 != 0) even_diag = false;
    for (int j = i + 1; j < n; ++j)
      if (g(i, j) % 2 != 0) odd_off = true;
  }
  ClassicalForm f;
  f.rank = n;
  bool halve = even_diag && odd_off;
  for (int i = 0; i < n; ++i) f.diag.push_back(halve ? g(i, i) / 2 : g(i, i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) f.cross.push_back(halve ? g(i, j) : checked_mul(2, g(i, j)));
  return f;
}

IdealExponents scale_norm(const GramLattice& l, i64 p) {
  int n = l.rank();
  int s = kInfiniteValuation, nn = kInfiniteValuation;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int v = valuation(l(i, j), p);
      s = std::min(s, v);
      if (i == j)
        nn = std::min(nn, v);
      else if (l(i, j) != 0)
        nn = std::min(nn, v + (p == 2 ? 1 : 0));
    }
  return {p, s, nn};
}

GramLattice rescale(const GramLattice& l, i64 num, i64 den) {
  if (den == 0 || num == 0) throw std::invalid_argument("rescale by zero");
  i64 g = gcd(num, den);
  num /= g;
  den /= g;
  i64 n2 = checked_mul(num, num), d2 = checked_mul(den, den);
  int n = l.rank();
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      i64 v = checked_mul(l(i, j), n2);
      if (v % d2 != 0) throw std::invalid_argument("rescaled lattice is not integral");
      m(i, j) = v / d2;
    }
  return GramLattice(m);
}

i64 scale_content(const GramLattice& l) { return content(l.gram()); }

i64 norm_content(const GramLattice& l) {
  i64 g = 0;
  for (int i = 0; i < l.rank(); ++i)
    for (int j = i; j < l.rank(); ++j) g = gcd(g, i == j ? l(i, i) : checked_mul(2, l(i, j)));
  return g;
}

bool is_primitive(const GramLattice& l) { return scale_content(l) == 1; }

GramLattice parse_gram(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("cannot parse Gram matrix: ") + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("Gram matrix must be a JSON array of arrays");
  return GramLattice(Mat::from_rows(j.get<std::vector<std::vector<i64>>>()));
}

ClassicalForm parse_form(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("form must look like 'rank: [coeffs]'");
  std::string body = text.substr(colon + 1);
  auto hash = body.find('#');
  if (hash != std::string::npos) body = body.substr(0, hash);
  int rank = std::stoi(text.substr(0, colon));
  std::vector<i64> c;
  try {
    c = nlohmann::json::parse(body).get<std::vector<i64>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("cannot parse form coefficients: ") + e.what());
  }
  return ClassicalForm::from_coeffs(rank, c);
}

}  // namespace quadlat
