#include "quadlat/matrix.hpp"

#include <sstream>

namespace quadlat {

Mat::Mat(std::initializer_list<std::initializer_list<i64>> rows) {
  r_ = static_cast<int>(rows.size());
  c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c_) throw std::invalid_argument("ragged matrix");
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<i64>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<i64> Mat::row(int i) const {
  return std::vector<i64>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
}

void Mat::set_row(int i, const std::vector<i64>& v) {
  for (int j = 0; j < c_; ++j) (*this)(i, j) = v[j];
}

void Mat::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void Mat::swap_cols(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void Mat::add_row(int i, int j, i64 k) {
  if (k == 0) return;
  for (int t = 0; t < c_; ++t) (*this)(i, t) = checked_add((*this)(i, t), checked_mul(k, (*this)(j, t)));
}

void Mat::add_col(int i, int j, i64 k) {
  if (k == 0) return;
  for (int t = 0; t < r_; ++t) (*this)(t, i) = checked_add((*this)(t, i), checked_mul(k, (*this)(t, j)));
}

Mat Mat::transpose() const {
  Mat t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("matrix shape mismatch");
  Mat p(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < o.c_; ++j) {
      i128 s = 0;
      for (int k = 0; k < c_; ++k) s += static_cast<i128>((*this)(i, k)) * o(k, j);
      p(i, j) = narrow(s);
    }
  return p;
}

std::vector<std::vector<i64>> Mat::to_rows() const {
  std::vector<std::vector<i64>> out;
  for (int i = 0; i < r_; ++i) out.push_back(row(i));
  return out;
}

std::string Mat::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < r_; ++i) {
    if (i) os << ',';
    os << '[';
    for (int j = 0; j < c_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

i128 det(const Mat& m) {
  int n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("det of non-square matrix");
  if (n == 0) return 1;
  std::vector<i128> a(static_cast<size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  i128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k * n + k] == 0) {
      int s = k + 1;
      while (s < n && a[s * n + k] == 0) ++s;
      if (s == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[s * n + j]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
    prev = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

Mat hnf_rows(const Mat& gens) {
  Mat a = gens;
  int rows = a.rows(), cols = a.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    while (true) {
      int piv = -1;
      for (int i = r; i < rows; ++i)
        if (a(i, c) != 0 && (piv < 0 || iabs(a(i, c)) < iabs(a(piv, c)))) piv = i;
      if (piv < 0) break;
      a.swap_rows(r, piv);
      bool done = true;
      for (int i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        a.add_row(i, r, -(a(i, c) / a(r, c)));
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (int j = 0; j < cols; ++j) a(r, j) = -a(r, j);
    for (int i = 0; i < r; ++i) a.add_row(i, r, -floor_div(a(i, c), a(r, c)));
    ++r;
  }
  Mat out(r, cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

Smith smith(const Mat& a0) {
  int n = a0.rows();
  if (n != a0.cols()) throw std::invalid_argument("smith of non-square matrix");
  Smith s{a0, Mat::identity(n), Mat::identity(n), Mat::identity(n)};
  Mat& a = s.D;
  auto col_add = [&](int i, int j, i64 k) {  // col_i += k col_j
    a.add_col(i, j, k);
    s.V.add_col(i, j, k);
    s.Vinv.add_row(j, i, -k);
  };
  auto col_swap = [&](int i, int j) {
    a.swap_cols(i, j);
    s.V.swap_cols(i, j);
    s.Vinv.swap_rows(i, j);
  };
  auto row_add = [&](int i, int j, i64 k) {
    a.add_row(i, j, k);
    s.U.add_row(i, j, k);
  };
  auto row_swap = [&](int i, int j) {
    a.swap_rows(i, j);
    s.U.swap_rows(i, j);
  };
  for (int k = 0; k < n; ++k) {
    while (true) {
      int pi = -1, pj = -1;
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j)
          if (a(i, j) != 0 && (pi < 0 || iabs(a(i, j)) < iabs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) return s;
      row_swap(k, pi);
      col_swap(k, pj);
      bool clean = true;
      for (int i = k + 1; i < n; ++i) {
        row_add(i, k, -(a(i, k) / a(k, k)));
        if (a(i, k) != 0) clean = false;
      }
      for (int j = k + 1; j < n; ++j) {
        col_add(j, k, -(a(k, j) / a(k, k)));
        if (a(k, j) != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = k + 1; i < n && bad < 0; ++i)
        for (int j = k + 1; j < n; ++j)
          if (a(i, j) % a(k, k) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_add(k, bad, 1);
    }
    if (a(k, k) < 0) {
      for (int j = 0; j < n; ++j) {
        a(k, j) = -a(k, j);
        s.U(k, j) = -s.U(k, j);
      }
    }
  }
  return s;
}

Mat congruent(const Mat& b, const Mat& g) { return b * g * b.transpose(); }

Mat adjugate(const Mat& a) {
  int n = a.rows();
  Mat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat minor(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = a(r, c);
        }
        ++rr;
      }
      i64 v = narrow(det(minor));
      adj(i, j) = ((i + j) % 2 == 0) ? v : -v;
    }
  return adj;
}

i64 content(const Mat& m) {
  i64 g = 0;
  for (i64 x : m.data()) g = gcd(g, x);
  return g;
}

}  // namespace quadlat
