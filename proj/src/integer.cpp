#include "quadlat/integer.hpp"

#include <algorithm>

namespace quadlat {

i64 gcd(i64 a, i64 b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 xgcd(i64 a, i64 b, i64& x, i64& y) {
  i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 floor_div128(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 inv_mod(i64 a, i64 m) {
  i64 x, y;
  i64 g = xgcd(mod(a, m), m, x, y);
  if (g != 1) throw std::domain_error("inv_mod: not invertible");
  return mod(x, m);
}

i64 ipow(i64 base, unsigned exp) {
  i64 r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

int valuation(i64 a, i64 p) {
  if (a == 0) return kInfiniteValuation;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

int valuation128(i128 a, i64 p) {
  if (a == 0) return kInfiniteValuation;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

i64 unit_part(i64 a, i64 p) {
  if (a == 0) return 0;
  while (a % p == 0) a /= p;
  return a;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

i64 next_prime(i64 n) {
  i64 c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> out;
  n = iabs(n);
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

int legendre(i64 a, i64 p) {
  a = mod(a, p);
  if (a == 0) return 0;
  // Euler's criterion by fast exponentiation in 128-bit.
  i128 result = 1, base = a;
  i64 e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = (result * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

i64 isqrt(i64 n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  i64 r = 0;
  i64 lo = 0, hi = std::min<i64>(n, 3037000499LL);
  while (lo <= hi) {
    i64 mid = lo + (hi - lo) / 2;
    if (mid * mid <= n) {
      r = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return r;
}

bool is_square(i64 n) {
  if (n < 0) return false;
  i64 r = isqrt(n);
  return r * r == n;
}

i64 squarefree_part(i64 n) {
  i64 out = 1;
  for (i64 p : prime_divisors(n))
    if (valuation(n, p) % 2 == 1) out *= p;
  return out;
}

std::string to_string128(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  if (neg) v = -v;
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace quadlat
