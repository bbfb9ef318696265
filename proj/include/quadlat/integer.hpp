#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadlat {

using i64 = std::int64_t;
using i128 = __int128;

/// Raised when an exact computation would leave the range of the
/// fixed-width integers used for Gram matrices.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer addition overflow");
  return r;
}

inline i64 checked_sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer subtraction overflow");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer multiplication overflow");
  return r;
}

/// Narrow a 128-bit intermediate, throwing if it does not fit.
inline i64 narrow(i128 v) {
  if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
    throw OverflowError("128-bit intermediate does not fit in 64 bits");
  return static_cast<i64>(v);
}

inline i64 iabs(i64 a) { return a < 0 ? -a : a; }

i64 gcd(i64 a, i64 b);
i128 gcd128(i128 a, i128 b);

/// Extended gcd: returns g = gcd(a,b) >= 0 and sets x, y with a*x + b*y = g.
i64 xgcd(i64 a, i64 b, i64& x, i64& y);

/// Floor division and non-negative remainder.
i64 floor_div(i64 a, i64 b);
i64 mod(i64 a, i64 m);
i128 floor_div128(i128 a, i128 b);

/// Inverse of a modulo m; throws std::domain_error if not invertible.
i64 inv_mod(i64 a, i64 m);

i64 ipow(i64 base, unsigned exp);

/// p-adic valuation; v_p(0) is reported as a large sentinel.
constexpr int kInfiniteValuation = 1 << 20;
int valuation(i64 a, i64 p);
int valuation128(i128 a, i64 p);

/// a / p^{v_p(a)}
i64 unit_part(i64 a, i64 p);

bool is_prime(i64 n);
i64 next_prime(i64 n);

/// Sorted distinct prime divisors of |n| (n != 0).
std::vector<i64> prime_divisors(i64 n);

/// Legendre symbol (a|p) for odd prime p; returns 0 when p | a.
int legendre(i64 a, i64 p);

/// Largest r with r*r <= n (n >= 0).
i64 isqrt(i64 n);
bool is_square(i64 n);

/// Square-free part of a positive integer.
i64 squarefree_part(i64 n);

std::string to_string128(i128 v);

}  // namespace quadlat
