#pragma once

// Exact integer helpers: 128-bit checked arithmetic, modular arithmetic,
// deterministic primality, semiprime splitting and small-prime tables.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "chowla/error.hpp"

namespace chowla {

using i128 = __int128;
using u128 = unsigned __int128;

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  u128 u = neg ? u128(-(v + 1)) + 1 : u128(v);
  std::string s;
  while (u > 0) {
    s.push_back(char('0' + int(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(char('0' + int(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw range_error("128-bit multiplication overflow");
  return r;
}

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw range_error("128-bit addition overflow");
  return r;
}

inline u128 checked_mul(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw range_error("128-bit multiplication overflow");
  return r;
}

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Floor and ceiling division for signed operands, divisor > 0.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Extended gcd: returns g and sets x, y with a*x + b*y = g >= 0.
inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
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

// Inverse of a modulo m; requires gcd(a, m) = 1.
inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t x, y;
  std::int64_t g = ext_gcd(pos_mod(a, m), m, x, y);
  if (g != 1) throw invalid_input("inv_mod: not invertible");
  return pos_mod(x, m);
}

inline std::uint64_t isqrt(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline u128 isqrt(u128 n) {
  if (n == 0) return 0;
  u128 r = static_cast<u128>(__builtin_sqrtl(static_cast<long double>(n)));
  auto sq_gt = [&](u128 v) { return v != 0 && v > n / v; };  // v*v > n
  while (sq_gt(r)) --r;
  while (!sq_gt(r + 1)) ++r;
  return r;
}

// Smallest z with z^3 >= n.
inline std::uint64_t icbrt_ceil(u128 n) {
  if (n == 0) return 0;
  auto r = static_cast<std::uint64_t>(__builtin_cbrtl(static_cast<long double>(n)));
  auto cube = [](std::uint64_t v) { return u128(v) * v * v; };
  while (r > 0 && cube(r - 1) >= n) --r;
  while (cube(r) < n) ++r;
  return r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(u128(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  if (m < (1ULL << 32)) {
    while (e) {
      if (e & 1) r = r * a % m;
      a = a * a % m;
      e >>= 1;
    }
    return r;
  }
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

namespace detail {

inline bool mr_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
  a %= n;
  if (a == 0) return false;
  std::uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace detail

// Deterministic Miller-Rabin for all 64-bit n. Base sets are the minimal
// known-correct ones for each range.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 37 * 37) return true;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto run = [&](std::initializer_list<std::uint64_t> bases) {
    for (auto a : bases)
      if (detail::mr_witness(n, a, d, s)) return false;
    return true;
  };
  if (n < 2047ULL) return run({2});
  if (n < 1373653ULL) return run({2, 3});
  if (n < 25326001ULL) return run({2, 3, 5});
  if (n < 3215031751ULL) return run({2, 3, 5, 7});
  if (n < 2152302898747ULL) return run({2, 3, 5, 7, 11});
  if (n < 3474749660383ULL) return run({2, 3, 5, 7, 11, 13});
  if (n < 341550071728321ULL) return run({2, 3, 5, 7, 11, 13, 17});
  return run({2, 325, 9375, 28178, 450775, 9780504, 1795265022});
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of an odd
// composite n; deterministic given n.
inline std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

// Primes up to limit by the sieve of Eratosthenes.
inline std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

inline std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace chowla
