#pragma once

// Dense polynomials over F_p (p prime, p < 2^32), coefficients stored
// low degree first. Enough machinery to find roots and to factor a cubic.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "chowla/arith.hpp"

namespace chowla::fp {

using coeff = std::uint64_t;
using poly = std::vector<coeff>;

inline void trim(poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const poly& f) { return static_cast<int>(f.size()) - 1; }

inline poly reduce(const std::vector<std::int64_t>& c, coeff p) {
  poly f(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    f[i] = static_cast<coeff>(pos_mod(c[i] % static_cast<std::int64_t>(p), static_cast<std::int64_t>(p)));
  trim(f);
  return f;
}

inline coeff eval(const poly& f, coeff x, coeff p) {
  coeff r = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = (r * x + *it) % p;
  return r;
}

inline poly sub(poly a, const poly& b, coeff p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline poly mul(const poly& a, const poly& b, coeff p) {
  if (a.empty() || b.empty()) return {};
  poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

// a = q*b + r with deg r < deg b. b must be nonzero.
inline void divmod(poly a, const poly& b, coeff p, poly& q, poly& r) {
  trim(a);
  const int db = degree(b);
  const coeff inv_lead = static_cast<coeff>(inv_mod(static_cast<std::int64_t>(b.back()), static_cast<std::int64_t>(p)));
  q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const coeff c = a.back() * inv_lead % p;
    q[shift] = c;
    for (int i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + p - c * b[i] % p) % p;
    trim(a);
  }
  trim(q);
  r = a;
}

inline poly mod(const poly& a, const poly& b, coeff p) {
  poly q, r;
  divmod(a, b, p, q, r);
  return r;
}

inline poly monic(poly f, coeff p) {
  trim(f);
  if (f.empty()) return f;
  const coeff inv = static_cast<coeff>(inv_mod(static_cast<std::int64_t>(f.back()), static_cast<std::int64_t>(p)));
  for (auto& c : f) c = c * inv % p;
  return f;
}

inline poly gcd(poly a, poly b, coeff p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

// base^e mod m
inline poly powmod(poly base, std::uint64_t e, const poly& m, coeff p) {
  poly r{1};
  base = mod(base, m, p);
  while (e) {
    if (e & 1) r = mod(mul(r, base, p), m, p);
    base = mod(mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

namespace detail {

// Splits a monic squarefree product of distinct linear factors.
inline void split_linear(const poly& h, coeff p, std::mt19937_64& rng, std::vector<coeff>& out) {
  if (degree(h) <= 0) return;
  if (degree(h) == 1) {
    out.push_back((p - h[0]) % p);
    return;
  }
  std::uniform_int_distribution<coeff> pick(0, p - 1);
  while (true) {
    poly t{pick(rng), 1};
    poly s = powmod(t, (p - 1) / 2, h, p);
    s = sub(s, poly{1}, p);
    poly g = gcd(h, s, p);
    if (degree(g) > 0 && degree(g) < degree(h)) {
      poly q, r;
      divmod(h, g, p, q, r);
      split_linear(g, p, rng, out);
      split_linear(monic(q, p), p, rng, out);
      return;
    }
  }
}

}  // namespace detail

// Distinct roots of f in F_p, ascending. f must be nonzero mod p.
// Exhaustive search for small p, Cantor-Zassenhaus above.
inline std::vector<coeff> roots(const poly& f_in, coeff p) {
  poly f = f_in;
  trim(f);
  std::vector<coeff> out;
  if (degree(f) <= 0) return out;
  if (p < (1u << 16)) {
    for (coeff x = 0; x < p; ++x)
      if (eval(f, x, p) == 0) out.push_back(x);
    return out;
  }
  f = monic(f, p);
  poly xp = powmod(poly{0, 1}, p, f, p);
  poly h = gcd(f, sub(xp, poly{0, 1}, p), p);
  std::mt19937_64 rng(p);
  detail::split_linear(h, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

struct factor_entry {
  poly factor;       // monic irreducible
  int multiplicity;  // >= 1
};

// Factorization of a polynomial of degree <= 3 into monic irreducibles.
// Linear factors come first, ordered by root; at most one irreducible
// factor of degree 2 or 3 can remain.
inline std::vector<factor_entry> factor_small(const poly& f_in, coeff p) {
  poly f = monic(f_in, p);
  std::vector<factor_entry> out;
  for (coeff r : roots(f, p)) {
    poly lin{(p - r) % p, 1};
    int m = 0;
    while (true) {
      poly q, rem;
      divmod(f, lin, p, q, rem);
      if (!rem.empty()) break;
      f = q;
      ++m;
    }
    out.push_back({lin, m});
  }
  if (degree(f) >= 2) out.push_back({monic(f, p), 1});
  return out;
}

}  // namespace chowla::fp
