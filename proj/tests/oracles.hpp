#pragma once

// Independent reference implementations used only by tests. Nothing here
// calls into the sieve, the Miller-Rabin code or the polynomial code.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

inline std::vector<std::pair<std::uint64_t, unsigned>> trial_factor(__int128 n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  unsigned __int128 m = n < 0 ? -n : n;
  for (std::uint64_t p = 2; (unsigned __int128)p * p <= m; ++p) {
    if (m % p) continue;
    unsigned e = 0;
    while (m % p == 0) m /= p, ++e;
    out.push_back({p, e});
  }
  if (m > 1) out.push_back({(std::uint64_t)m, 1});
  return out;
}

struct Parity {
  int mu, liouville, omega_sign;
  bool operator==(const Parity&) const = default;
};

inline Parity parity(__int128 n) {
  auto f = trial_factor(n);
  unsigned big = 0;
  bool sqf = true;
  for (auto& [p, e] : f) big += e, sqf = sqf && e == 1;
  int os = f.size() % 2 ? -1 : 1;
  return {sqf ? os : 0, big % 2 ? -1 : 1, os};
}

// Smallest prime factor table for [0, n].
inline std::vector<std::uint32_t> spf_table(std::uint32_t n) {
  std::vector<std::uint32_t> spf(n + 1, 0);
  for (std::uint32_t i = 2; i <= n; ++i)
    if (!spf[i])
      for (std::uint64_t j = i; j <= n; j += i)
        if (!spf[j]) spf[j] = i;
  return spf;
}

inline Parity parity_spf(std::uint32_t n, const std::vector<std::uint32_t>& spf) {
  unsigned omega = 0, big = 0;
  bool sqf = true;
  while (n > 1) {
    std::uint32_t p = spf[n];
    unsigned e = 0;
    while (n % p == 0) n /= p, ++e;
    ++omega, big += e;
    if (e > 1) sqf = false;
  }
  int os = omega % 2 ? -1 : 1;
  return {sqf ? os : 0, big % 2 ? -1 : 1, os};
}

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Exhaustive roots of c0 + c1 t + c2 t^2 + c3 t^3 mod p.
inline std::vector<std::int64_t> roots_mod(const std::vector<std::int64_t>& c, std::int64_t p) {
  std::vector<std::int64_t> r;
  for (std::int64_t t = 0; t < p; ++t) {
    __int128 v = 0;
    for (int i = (int)c.size() - 1; i >= 0; --i) v = v * t + c[i];
    if (((v % p) + p) % p == 0) r.push_back(t);
  }
  return r;
}

// Multiplicity of root r of c mod p, by repeated synthetic division.
inline int root_multiplicity(std::vector<std::int64_t> c, std::int64_t r, std::int64_t p) {
  int m = 0;
  for (auto& v : c) v = ((v % p) + p) % p;
  while (c.size() > 1) {
    std::vector<std::int64_t> q(c.size() - 1);
    std::int64_t acc = 0;
    for (int i = (int)c.size() - 1; i >= 1; --i) {
      acc = (acc * r + c[i]) % p;
      q[i - 1] = acc;
    }
    if ((acc * r + c[0]) % p != 0) break;
    c = q;
    ++m;
  }
  return m;
}

}  // namespace oracle
