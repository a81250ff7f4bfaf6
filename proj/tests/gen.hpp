#pragma once

// Random ideals over a synthetic pool of prime ideals. The identities under
// test hold in any free commutative monoid with a multiplicative norm, so the
// pool mixes degree-1 and degree-2 primes and several primes above one p.

#include <random>
#include <vector>

#include "chowla/ideal.hpp"

namespace gen {

inline std::vector<chowla::PrimeIdeal> prime_pool(std::size_t n) {
  std::vector<chowla::PrimeIdeal> pool;
  for (auto p : chowla::primes_up_to(2000)) {
    pool.push_back({p, 1, 1, 1});
    if (p % 3 == 1) pool.push_back({p, 2, 1, 1});
    if (p % 5 == 2 && p < 60) pool.push_back({p, -1, 2, 1});
    if (pool.size() >= n) break;
  }
  pool.resize(n);
  return pool;
}

// An ideal with at most max_primes distinct factors, exponents up to
// max_exp, and tau below tau_cap.
inline chowla::Ideal random_ideal(std::mt19937_64& rng, const std::vector<chowla::PrimeIdeal>& pool,
                                  std::size_t max_primes, std::uint32_t max_exp, std::uint64_t tau_cap = 4096) {
  std::vector<chowla::Ideal::Factor> fs;
  const std::size_t k = rng() % (max_primes + 1);
  std::uint64_t tau = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& p = pool[rng() % pool.size()];
    bool dup = false;
    for (auto& f : fs) dup = dup || f.first == p;
    if (dup) continue;
    const std::uint32_t e = 1 + static_cast<std::uint32_t>(rng() % max_exp);
    if (tau * (e + 1) > tau_cap) break;
    tau *= e + 1;
    fs.push_back({p, e});
  }
  return chowla::Ideal(fs);
}

inline std::vector<chowla::PrimeIdeal> random_subset(std::mt19937_64& rng, const std::vector<chowla::PrimeIdeal>& pool,
                                                      double prob) {
  std::vector<chowla::PrimeIdeal> s;
  std::bernoulli_distribution b(prob);
  for (const auto& p : pool)
    if (b(rng)) s.push_back(p);
  return s;
}

}  // namespace gen
