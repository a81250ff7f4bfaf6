#include <gtest/gtest.h>

#include <random>

#include "chowla/arith.hpp"
#include "chowla/poly_mod.hpp"
#include "oracles.hpp"

using namespace chowla;

TEST(Arith, PrimalityMatchesTrialDivisionBelowOneMillion) {
  for (std::uint64_t n = 0; n < 1000000; ++n) ASSERT_EQ(is_prime(n), oracle::is_prime_trial(n)) << n;
}

TEST(Arith, StrongPseudoprimesRejected) {
  // strong pseudoprimes to the smaller base sets
  for (std::uint64_t n : {2047ULL, 1373653ULL, 25326001ULL, 3215031751ULL, 2152302898747ULL, 3474749660383ULL,
                          341550071728321ULL, 3825123056546413051ULL})
    EXPECT_FALSE(is_prime(n)) << n;
  EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_TRUE(is_prime(1000000007ULL));
  EXPECT_FALSE(is_prime(1000000007ULL * 998244353ULL));
}

TEST(Arith, PollardSplitsSemiprimes) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    std::uint64_t p, q;
    do p = rng() % 4000000000ULL + 3; while (!oracle::is_prime_trial(p));
    do q = rng() % 4000000000ULL + 3; while (!oracle::is_prime_trial(q));
    const std::uint64_t n = p * q;
    const std::uint64_t d = pollard_brent(n);
    EXPECT_TRUE(d == p || d == q) << n;
  }
}

TEST(Arith, IntegerRoots) {
  for (std::uint64_t n = 0; n < 20000; ++n) {
    const auto s = isqrt(n);
    ASSERT_TRUE(s * s <= n && (s + 1) * (s + 1) > n);
    const auto c = icbrt_ceil(n);
    ASSERT_TRUE(u128(c) * c * c >= n);
    ASSERT_TRUE(c == 0 || u128(c - 1) * (c - 1) * (c - 1) < n);
  }
  EXPECT_EQ(icbrt_ceil(u128(1000000) * 1000000 * 1000000), 1000000u);
  EXPECT_EQ(icbrt_ceil(u128(1000000) * 1000000 * 1000000 + 1), 1000001u);
  EXPECT_EQ(isqrt(std::uint64_t(-1)), 4294967295u);
}

TEST(Arith, CheckedArithmeticThrows) {
  const i128 big = i128(1) << 100;
  EXPECT_THROW(checked_mul(big, big), range_error);
  EXPECT_THROW(checked_add(((i128(1) << 126) - 1) * 2 + 1, 1), range_error);
  EXPECT_EQ(to_string(checked_mul(i128(-3), i128(7))), "-21");
}

TEST(Arith, ModularHelpers) {
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(pos_mod(-7, 5), 3);
  for (std::int64_t a = 1; a < 97; ++a) EXPECT_EQ(a * inv_mod(a, 97) % 97, 1);
  EXPECT_THROW(inv_mod(6, 9), invalid_input);
}

TEST(PolyMod, RootsMatchExhaustiveSearch) {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 31ULL, 101ULL, 65537ULL, 1000003ULL}) {
    for (int trial = 0; trial < (p > 100000 ? 3 : 30); ++trial) {
      std::vector<std::int64_t> c{(std::int64_t)(rng() % 2001) - 1000, (std::int64_t)(rng() % 2001) - 1000,
                                  (std::int64_t)(rng() % 2001) - 1000, 1};
      auto r = fp::roots(fp::reduce(c, p), p);
      auto o = oracle::roots_mod(c, (std::int64_t)p);
      ASSERT_EQ(r.size(), o.size()) << p;
      for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ((std::int64_t)r[i], o[i]);
    }
  }
}

TEST(PolyMod, FactorSmallDegreesSumToThree) {
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 31ULL, 97ULL}) {
    for (std::int64_t d = -20; d <= 20; ++d) {
      std::vector<std::int64_t> c{d, 3, -1, 1};
      const auto fs = fp::factor_small(fp::reduce(c, p), p);
      int total = 0;
      for (const auto& fe : fs) {
        total += fp::degree(fe.factor) * fe.multiplicity;
        if (fp::degree(fe.factor) == 1) {
          const auto r = (std::int64_t)((p - fe.factor[0]) % p);
          EXPECT_EQ(fe.multiplicity, oracle::root_multiplicity(c, r, (std::int64_t)p));
        }
      }
      EXPECT_EQ(total, 3);
    }
  }
}

TEST(PolyMod, CubePlusTwoModFive) {
  // t^3 + 2 = (t - 2)(t^2 + 2t + 4) mod 5
  const auto fs = fp::factor_small(fp::reduce({2, 0, 0, 1}, 5), 5);
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(fs[0].factor, (fp::poly{3, 1}));
  EXPECT_EQ(fs[1].factor, (fp::poly{4, 2, 1}));
}
