#include <gtest/gtest.h>

#include <random>

#include "chowla/sieve_weights.hpp"
#include "gen.hpp"

using namespace chowla;

namespace {
PrimeIdeal P(std::uint64_t p, std::int64_t r = 1) { return PrimeIdeal{p, r, 1, 1}; }
}  // namespace

TEST(Brun, Examples) {
  auto W = brun_pure_weights({}, 100, 2);
  EXPECT_EQ(W.weights().size(), 1u);
  EXPECT_EQ(W.weight(Ideal()), 1);
  W = brun_pure_weights({P(5)}, 100, 2);
  EXPECT_EQ(W.weight(Ideal::prime(P(5))), -1);
  EXPECT_EQ(W.weights().size(), 2u);
  W = brun_pure_weights({P(5), P(7)}, 100, 0);
  EXPECT_EQ(W.weights().size(), 1u);
  W = brun_pure_weights({P(5), P(7), P(11)}, 1000, 2);
  EXPECT_EQ(W.weight(Ideal::prime(P(5)) * Ideal::prime(P(7))), 1);
  EXPECT_EQ(W.weight(Ideal::prime(P(5)) * Ideal::prime(P(7)) * Ideal::prime(P(11))), 0);
  EXPECT_THROW(brun_pure_weights({P(5)}, 100, 3), invalid_input);
  EXPECT_EQ(default_brun_depth(1e6), 8);  // 2 loglog 1e6 + 2 = 7.25
}

TEST(Brun, SieveValueExamples) {
  const auto W = brun_pure_weights({P(5), P(7)}, 1000, 2);
  EXPECT_EQ(sieve_value(W, Ideal::prime(P(11))), 1);
  EXPECT_EQ(sieve_value(W, Ideal::prime(P(5))), 0);
  EXPECT_EQ(sieve_value(W, Ideal::prime(P(5), 3) * Ideal::prime(P(7))), 0);
}

TEST(Brun, UpperBoundPropertyAtEvenDepth) {
  std::mt19937_64 rng(21);
  const auto pool = gen::prime_pool(40);
  for (int i = 0; i < 400; ++i) {
    const auto Pset = gen::random_subset(rng, pool, 0.5);
    const int depth = 2 * (int)(rng() % 4);
    const auto W = brun_pure_weights(Pset, 1e30, depth);  // no norm truncation
    ASSERT_TRUE(W.support_ok());
    const auto b = gen::random_ideal(rng, pool, 12, 2, 1u << 20);
    const auto v = sieve_value(W, b);
    EXPECT_GE(v, coprime_to_set(b, Pset) ? 1 : 0) << b.literal() << " depth " << depth;
    if (coprime_to_set(b, Pset)) EXPECT_EQ(v, 1);
  }
}

TEST(Brun, SupportIsExhaustivelyClean) {
  std::mt19937_64 rng(22);
  const auto pool = gen::prime_pool(40);
  for (int i = 0; i < 50; ++i) {
    const auto Pset = gen::random_subset(rng, pool, 0.4);
    const double cut = double(rng() % 100000) + 2;
    const auto W = brun_pure_weights(Pset, cut, 2 * (int)(rng() % 4));
    EXPECT_TRUE(W.support_ok());
    for (const auto& [d, v] : W.weights()) {
      EXPECT_LE((int)d.omega(), W.depth);
      EXPECT_EQ(v, d.mu());
    }
  }
}

TEST(Buchstab, Examples) {
  const Rational lo(4), hi(100);
  const auto W = brun_pure_weights({P(5), P(7), P(11)}, 100, 2);
  auto r = buchstab_split(W, Ideal::prime(P(13)), lo, hi);
  EXPECT_EQ(r.main, 1);
  EXPECT_EQ(r.tail, 0);
  r = buchstab_split(W, Ideal::prime(P(5)), lo, hi);
  EXPECT_EQ(r.main, 0);
  EXPECT_EQ(r.tail, -1);
  EXPECT_TRUE(r.holds());
  EXPECT_THROW(buchstab_split(W, Ideal::prime(P(5)), Rational(6), hi), invalid_input);
  EXPECT_THROW(buchstab_split(W, Ideal::prime(P(5)), lo, Rational(50)), invalid_input);
}

TEST(Buchstab, Randomized) {
  std::mt19937_64 rng(23);
  const auto pool = gen::prime_pool(60);
  for (int i = 0; i < 500; ++i) {
    const std::int64_t lo = 1 + (std::int64_t)(rng() % 30), hi = lo + 1 + (std::int64_t)(rng() % 5000);
    std::vector<PrimeIdeal> Pset;
    for (const auto& p : gen::random_subset(rng, pool, 0.5))
      if ((std::int64_t)p.norm() > lo) Pset.push_back(p);
    const auto W = brun_pure_weights(Pset, double(hi), 2 * (1 + (int)(rng() % 3)));
    const auto b = gen::random_ideal(rng, pool, 10, 3, 1u << 16);
    const auto r = buchstab_split(W, b, Rational(lo), Rational(hi));
    ASSERT_TRUE(r.holds()) << b.literal();
  }
}

TEST(AntiSieve, ZeroTable) {
  const auto W = brun_integer_weights(4, 100, 100, 2);
  const auto r = anti_sieve_split({}, 100, 0.5, 2, W);
  EXPECT_EQ(r.total, 0);
  EXPECT_EQ(r.sieved, 0);
  EXPECT_EQ(r.correction, 0);
  EXPECT_TRUE(r.holds());
}

TEST(AntiSieve, AllOnesSmall) {
  // x = 100, alpha = 1/2, Y = 2: window 5 < a < 20
  PairTable F;
  for (std::uint64_t a = 1; a <= 100; ++a)
    for (std::uint64_t b = 1; a * b <= 100; ++b) F[{a, b}] = 1;
  const auto W = brun_integer_weights(4, 100, 100, 2);
  const auto r = anti_sieve_split(F, 100, 0.5, 2, W);
  std::int64_t direct = 0;
  for (std::uint64_t a = 6; a < 20; ++a) direct += 100 / a;
  EXPECT_EQ(r.total, direct);
  EXPECT_TRUE(r.holds());
  EXPECT_THROW(anti_sieve_split(F, 100, 0.5, 2, brun_integer_weights(2, 100, 100, 2)), invalid_input);
}

TEST(AntiSieve, SingleEntry) {
  PairTable F{{{6, 4}, 5}};
  IntegerWeights W;
  W.w[1] = 1;
  W.w[5] = -1;
  W.w[6] = 7;
  const auto r = anti_sieve_split(F, 100, 0.5, 2, W);
  // a = 6: divisors 1,2,3,6 carry weights 1,0,0,7
  EXPECT_EQ(r.total, 5);
  EXPECT_EQ(r.sieved, 8 * 5);
  EXPECT_EQ(r.correction, 7 * 5);
  EXPECT_EQ(r.substituted, 7 * 5);  // a' = 1, d = 6, b' = 24
  EXPECT_TRUE(r.holds());
}

TEST(AntiSieve, RandomSparseTables) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t x = 1000 + rng() % 3000;
    const double alpha = 0.3 + 0.4 * double(rng() % 100) / 100, Y = 1.5 + double(rng() % 30) / 10;
    PairTable F;
    for (int k = 0; k < 300; ++k) {
      const std::uint64_t a = 1 + rng() % 200, b = 1 + rng() % (x / a);
      F[{a, b}] = (std::int64_t)(rng() % 21) - 10;
    }
    const auto W = brun_integer_weights((std::uint64_t)(Y * Y), 400, x, 4);
    const auto r = anti_sieve_split(F, x, alpha, Y, W);
    EXPECT_TRUE(r.identity());
    EXPECT_TRUE(r.substitution());
  }
}
