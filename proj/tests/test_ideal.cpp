#include <gtest/gtest.h>

#include <random>
#include <set>

#include "chowla/ideal.hpp"
#include "oracles.hpp"

using namespace chowla;

namespace {

const CubicField& K2() {
  static const CubicField K(parse_form("1,0,0,2"));
  return K;
}

PrimeIdeal P(std::uint64_t p, std::int64_t r) { return PrimeIdeal{p, r, 1, 1}; }

}  // namespace

TEST(Field, Build) {
  const auto& K = K2();
  EXPECT_EQ(K.min_poly(), (std::vector<std::int64_t>{2, 0, 0, 1}));
  EXPECT_EQ(K.discriminant(), -108);
  EXPECT_TRUE(K.index_bound().empty());
  EXPECT_EQ(compute_D0(K), 6u);
  EXPECT_THROW(build_field(parse_form("1,0,0,-1")), invalid_input);
  EXPECT_THROW(build_field(parse_form("2,0,0,1")), invalid_input);

  const auto D = build_field(parse_form("1,1,-2,8"));
  EXPECT_EQ(D.discriminant(), -2012);
  EXPECT_EQ(D.index_bound(), (std::vector<std::uint64_t>{2}));
  EXPECT_THROW(D.factor_prime(2), unsupported);
  EXPECT_EQ(compute_D0(D), 2u * 503u);

  const auto C = build_field(parse_form("1,0,-3,1"));
  EXPECT_EQ(C.discriminant(), 81);
  EXPECT_TRUE(C.index_bound().empty());  // Z[θ] is 3-maximal
  EXPECT_EQ(compute_D0(C), 3u);
}

TEST(Field, FactorPrime) {
  const auto& K = K2();
  const auto f5 = K.factor_prime(5);
  ASSERT_EQ(f5.size(), 2u);
  EXPECT_EQ(f5[0].f, 1);
  EXPECT_EQ(f5[0].root, 2);
  EXPECT_EQ(f5[1].f, 2);
  EXPECT_EQ(f5[1].e, 1);
  const auto f3 = K.factor_prime(3);
  ASSERT_EQ(f3.size(), 1u);
  EXPECT_EQ(f3[0].e, 3);
  EXPECT_EQ(f3[0].root, 1);
  const auto f31 = K.factor_prime(31);
  const auto o31 = oracle::roots_mod({2, 0, 0, 1}, 31);
  std::size_t linear = 0;
  for (const auto& q : f31)
    if (q.f == 1) ++linear;
  EXPECT_EQ(linear, o31.size());
}

TEST(Field, DedekindCompleteness) {
  for (const char* lit : {"1,0,0,2", "1,0,-3,1", "1,1,-2,8", "1,2,3,5", "1,-1,-1,-1", "1,0,0,-12"}) {
    const auto K = build_field(parse_form(lit));
    for (auto p : primes_up_to(400)) {
      if (K.in_index_bound(p)) continue;
      int sum = 0;
      for (const auto& q : K.factor_prime(p)) {
        sum += q.e * q.f;
        if (q.f == 1) EXPECT_EQ(q.e, oracle::root_multiplicity(K.min_poly(), q.root, (std::int64_t)p));
      }
      EXPECT_EQ(sum, 3) << lit << " p=" << p;
    }
  }
}

TEST(Ideal, FromPointExamples) {
  const auto& K = K2();
  EXPECT_TRUE(K.ideal_from_point(1, -1).is_unit());
  const auto a = K.ideal_from_point(1, 1);
  ASSERT_EQ(a.factors().size(), 1u);
  EXPECT_EQ(a.factors()[0].first.p, 3u);
  EXPECT_EQ(a.factors()[0].first.e, 3);
  EXPECT_EQ(a.norm(), 3u);
  const auto b = K.ideal_from_point(1, 2);
  ASSERT_EQ(b.factors().size(), 1u);
  EXPECT_EQ(b.factors()[0].first, P(17, 9));
  EXPECT_EQ((9 * 9 * 9 + 2) % 17, 0);
  EXPECT_THROW(K.ideal_from_point(2, 4), invalid_input);
  EXPECT_THROW(K.ideal_from_point(0, 0), invalid_input);
}

TEST(Ideal, NormAndD0LawOnThreeFields) {
  for (const char* lit : {"1,0,0,2", "1,0,-3,1", "1,1,-2,8"}) {
    const auto K = build_field(parse_form(lit));
    const std::uint64_t D0 = K.D0();
    int admissible = 0;
    for (std::int64_t x = -40; x <= 40; ++x)
      for (std::int64_t y = -40; y <= 40; ++y) {
        if (std::gcd(std::abs(x), std::abs(y)) != 1) continue;
        const auto v = K.form()(x, y);
        auto fac = oracle::trial_factor(v);
        bool bad = false;
        for (auto [p, e] : fac) bad = bad || K.in_index_bound(p);
        if (bad) {
          EXPECT_THROW(K.ideal_from_point(x, y), unsupported);
          continue;
        }
        ++admissible;
        const auto I = K.ideal_from_point(x, y);
        ASSERT_EQ(I.norm(), (u128)abs128(v));
        for (const auto& [q, k] : I.factors()) {
          if (D0 % q.p) ASSERT_EQ(q.f, 1);
          ASSERT_EQ(K.valuation(q, x, y), k);
        }
      }
    EXPECT_GT(admissible, 1000);
  }
}

TEST(Ideal, ValuationOfNonPrimitivePoints) {
  const auto& K = K2();
  const auto p3 = K.factor_prime(3)[0];
  EXPECT_EQ(K.valuation(p3, 3, 0), 3u);  // (3) = P^3
  EXPECT_EQ(K.valuation(p3, 3, 3), 3u + 1u);
  const auto p5 = K.factor_prime(5);
  EXPECT_EQ(K.valuation(p5[1], 5, 10), 1u);  // degree-2 prime divides (5) once
  EXPECT_EQ(K.valuation(p5[1], 1, 2), 0u);
}

TEST(Ideal, ArithmeticFunctions) {
  const Ideal one;
  EXPECT_EQ(one.norm(), 1u);
  EXPECT_EQ(one.tau(), 1u);
  EXPECT_EQ(one.omega(), 0u);
  EXPECT_EQ(one.mu(), 1);
  EXPECT_EQ(one.rad(), one);
  const auto p = Ideal::prime(P(5, 3)), q = Ideal::prime(P(7, 2));
  const auto p2 = p * p;
  EXPECT_EQ(p2.tau(), 3u);
  EXPECT_EQ(p2.mu(), 0);
  EXPECT_EQ(p2.rad(), p);
  EXPECT_EQ((p * q).tau(), 4u);
  EXPECT_EQ((p * q).omega(), 2u);
  EXPECT_EQ((p * q).mu(), 1);
  EXPECT_EQ((p2 * q).norm(), 175u);
  EXPECT_EQ((p2 * q).quotient(p), p * q);
  EXPECT_THROW(p.quotient(q), invalid_input);
}

TEST(Ideal, SplitS) {
  const auto p = Ideal::prime(P(5, 3)), q = Ideal::prime(P(7, 2));
  const auto a = p * p * q;
  EXPECT_EQ(split_S(a, {}), std::make_pair(Ideal(), a));
  EXPECT_EQ(split_S(a, {P(5, 3), P(7, 2), P(11, 1)}), std::make_pair(a, Ideal()));
  EXPECT_EQ(split_S(a, {P(5, 3)}), std::make_pair(p * p, q));
}

TEST(Ideal, Divisors) {
  const auto p = Ideal::prime(P(5, 3)), q = Ideal::prime(P(7, 2));
  EXPECT_EQ(divisors(Ideal()), std::vector<Ideal>{Ideal()});
  const auto d = divisors(p * p);
  EXPECT_EQ(std::set<Ideal>(d.begin(), d.end()), (std::set<Ideal>{Ideal(), p, p * p}));
  EXPECT_EQ(divisors(p * q).size(), 4u);
  std::vector<Ideal::Factor> many;
  for (std::uint64_t i = 0; i < 17; ++i) many.push_back({P(1000 + i, 1), 1});
  EXPECT_THROW(divisors(Ideal(many)), range_error);
}

TEST(Ideal, MultiplicativityProperties) {
  std::mt19937_64 rng(9);
  const auto primes = primes_up_to(60);
  auto random_ideal = [&](std::size_t lo, std::size_t hi) {
    std::vector<Ideal::Factor> fs;
    for (std::size_t i = lo; i < hi; ++i)
      if (rng() % 2) fs.push_back({P(primes[i], (std::int64_t)(rng() % 2)), (std::uint32_t)(rng() % 2) + 1});
    return Ideal(fs);
  };
  for (int i = 0; i < 500; ++i) {
    const auto a = random_ideal(0, 5), b = random_ideal(5, 10);
    ASSERT_TRUE(a.coprime_to(b));
    EXPECT_EQ((a * b).mu(), a.mu() * b.mu());
    EXPECT_EQ((a * b).tau(), a.tau() * b.tau());
    EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
    const auto ds = divisors(a * b);
    EXPECT_EQ(ds.size(), (a * b).tau());
    EXPECT_EQ(std::set<Ideal>(ds.begin(), ds.end()).size(), ds.size());
    for (const auto& d : ds) ASSERT_TRUE(d.divides(a * b));
  }
}
