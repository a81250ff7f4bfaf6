#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "chowla/region_lattice.hpp"

using namespace chowla;

namespace {

// Brute-force membership: solve basis * (u,v) = p - offset over Q.
bool member_oracle(std::int64_t b11, std::int64_t b21, std::int64_t b12, std::int64_t b22, std::int64_t ox,
                   std::int64_t oy, std::int64_t x, std::int64_t y) {
  const std::int64_t det = b11 * b22 - b12 * b21;
  const std::int64_t dx = x - ox, dy = y - oy;
  const std::int64_t u = b22 * dx - b12 * dy, v = -b21 * dx + b11 * dy;
  return u % det == 0 && v % det == 0;
}

std::uint64_t brute_count(const ConvexRegion& S, const LatticeCoset& L, std::int64_t n) {
  std::uint64_t c = 0;
  for (std::int64_t x = -n; x <= n; ++x)
    for (std::int64_t y = -n; y <= n; ++y)
      if (S.contains(double(x), double(y)) && L.contains(x, y)) ++c;
  return c;
}

}  // namespace

TEST(Lattice, Index) {
  EXPECT_EQ(coset_index(LatticeCoset::whole_plane()), 1);
  EXPECT_EQ(coset_index(LatticeCoset(1, 1, 1, -1, 1, 0)), 2);  // x + y even
  EXPECT_EQ(coset_index(LatticeCoset(3, 0, 1, 2)), 6);
  EXPECT_THROW(LatticeCoset(1, 2, 2, 4), invalid_input);
}

TEST(Lattice, MembershipMatchesRationalSolve) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    std::int64_t b[4];
    do
      for (auto& v : b) v = (std::int64_t)(rng() % 13) - 6;
    while (b[0] * b[3] - b[2] * b[1] == 0);
    const std::int64_t ox = (std::int64_t)(rng() % 21) - 10, oy = (std::int64_t)(rng() % 21) - 10;
    const LatticeCoset L(b[0], b[1], b[2], b[3], ox, oy);
    EXPECT_EQ(L.index(), std::abs(b[0] * b[3] - b[2] * b[1]));
    for (std::int64_t x = -15; x <= 15; ++x)
      for (std::int64_t y = -15; y <= 15; ++y)
        ASSERT_EQ(L.contains(x, y), member_oracle(b[0], b[1], b[2], b[3], ox, oy, x, y));
  }
}

TEST(Lattice, ParseAndLiteralRoundTrip) {
  const auto L = parse_coset("coset:3,0,1,2;1,1");
  EXPECT_EQ(L.index(), 6);
  EXPECT_EQ(parse_coset(L.literal()), L);
  EXPECT_EQ(parse_coset("Z2"), LatticeCoset::whole_plane());
  EXPECT_THROW(parse_coset("coset:1,2,3"), invalid_input);
  EXPECT_THROW(parse_coset("lattice:1,0,0,1"), invalid_input);
}

TEST(Lattice, IntersectCoprimeIndices) {
  const auto Z2 = LatticeCoset::whole_plane();
  const LatticeCoset even_x(2, 0, 0, 1);
  const LatticeCoset sum3(3, 0, -1, 1);  // x + y ≡ 0 mod 3
  EXPECT_EQ(intersect_cosets(Z2, sum3), sum3);
  const auto I = intersect_cosets(even_x, sum3);
  EXPECT_EQ(I.index(), 6);
  for (std::int64_t x = 0; x < 6; ++x)
    for (std::int64_t y = 0; y < 6; ++y) EXPECT_EQ(I.contains(x, y), x % 2 == 0 && (x + y) % 3 == 0);
  EXPECT_THROW(intersect_cosets(LatticeCoset(2, 0, 0, 1), LatticeCoset(4, 0, 0, 1)), unsupported);
}

TEST(Lattice, IntersectionMembershipProperty) {
  std::mt19937_64 rng(2);
  int tested = 0;
  while (tested < 60) {
    std::int64_t a[4], b[4];
    for (auto& v : a) v = (std::int64_t)(rng() % 9) - 4;
    for (auto& v : b) v = (std::int64_t)(rng() % 9) - 4;
    const std::int64_t da = std::abs(a[0] * a[3] - a[2] * a[1]), db = std::abs(b[0] * b[3] - b[2] * b[1]);
    if (!da || !db || std::gcd(da, db) != 1) continue;
    const LatticeCoset L1(a[0], a[1], a[2], a[3], (std::int64_t)(rng() % 7), (std::int64_t)(rng() % 7));
    const LatticeCoset L2(b[0], b[1], b[2], b[3], (std::int64_t)(rng() % 7), (std::int64_t)(rng() % 7));
    const auto I = intersect_cosets(L1, L2);
    EXPECT_EQ(I.index(), da * db);
    for (std::int64_t x = -30; x < 30; ++x)
      for (std::int64_t y = -30; y < 30; ++y) ASSERT_EQ(I.contains(x, y), L1.contains(x, y) && L2.contains(x, y));
    ++tested;
  }
}

TEST(Region, ParseAndArea) {
  EXPECT_DOUBLE_EQ(area(parse_region("box:0,10,0,10")), 100.0);
  EXPECT_NEAR(area(parse_region("poly:0,0;4,0;0,3")), 6.0, 1e-12);
  EXPECT_NEAR(area(parse_region("disc:0,0,2")), 4 * std::numbers::pi, 1e-12);
  EXPECT_THROW(parse_region("poly:0,0;0,3;4,0"), invalid_input);  // clockwise
  EXPECT_THROW(parse_region("poly:0,0;1,0;2,0;0,1"), invalid_input);  // collinear vertices
  EXPECT_THROW(parse_region("star:1"), invalid_input);
  const auto S = parse_region("poly:0,0;4,0;0,3");
  EXPECT_EQ(parse_region(S.literal()).literal(), S.literal());
  EXPECT_DOUBLE_EQ(parse_region("box:-3,5,-2,1").half_width(), 5.0);
}

TEST(Region, CountPoints) {
  const auto box = parse_region("box:0,10,0,10");
  EXPECT_EQ(count_points(box, LatticeCoset::whole_plane()), 121u);
  EXPECT_EQ(count_points(box, LatticeCoset(1, 1, 1, -1)), 61u);
  EXPECT_EQ(count_points(ConvexRegion::empty(), LatticeCoset::whole_plane()), 0u);
  EXPECT_EQ(count_points(parse_region("disc:0,0,1.5"), LatticeCoset::whole_plane()), 9u);
}

TEST(Region, CountMatchesBruteForce) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-12, 12);
  for (int i = 0; i < 80; ++i) {
    const LatticeCoset L((std::int64_t)(rng() % 4) + 1, 0, (std::int64_t)(rng() % 5), (std::int64_t)(rng() % 3) + 1,
                         (std::int64_t)(rng() % 5), (std::int64_t)(rng() % 5));
    std::vector<ConvexRegion> regions;
    double x0 = u(rng), x1 = u(rng), y0 = u(rng), y1 = u(rng);
    regions.push_back(ConvexRegion::box(std::min(x0, x1), std::max(x0, x1), std::min(y0, y1), std::max(y0, y1)));
    regions.push_back(ConvexRegion::disc(u(rng) / 3, u(rng) / 3, std::abs(u(rng)) / 1.5));
    // triangle, oriented counterclockwise
    double ax = u(rng), ay = u(rng), bx = u(rng), by = u(rng), cx = u(rng), cy = u(rng);
    const double cr = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    if (std::abs(cr) > 1e-3) {
      if (cr < 0) std::swap(bx, cx), std::swap(by, cy);
      regions.push_back(ConvexRegion::polygon({{ax, ay}, {bx, by}, {cx, cy}}));
    }
    for (const auto& S : regions) EXPECT_EQ(count_points(S, L), brute_count(S, L, 14)) << S.literal();
  }
}

TEST(Region, PointCountLaw) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 60; ++i) {
    const double n = 20 + double(rng() % 200);
    const LatticeCoset L((std::int64_t)(rng() % 5) + 1, 0, (std::int64_t)(rng() % 7), (std::int64_t)(rng() % 4) + 1,
                         (std::int64_t)(rng() % 9), (std::int64_t)(rng() % 9));
    std::vector<ConvexRegion> regions = {ConvexRegion::square(n), ConvexRegion::disc(0.3, -0.2, n * 0.97),
                                         ConvexRegion::polygon({{-n, -n}, {n, -n / 3}, {n / 2, n}, {-n, n / 2}})};
    for (const auto& S : regions) {
      const double N = S.half_width();
      const double err = std::abs(double(count_points(S, L)) - S.area() / double(L.index()));
      EXPECT_LE(err, 8 * (N + 1)) << S.literal() << " " << L.literal();
    }
  }
}

TEST(Region, CoprimePoints) {
  const auto Z2 = LatticeCoset::whole_plane();
  EXPECT_EQ(enumerate_coprime_points(parse_region("box:1,4,1,4"), Z2).size(), 11u);
  EXPECT_TRUE(enumerate_coprime_points(parse_region("box:0,0,0,0"), Z2).empty());
  const auto d = enumerate_coprime_points(parse_region("disc:0,0,1.5"), Z2);
  EXPECT_EQ(std::set(d.begin(), d.end()),
            (std::set<std::pair<std::int64_t, std::int64_t>>{
                {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}));
}

TEST(Region, CoprimeSplitRecoversCount) {
  const auto S = parse_region("poly:-30,-25;28,-30;31,20;-10,33");
  const LatticeCoset L(2, 1, 1, 3, 1, 0);
  std::uint64_t coprime = 0, rest = 0;
  for_each_point(S, L, false, [&](std::int64_t x, std::int64_t y) { (coprime_point(x, y) ? coprime : rest)++; });
  EXPECT_EQ(coprime + rest, count_points(S, L));
  EXPECT_EQ(enumerate_coprime_points(S, L).size(), coprime);
  for (auto [x, y] : enumerate_coprime_points(S, L)) EXPECT_TRUE(L.contains(x, y) && S.contains(x, y));
}
