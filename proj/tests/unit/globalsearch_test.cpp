#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "generators.hpp"
#include "hasse/globalsearch.hpp"
#include "oracles.hpp"

namespace hasse {
namespace {

using testing::Gen;

std::vector<std::pair<i64, i64>> as_pairs(const std::vector<GlobalSolution>& sols) {
  std::vector<std::pair<i64, i64>> out;
  for (const auto& s : sols) out.emplace_back(s.point[0], s.point[1]);
  return out;
}

TEST(HeightBound, Examples) {
  EXPECT_EQ(height_bound(4, 100, 1.0).B, 10);
  EXPECT_EQ(height_bound(3, 50, 2.0).B, 100);
  EXPECT_EQ(height_bound(6, 1'000'000, 1.0).B, 32);
  EXPECT_EQ(height_bound(5, 8, 1.0).B, 2);
  EXPECT_EQ(height_bound(4, 1, 4.0).B, 4);
  EXPECT_EQ(fermat_height_bound(5, 10, 1.0).B, 10);
  EXPECT_EQ(fermat_height_bound(3, 10, 2.0).B, 20);
}

TEST(HeightBound, MonotoneAndAtLeastOne) {
  for (int k = 3; k <= 8; ++k) {
    i64 previous = 0;
    for (i64 H = 1; H <= 2000; H += 7) {
      const i64 B = height_bound(k, H, 1.0).B;
      ASSERT_GE(B, 1);
      ASSERT_GE(B, previous);
      ASSERT_GE(static_cast<double>(B) + 1e-9, std::pow(static_cast<double>(H), 1.0 / (k - 2)));
      previous = B;
    }
  }
}

TEST(ThueSolutions, Examples) {
  EXPECT_EQ(as_pairs(thue_solutions({1, 1, 3}, 10)),
            (std::vector<std::pair<i64, i64>>{{0, 1}, {1, 0}}));
  EXPECT_EQ(as_pairs(thue_solutions({3, 4, 3}, 10)), (std::vector<std::pair<i64, i64>>{{-1, 1}}));
  EXPECT_TRUE(thue_solutions({2, 151, 3}, 100).empty());
  EXPECT_TRUE(thue_solutions({1, 1, 3}, 0).empty());
}

TEST(ThueSolutions, MatchesDoubleLoop) {
  Gen gen(41);
  for (int i = 0; i < 200; ++i) {
    const int k = static_cast<int>(gen.uniform(3, 4));
    // Small coefficients rarely have solutions; bias towards ones that do.
    i64 a = gen.nonzero(20), b = gen.nonzero(20);
    if (gen.uniform(0, 3) == 0) {
      const i64 x = gen.uniform(-3, 3), y = gen.uniform(-3, 3);
      const auto line = pairs_on_line(x == 0 && y == 0 ? 1 : x, y, k, 20);
      if (!line.empty()) std::tie(a, b) = gen.pick(line);
    }
    const i64 B = gen.uniform(0, 30);
    const auto found = thue_solutions({a, b, k}, B);
    ASSERT_EQ(as_pairs(found), testing::brute_thue_points(a, b, k, B)) << a << " " << b << " " << k;
    for (const auto& s : found) {
      const Equation expected = ThueEquation{a, b, k};
      ASSERT_EQ(s.equation, expected);
    }
  }
}

TEST(PairsOnLine, Examples) {
  EXPECT_EQ(pairs_on_line(1, 2, 3, 10), (std::vector<std::pair<i64, i64>>{{-7, 1}, {9, -1}}));
  EXPECT_TRUE(pairs_on_line(2, 2, 3, 10).empty());
  const auto free_b = pairs_on_line(1, 0, 3, 10);
  EXPECT_EQ(free_b.size(), 20u);
  for (const auto& [a, b] : free_b) EXPECT_EQ(a, 1);
}

TEST(PairsOnLine, MatchesEnumeration) {
  Gen gen(42);
  for (int i = 0; i < 200; ++i) {
    const int k = static_cast<int>(gen.uniform(3, 5));
    const i64 x = gen.uniform(-6, 6), y = gen.uniform(-6, 6);
    if (x == 0 && y == 0) continue;
    const i64 H = gen.uniform(1, 60);
    std::vector<std::pair<i64, i64>> expected;
    for (i64 a = -H; a <= H; ++a) {
      for (i64 b = -H; b <= H; ++b) {
        if (a == 0 || b == 0) continue;
        if (a * testing::ipow(x, k) + b * testing::ipow(y, k) == 1) expected.emplace_back(a, b);
      }
    }
    ASSERT_EQ(pairs_on_line(x, y, k, H), expected) << x << " " << y << " " << k << " " << H;
  }
}

// The coefficient-major and solution-major views give the same set.
TEST(Duality, EquationAndSolutionViewsCoincide) {
  for (int k : {3, 4}) {
    for (i64 H : {5, 12, 25}) {
      const i64 B = height_bound(k, H, 1.0).B;
      std::set<std::pair<i64, i64>> by_equation, by_solution;
      for (i64 a = -H; a <= H; ++a) {
        for (i64 b = -H; b <= H; ++b) {
          if (a != 0 && b != 0 && !thue_solutions({a, b, k}, B).empty()) by_equation.insert({a, b});
        }
      }
      for (i64 x = -B; x <= B; ++x) {
        for (i64 y = -B; y <= B; ++y) {
          if (x == 0 && y == 0) continue;
          for (const auto& ab : pairs_on_line(x, y, k, H)) by_solution.insert(ab);
        }
      }
      ASSERT_EQ(by_equation, by_solution) << "k=" << k << " H=" << H;
    }
  }
}

TEST(Lattice, Examples) {
  const CoefficientLattice l1 = coefficient_lattice(1, 1, 1, 3);
  EXPECT_NEAR(l1.determinant, std::sqrt(3.0), 1e-12);
  for (const auto& v : l1.basis) EXPECT_EQ(v[0] + v[1] + v[2], 0);

  const CoefficientLattice l2 = coefficient_lattice(1, 0, 0, 5);
  EXPECT_NEAR(l2.determinant, 1.0, 1e-12);
  for (const auto& v : l2.basis) EXPECT_EQ(v[0], 0);

  const auto box = lattice_points_in_box(coefficient_lattice(1, 1, 1, 6), 2, true);
  const std::vector<std::array<i64, 3>> expected{{-2, 1, 1}, {-1, -1, 2}, {-1, 2, -1},
                                                 {1, -2, 1},  {1, 1, -2},  {2, -1, -1}};
  EXPECT_EQ(box, expected);
  EXPECT_THROW(coefficient_lattice(0, 0, 0, 3), std::invalid_argument);
}

TEST(Lattice, BasisGeneratesTheSolutionLatticeAndBoxIsComplete) {
  Gen gen(43);
  int tested = 0;
  while (tested < 120) {
    const i64 x = gen.uniform(-5, 5), y = gen.uniform(-5, 5), z = gen.uniform(-5, 5);
    if (testing::ogcd(testing::ogcd(x, y), z) != 1) continue;
    const int k = static_cast<int>(gen.uniform(3, 5));
    const i64 H = gen.uniform(1, 20);
    const CoefficientLattice lattice = coefficient_lattice(x, y, z, k);
    const i128 X = testing::ipow(x, k), Y = testing::ipow(y, k), Z = testing::ipow(z, k);
    for (const auto& v : lattice.basis) ASSERT_EQ(v[0] * X + v[1] * Y + v[2] * Z, 0);
    const double largest = static_cast<double>(std::max({X < 0 ? -X : X, Y < 0 ? -Y : Y, Z < 0 ? -Z : Z}));
    ASSERT_GE(lattice.determinant + 1e-9, largest);
    const bool nonzero_only = gen.coin();
    ASSERT_EQ(lattice_points_in_box(lattice, H, nonzero_only),
              testing::brute_lattice_box(x, y, z, k, H, nonzero_only))
        << x << " " << y << " " << z << " k=" << k << " H=" << H;
    ++tested;
  }
}

TEST(FermatSolutions, Examples) {
  bool has_110 = false;
  for (const auto& s : fermat_solutions({1, -1, 1, 3}, 2)) {
    has_110 = has_110 || s.point == std::vector<i64>{1, 1, 0};
  }
  EXPECT_TRUE(has_110);
  EXPECT_TRUE(fermat_solutions({3, 4, 5, 3}, 100).empty());
  const auto six = fermat_solutions({1, 1, -1, 6}, 3);
  ASSERT_EQ(six.size(), 2u);
  EXPECT_EQ(six[0].point, (std::vector<i64>{0, 1, 1}));
  EXPECT_EQ(six[1].point, (std::vector<i64>{1, 0, 1}));
}

TEST(FermatSolutions, MatchesTripleLoop) {
  Gen gen(44);
  for (int i = 0; i < 60; ++i) {
    const int k = static_cast<int>(gen.uniform(3, 4));
    const i64 a = gen.nonzero(9), b = gen.nonzero(9), c = gen.nonzero(9);
    const i64 B = gen.uniform(1, 12);
    std::set<std::vector<i64>> expected;
    for (i64 x = -B; x <= B; ++x) {
      for (i64 y = -B; y <= B; ++y) {
        for (i64 z = -B; z <= B; ++z) {
          if ((x == 0 && y == 0 && z == 0) || testing::ogcd(testing::ogcd(x, y), z) != 1) continue;
          if (a * testing::ipow(x, k) + b * testing::ipow(y, k) + c * testing::ipow(z, k) != 0) continue;
          std::vector<i64> v{x, y, z};
          if (k % 2 == 0) {
            for (i64& t : v) t = t < 0 ? -t : t;
          } else {
            const i64 lead = x != 0 ? x : (y != 0 ? y : z);
            if (lead < 0) {
              for (i64& t : v) t = -t;
            }
          }
          expected.insert(v);
        }
      }
    }
    std::set<std::vector<i64>> got;
    for (const auto& s : fermat_solutions({a, b, c, k}, B)) {
      ASSERT_TRUE(s.primitive);
      ASSERT_TRUE(got.insert(s.point).second) << "duplicate representative";
    }
    ASSERT_EQ(got, expected) << a << " " << b << " " << c << " k=" << k << " B=" << B;
  }
}

TEST(AbcQuality, Examples) {
  const AbcTriple t1 = abc_quality(1, 8, -9);
  EXPECT_EQ(t1.radical_value, 6);
  EXPECT_NEAR(t1.quality, std::log(9.0) / std::log(6.0), 1e-12);
  const AbcTriple t2 = abc_quality(3, 125, -128);
  EXPECT_EQ(t2.radical_value, 30);
  EXPECT_NEAR(t2.quality, 1.4266, 1e-4);
  EXPECT_NEAR(abc_quality(1, 1, -2).quality, 1.0, 1e-12);
  const AbcTriple reduced = abc_quality(3, 24, -27);
  EXPECT_EQ(reduced.u, 1);
  EXPECT_EQ(reduced.w, -9);
  EXPECT_THROW(abc_quality(0, 1, -1), std::invalid_argument);
  EXPECT_THROW(abc_quality(1, 1, 1), std::invalid_argument);
}

TEST(AbcQuality, FoundThueSolutionsGiveFinitePositiveQuality) {
  for (i64 a = -12; a <= 12; ++a) {
    for (i64 b = -12; b <= 12; ++b) {
      if (a == 0 || b == 0) continue;
      for (const auto& s : thue_solutions({a, b, 3}, 12)) {
        const i64 u = a * s.point[0] * s.point[0] * s.point[0];
        const i64 v = b * s.point[1] * s.point[1] * s.point[1];
        if (u == 0 || v == 0) continue;
        const AbcTriple t = abc_quality(u, v, -1);
        ASSERT_TRUE(std::isfinite(t.quality));
        ASSERT_GT(t.quality, 0.0);
        ASSERT_EQ(t.u + t.v + t.w, 0);
      }
    }
  }
}

}  // namespace
}  // namespace hasse
