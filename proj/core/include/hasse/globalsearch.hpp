#pragma once

// Integer solutions of diagonal Thue and Fermat equations inside explicit
// boxes, the coefficient-side views used by the censuses, and abc quality.
//
// Every bound B produced here is only meaningful under the abc conjecture
// with an assumed constant (the "slack"); results derived from it are
// reported as conditional.

#include <array>
#include <optional>
#include <vector>

#include "hasse/localsolve.hpp"

namespace hasse {

struct HeightBound {
  int k = 3;
  i64 H = 1;
  double slack = 1.0;
  i64 B = 1;
};

/// B = ceil(slack * H^(1/(k-2))).
HeightBound height_bound(int k, i64 H, double slack);

/// B = ceil(slack * H^(2/(k-3))) for the ternary census; k = 3 has no such
/// exponent and falls back to ceil(slack * H).
HeightBound fermat_height_bound(int k, i64 H, double slack);

struct GlobalSolution {
  Equation equation;
  std::vector<i64> point;
  bool primitive = true;
  bool operator==(const GlobalSolution&) const = default;
};

/// All (x, y) with |x|, |y| <= B and a x^k + b y^k = 1, lexicographic.
std::vector<GlobalSolution> thue_solutions(const ThueEquation& eq, i64 B);

/// All (a, b) with 0 < |a|, |b| <= H and a x^k + b y^k = 1, sorted.
std::vector<std::pair<i64, i64>> pairs_on_line(i64 x, i64 y, int k, i64 H);

struct CoefficientLattice {
  std::array<i64, 3> xyz{};
  int k = 3;
  std::array<std::array<i64, 3>, 2> basis{};
  double determinant = 0.0;
};

/// Basis of {(a, b, c) in Z^3 : a x^k + b y^k + c z^k = 0}.
CoefficientLattice coefficient_lattice(i64 x, i64 y, i64 z, int k);

/// Lattice points with every |coordinate| <= H. With nonzero_only, points
/// having a zero coordinate are dropped. Sorted lexicographically.
std::vector<std::array<i64, 3>> lattice_points_in_box(const CoefficientLattice& lattice, i64 H,
                                                      bool nonzero_only);

/// Primitive nonzero (x, y, z) with |x|, |y|, |z| <= B solving the equation.
/// Odd k: one representative per +- pair, first nonzero coordinate positive.
/// Even k: all coordinates nonnegative (signs are invisible to the equation).
std::vector<GlobalSolution> fermat_solutions(const FermatEquation& eq, i64 B);

struct AbcTriple {
  i64 u = 0;
  i64 v = 0;
  i64 w = 0;
  i64 radical_value = 1;
  double quality = 0.0;
};

/// Divides out gcd(u, v, w), then quality = log max|.| / log radical(uvw).
/// Throws std::invalid_argument for a zero entry or a nonzero sum.
AbcTriple abc_quality(i64 u, i64 v, i64 w);

}  // namespace hasse
