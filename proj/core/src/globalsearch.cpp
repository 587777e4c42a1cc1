#include "hasse/globalsearch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hasse {

namespace {

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

// Smallest B >= 1 with B >= slack * H^(num/den), using exact integer
// comparison B^den >= slack^den * H^num whenever slack is integral and the
// powers fit in 128 bits.
i64 ceil_root_bound(i64 H, double slack, int num, int den) {
  const long double estimate =
      static_cast<long double>(slack) *
      std::pow(static_cast<long double>(H), static_cast<long double>(num) / den);
  i64 B = std::max<i64>(1, static_cast<i64>(std::ceil(estimate)));
  if (slack != std::floor(slack) || slack > 1e9) return B;
  const i64 s = static_cast<i64>(slack);
  std::optional<i128> s_pow = pow128(s, den);
  std::optional<i128> h_pow = pow128(H, num);
  if (!s_pow || !h_pow) return B;
  i128 target;
  if (__builtin_mul_overflow(*s_pow, *h_pow, &target)) return B;
  auto reaches = [&](i64 candidate) {
    std::optional<i128> p = pow128(candidate, den);
    return !p || *p >= target;
  };
  while (B > 1 && reaches(B - 1)) --B;
  while (!reaches(B)) ++B;
  return B;
}

void check_bound_args(int k, i64 H, double slack, int min_k) {
  if (k < min_k) throw std::invalid_argument("height bound: degree too small");
  if (H < 1) throw std::invalid_argument("height bound: H >= 1 required");
  if (!(slack >= 1.0)) throw std::invalid_argument("height bound: slack >= 1 required");
}

i128 power_term(i64 coefficient, i64 x, int k) {
  std::optional<i128> p = pow128(x, k);
  i128 out;
  if (!p || __builtin_mul_overflow(*p, static_cast<i128>(coefficient), &out)) {
    throw std::overflow_error("global search: term exceeds 128-bit range");
  }
  return out;
}

std::array<i64, 3> canonical_sign(std::array<i64, 3> v) {
  for (i64 c : v) {
    if (c == 0) continue;
    if (c < 0) {
      for (i64& e : v) e = -e;
    }
    break;
  }
  return v;
}

i128 dot(const std::array<i128, 3>& a, const std::array<i128, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace

HeightBound height_bound(int k, i64 H, double slack) {
  check_bound_args(k, H, slack, 3);
  return {k, H, slack, ceil_root_bound(H, slack, 1, k - 2)};
}

HeightBound fermat_height_bound(int k, i64 H, double slack) {
  check_bound_args(k, H, slack, 3);
  if (k == 3) return {k, H, slack, ceil_root_bound(H, slack, 1, 1)};
  return {k, H, slack, ceil_root_bound(H, slack, 2, k - 3)};
}

std::vector<GlobalSolution> thue_solutions(const ThueEquation& eq, i64 B) {
  eq.validate();
  if (B < 0) throw std::invalid_argument("thue_solutions: B >= 0 required");
  // Iterate the variable with the smaller |coefficient|; solve for the other.
  const bool iterate_x = (eq.a < 0 ? -eq.a : eq.a) <= (eq.b < 0 ? -eq.b : eq.b);
  const i64 free_coeff = iterate_x ? eq.a : eq.b;
  const i64 solved_coeff = iterate_x ? eq.b : eq.a;
  std::vector<GlobalSolution> out;
  for (i64 t = -B; t <= B; ++t) {
    const i128 rest = 1 - power_term(free_coeff, t, eq.k);
    if (rest % solved_coeff != 0) continue;
    std::optional<i128> root = integer_kth_root(rest / solved_coeff, eq.k);
    if (!root || *root > B || *root < -B) continue;
    std::vector<i64> roots{static_cast<i64>(*root)};
    if (eq.k % 2 == 0 && *root != 0) roots.push_back(-static_cast<i64>(*root));
    for (i64 s : roots) {
      std::vector<i64> point = iterate_x ? std::vector<i64>{t, s} : std::vector<i64>{s, t};
      if (power_term(eq.a, point[0], eq.k) + power_term(eq.b, point[1], eq.k) != 1) {
        throw std::logic_error("thue_solutions: emitted point fails the equation");
      }
      out.push_back({eq, std::move(point), true});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const GlobalSolution& l, const GlobalSolution& r) { return l.point < r.point; });
  return out;
}

std::vector<std::pair<i64, i64>> pairs_on_line(i64 x, i64 y, int k, i64 H) {
  if (x == 0 && y == 0) throw std::invalid_argument("pairs_on_line: (x, y) = (0, 0)");
  if (k < 1 || H < 0) throw std::invalid_argument("pairs_on_line: bad k or H");
  std::vector<std::pair<i64, i64>> out;
  const i64 X = checked_pow(x, k);
  const i64 Y = checked_pow(y, k);
  if (Y == 0 || X == 0) {
    // a X = 1 (or b Y = 1) fixes one coefficient; the other is free.
    const i64 fixed = Y == 0 ? X : Y;
    if (fixed != 1 && fixed != -1) return out;
    if (H < 1) return out;
    for (i64 t = -H; t <= H; ++t) {
      if (t == 0) continue;
      out.push_back(Y == 0 ? std::pair{fixed, t} : std::pair{t, fixed});
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  const Egcd e = egcd(X, Y);
  if (e.g != 1) return out;
  // a = u + t Y, b = v - t X.
  auto range = [H](i128 base, i128 step) {
    // t with -H <= base + t * step <= H
    i128 lo = step > 0 ? ceil_div(-H - base, step) : ceil_div(H - base, step);
    i128 hi = step > 0 ? floor_div(H - base, step) : floor_div(-H - base, step);
    return std::pair{lo, hi};
  };
  auto [lo_a, hi_a] = range(e.u, Y);
  auto [lo_b, hi_b] = range(e.v, -static_cast<i128>(X));
  for (i128 t = std::max(lo_a, lo_b); t <= std::min(hi_a, hi_b); ++t) {
    const i64 a = static_cast<i64>(e.u + t * Y);
    const i64 b = static_cast<i64>(e.v - t * X);
    if (a == 0 || b == 0) continue;
    out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CoefficientLattice coefficient_lattice(i64 x, i64 y, i64 z, int k) {
  if (x == 0 && y == 0 && z == 0) throw std::invalid_argument("coefficient_lattice: zero vector");
  if (k < 1) throw std::invalid_argument("coefficient_lattice: k >= 1 required");
  if (std::gcd(std::gcd(x, y), z) != 1) {
    throw std::invalid_argument("coefficient_lattice: (x, y, z) must be primitive");
  }
  CoefficientLattice lat;
  lat.xyz = {x, y, z};
  lat.k = k;
  const i64 X = checked_pow(x, k), Y = checked_pow(y, k), Z = checked_pow(z, k);
  if (X == 0 && Y == 0) {
    lat.basis = {{{1, 0, 0}, {0, 1, 0}}};
  } else {
    const Egcd e = egcd(X, Y);
    i64 uz, vz;
    if (__builtin_mul_overflow(e.u, Z, &uz) || __builtin_mul_overflow(e.v, Z, &vz)) {
      throw std::overflow_error("coefficient_lattice: basis exceeds 64-bit range");
    }
    lat.basis = {{{Y / e.g, -X / e.g, 0}, {uz, vz, -e.g}}};
  }
  for (auto& b : lat.basis) b = canonical_sign(b);
  const long double sq = static_cast<long double>(X) * X + static_cast<long double>(Y) * Y +
                         static_cast<long double>(Z) * Z;
  lat.determinant = static_cast<double>(std::sqrt(sq));
  return lat;
}

std::vector<std::array<i64, 3>> lattice_points_in_box(const CoefficientLattice& lattice, i64 H,
                                                      bool nonzero_only) {
  if (H < 0) throw std::invalid_argument("lattice_points_in_box: H >= 0 required");
  // Lagrange-Gauss reduction of the basis.
  std::array<i128, 3> b1, b2;
  for (int i = 0; i < 3; ++i) {
    b1[i] = lattice.basis[0][i];
    b2[i] = lattice.basis[1][i];
  }
  if (dot(b1, b1) > dot(b2, b2)) std::swap(b1, b2);
  while (true) {
    const i128 n1 = dot(b1, b1);
    const i128 m = floor_div(2 * dot(b1, b2) + n1, 2 * n1);  // round(<b1,b2>/<b1,b1>)
    for (int i = 0; i < 3; ++i) b2[i] -= m * b1[i];
    if (dot(b2, b2) >= n1) break;
    std::swap(b1, b2);
  }
  // Coordinates of P = m b1 + n b2 via the Gram inverse; |P| <= sqrt(3) H.
  const long double g11 = static_cast<long double>(dot(b1, b1));
  const long double g22 = static_cast<long double>(dot(b2, b2));
  const long double g12 = static_cast<long double>(dot(b1, b2));
  const long double det = g11 * g22 - g12 * g12;
  const long double radius = std::sqrt(3.0L) * H;
  const long double l1 = std::sqrt(g11), l2 = std::sqrt(g22);
  const i64 bound_m = static_cast<i64>(radius * (l1 * g22 + l2 * std::fabs(g12)) / det) + 1;
  const i64 bound_n = static_cast<i64>(radius * (l2 * g11 + l1 * std::fabs(g12)) / det) + 1;

  std::vector<std::array<i64, 3>> out;
  for (i64 m = -bound_m; m <= bound_m; ++m) {
    for (i64 n = -bound_n; n <= bound_n; ++n) {
      std::array<i64, 3> p{};
      bool inside = true;
      for (int i = 0; i < 3 && inside; ++i) {
        const i128 c = m * b1[i] + n * b2[i];
        inside = c >= -H && c <= H && !(nonzero_only && c == 0);
        p[i] = static_cast<i64>(c);
      }
      if (inside && (!nonzero_only || p[0] != 0 || p[1] != 0 || p[2] != 0)) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GlobalSolution> fermat_solutions(const FermatEquation& eq, i64 B) {
  eq.validate();
  if (B < 0) throw std::invalid_argument("fermat_solutions: B >= 0 required");
  const bool even = eq.k % 2 == 0;
  std::vector<GlobalSolution> out;
  for (i64 x = 0; x <= B; ++x) {
    const i128 ax = power_term(eq.a, x, eq.k);
    // Odd k: the representative has its first nonzero coordinate positive.
    const i64 y_lo = (even || x == 0) ? 0 : -B;
    for (i64 y = y_lo; y <= B; ++y) {
      const i128 rest = -(ax + power_term(eq.b, y, eq.k));
      if (rest % eq.c != 0) continue;
      std::optional<i128> root = integer_kth_root(rest / eq.c, eq.k);
      if (!root || *root > B || *root < -B) continue;
      const i64 z = static_cast<i64>(*root);
      if (x == 0 && y == 0) continue;  // forces z = 0
      if (std::gcd(std::gcd(x, y), z) != 1) continue;
      std::vector<i64> point{x, y, z};
      if (ax + power_term(eq.b, y, eq.k) + power_term(eq.c, z, eq.k) != 0) {
        throw std::logic_error("fermat_solutions: emitted point fails the equation");
      }
      out.push_back({eq, std::move(point), true});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const GlobalSolution& l, const GlobalSolution& r) { return l.point < r.point; });
  return out;
}

AbcTriple abc_quality(i64 u, i64 v, i64 w) {
  if (u == 0 || v == 0 || w == 0) throw std::invalid_argument("abc_quality: zero entry");
  if (static_cast<i128>(u) + v + w != 0) throw std::invalid_argument("abc_quality: nonzero sum");
  const i64 g = std::gcd(std::gcd(u, v), w);
  AbcTriple t{u / g, v / g, w / g, 1, 0.0};
  t.radical_value = radical(t.u) * radical(t.v) * radical(t.w);
  auto mag = [](i64 n) { return n < 0 ? -static_cast<long double>(n) : static_cast<long double>(n); };
  const long double largest = std::max({mag(t.u), mag(t.v), mag(t.w)});
  t.quality = static_cast<double>(std::log(largest) / std::log(static_cast<long double>(t.radical_value)));
  return t;
}

}  // namespace hasse
