#pragma once

// Brute-force reference implementations. These deliberately avoid the
// library's arithmetic (beyond the integer typedefs) so that agreement is
// meaningful.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "hasse/arith.hpp"

namespace hasse::testing {

inline i64 omod(i128 a, i64 m) {
  i128 r = a % m;
  if (r < 0) r += m;
  return static_cast<i64>(r);
}

inline i64 opow(i64 base, i64 e, i64 m) {
  i128 result = 1 % m;
  i128 b = omod(base, m);
  for (i64 i = 0; i < e; ++i) result = result * b % m;
  return static_cast<i64>(result);
}

inline i128 ipow(i64 base, int e) {
  i128 r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

/// Exponent of p in n, n != 0.
inline int oval(i64 n, i64 p) {
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline bool trial_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline i64 ogcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Legendre symbol from the set of nonzero squares mod p.
inline int legendre_by_squares(i64 a, i64 p) {
  const i64 r = omod(a, p);
  if (r == 0) return 0;
  for (i64 x = 1; x < p; ++x) {
    if (x * x % p == r) return 1;
  }
  return -1;
}

inline std::set<i64> power_residues_by_enumeration(i64 p, int k) {
  std::set<i64> out;
  for (i64 x = 0; x < p; ++x) out.insert(opow(x, k, p));
  return out;
}

/// Whether t^k = u (mod p^e) has a unit solution t.
inline bool unit_root_exists(i64 u, int k, i64 p, int e) {
  i64 m = 1;
  for (int i = 0; i < e; ++i) m *= p;
  const i64 target = omod(u, m);
  for (i64 t = 1; t < m; ++t) {
    if (t % p != 0 && opow(t, k, m) == target) return true;
  }
  return false;
}

namespace detail {

constexpr int kNoComponent = std::numeric_limits<int>::max();

inline std::optional<i64> power_or_none(i64 p, int e, i64 cap) {
  i128 m = 1;
  for (int i = 0; i < e; ++i) {
    m *= p;
    if (m > cap) return std::nullopt;
  }
  return static_cast<i64>(m);
}

/// Bitmap of coef * t^k mod p^(2n+1) over units t, for n = 0..n_max.
inline std::vector<std::vector<bool>> unit_images(i64 coef, int k, i64 p, int n_max) {
  std::vector<std::vector<bool>> tables;
  for (int n = 0; n <= n_max; ++n) {
    const i64 m = *power_or_none(p, 2 * n + 1, std::numeric_limits<i64>::max());
    std::vector<bool> hit(static_cast<std::size_t>(m), false);
    for (i64 t = 1; t < m; ++t) {
      if (t % p != 0) hit[omod(static_cast<i128>(coef) * opow(t, k, m), m)] = true;
    }
    tables.push_back(std::move(hit));
  }
  return tables;
}

/// Valuation of the gradient component coef * k * x^(k-1) for the residue
/// x mod M; kNoComponent when x represents 0.
inline int component(i64 x, int alpha, int coef_val, int k, i64 p) {
  if (x == 0) return kNoComponent;
  return alpha + coef_val + (k - 1) * oval(x, p);
}

}  // namespace detail

/// Whether a x^k + b y^k = 1 has a residue point modulo p^(2N+1), N =
/// n_limit (default v_p(k) + v_p(a) + v_p(b)), that is a Hensel witness with
/// gradient valuation n <= N. Enumerates one coordinate completely and
/// looks the unit coordinate up in a table of k-th power images. nullopt
/// when the modulus would exceed max_modulus.
inline std::optional<bool> thue_witness_oracle(i64 a, i64 b, int k, i64 p,
                                               std::optional<int> n_limit = std::nullopt,
                                               i64 max_modulus = i64{1} << 27) {
  const int alpha = k % p == 0 ? oval(k, p) : 0;
  const int va = oval(a, p);
  const int vb = oval(b, p);
  const int N = n_limit.value_or(alpha + va + vb);
  const auto M = detail::power_or_none(p, 2 * N + 1, max_modulus);
  if (!M) return std::nullopt;

  // y a unit, x anything.
  const int cap_y = std::min(alpha + vb, N);
  if (alpha + vb <= N) {
    const auto images = detail::unit_images(b, k, p, cap_y);
    for (i64 x = 0; x < *M; ++x) {
      const int n = std::min(alpha + vb, detail::component(x, alpha, va, k, p));
      const i64 m = *detail::power_or_none(p, 2 * n + 1, max_modulus);
      const i64 target = omod(1 - static_cast<i128>(a) * opow(x, k, m), m);
      if (images[n][target]) return true;
    }
  }
  // x a unit, y divisible by p.
  if (alpha + va <= N) {
    const auto images = detail::unit_images(a, k, p, alpha + va);
    for (i64 y = 0; y < *M; y += p) {
      const int n = std::min(alpha + va, detail::component(y, alpha, vb, k, p));
      const i64 m = *detail::power_or_none(p, 2 * n + 1, max_modulus);
      const i64 target = omod(1 - static_cast<i128>(b) * opow(y, k, m), m);
      if (images[n][target]) return true;
    }
  }
  return false;
}

/// Same question for a x^k + b y^k + c z^k = 0 with a unit coordinate,
/// precision from N = v_p(k) + max v_p(coefficient). Only meant for
/// coefficients that are already reduced (valuations < k, one unit); the
/// caller checks that. nullopt when p^(2N+1) exceeds max_modulus.
inline std::optional<bool> fermat_witness_oracle(std::array<i64, 3> coef, int k, i64 p,
                                                 i64 max_modulus = 2048) {
  const int alpha = k % p == 0 ? oval(k, p) : 0;
  std::array<int, 3> v{};
  for (int i = 0; i < 3; ++i) v[i] = oval(coef[i], p);
  const int N = alpha + *std::max_element(v.begin(), v.end());
  const auto M = detail::power_or_none(p, 2 * N + 1, max_modulus);
  if (!M) return std::nullopt;

  for (int unit = 0; unit < 3; ++unit) {
    // Coordinates before `unit` range over everything, after it over
    // multiples of p.
    std::array<int, 2> others{};
    int o = 0;
    for (int j = 0; j < 3; ++j) {
      if (j != unit) others[o++] = j;
    }
    const int own = alpha + v[unit];
    const auto images = detail::unit_images(coef[unit], k, p, own);
    const i64 step0 = others[0] > unit ? p : 1;
    const i64 step1 = others[1] > unit ? p : 1;
    for (i64 s = 0; s < *M; s += step0) {
      const int c0 = detail::component(s, alpha, v[others[0]], k, p);
      for (i64 t = 0; t < *M; t += step1) {
        const int c1 = detail::component(t, alpha, v[others[1]], k, p);
        const int n = std::min({own, c0, c1});
        const i64 m = *detail::power_or_none(p, 2 * n + 1, max_modulus);
        const i128 rest = static_cast<i128>(coef[others[0]]) * opow(s, k, m) +
                          static_cast<i128>(coef[others[1]]) * opow(t, k, m);
        if (images[n][omod(-rest, m)]) return true;
      }
    }
  }
  return false;
}

/// All (x, y) in [-B, B]^2 with a x^k + b y^k = 1, lexicographic.
inline std::vector<std::pair<i64, i64>> brute_thue_points(i64 a, i64 b, int k, i64 B) {
  std::vector<std::pair<i64, i64>> out;
  for (i64 x = -B; x <= B; ++x) {
    for (i64 y = -B; y <= B; ++y) {
      if (static_cast<i128>(a) * ipow(x, k) + static_cast<i128>(b) * ipow(y, k) == 1) {
        out.emplace_back(x, y);
      }
    }
  }
  return out;
}

/// All (a, b, c) in [-H, H]^3 with a x^k + b y^k + c z^k = 0.
inline std::vector<std::array<i64, 3>> brute_lattice_box(i64 x, i64 y, i64 z, int k, i64 H,
                                                         bool nonzero_only) {
  const i128 X = ipow(x, k);
  const i128 Y = ipow(y, k);
  const i128 Z = ipow(z, k);
  std::vector<std::array<i64, 3>> out;
  for (i64 a = -H; a <= H; ++a) {
    for (i64 b = -H; b <= H; ++b) {
      for (i64 c = -H; c <= H; ++c) {
        if (nonzero_only && (a == 0 || b == 0 || c == 0)) continue;
        if (a * X + b * Y + c * Z == 0) out.push_back({a, b, c});
      }
    }
  }
  return out;
}

/// #{(a, b, x, y) : a x^k - b y^k = 1, X < x <= 2X, Y < y <= 2Y,
///   Z < b y^k <= 2Z, a, b >= 1}, by four nested loops.
inline i64 brute_quadruples(i64 X, i64 Y, i64 Z, int k) {
  i64 count = 0;
  for (i64 x = X + 1; x <= 2 * X; ++x) {
    for (i64 y = Y + 1; y <= 2 * Y; ++y) {
      const i128 xk = ipow(x, k);
      const i128 yk = ipow(y, k);
      for (i64 b = 1; b * yk <= 2 * Z; ++b) {
        if (b * yk <= Z) continue;
        for (i64 a = 1; a * xk <= 1 + 2 * Z; ++a) {
          if (a * xk - b * yk == 1) ++count;
        }
      }
    }
  }
  return count;
}

}  // namespace hasse::testing
