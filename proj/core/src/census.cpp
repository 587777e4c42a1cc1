#include "hasse/census.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"

namespace hasse {

bool CensusRow::operator==(const CensusRow& other) const {
  const bool same_ratio =
      (std::isnan(ratio) && std::isnan(other.ratio)) || ratio == other.ratio;
  return H == other.H && k == other.k && loc_count == other.loc_count &&
         glob_count == other.glob_count && glob_bound_B == other.glob_bound_B && same_ratio &&
         conditional == other.conditional;
}

namespace {

constexpr i64 kNoSolution = std::numeric_limits<i64>::max();

void check_h_list(const std::vector<i64>& H_list) {
  if (H_list.empty()) throw std::invalid_argument("census: empty H list");
  for (std::size_t i = 0; i < H_list.size(); ++i) {
    if (H_list[i] < 1) throw std::invalid_argument("census: H >= 1 required");
    if (i > 0 && H_list[i] <= H_list[i - 1]) {
      throw std::invalid_argument("census: H list must be strictly ascending");
    }
  }
}

// Index of a nonzero coefficient t in [-H, H] \ {0}.
struct CoefficientIndex {
  i64 H;
  std::size_t width() const { return static_cast<std::size_t>(2 * H); }
  std::size_t of(i64 t) const { return static_cast<std::size_t>(t < 0 ? t + H : t + H - 1); }
  i64 at(std::size_t i) const {
    const i64 v = static_cast<i64>(i) - H;
    return v < 0 ? v : v + 1;
  }
};

i64 abs64(i64 v) { return v < 0 ? -v : v; }

double ratio_of(i64 glob, i64 loc) {
  return loc == 0 ? std::numeric_limits<double>::quiet_NaN()
                  : static_cast<double>(glob) / static_cast<double>(loc);
}

void attach_budget_context(const BudgetExceeded& e, const std::string& what) {
  throw BudgetExceeded(std::string(e.what()) + " while deciding " + what, e.prime(), e.modulus());
}

}  // namespace

std::vector<CensusRow> thue_census(int k, const std::vector<i64>& H_list,
                                   const CensusOptions& options) {
  if (k < 3) throw std::invalid_argument("thue_census: k >= 3 required");
  check_h_list(H_list);
  const i64 H_max = H_list.back();
  if (k == 3 && H_max > options.k3_height_cap) {
    throw std::invalid_argument("thue_census: k = 3 limited to H <= " +
                                std::to_string(options.k3_height_cap));
  }
  const CoefficientIndex idx{H_max};
  const std::size_t w = idx.width();
  auto admissible = [&](i64 a, i64 b) { return !options.coprime_only || std::gcd(a, b) == 1; };

  // Local side: one flag per pair, rows split across workers.
  std::vector<std::uint8_t> loc(w * w, 0);
  detail::parallel_for(w, options.jobs, [&](std::size_t i) {
    const i64 a = idx.at(i);
    for (std::size_t j = 0; j < w; ++j) {
      const i64 b = idx.at(j);
      if (!admissible(a, b)) continue;
      try {
        loc[i * w + j] = everywhere_locally_soluble(ThueEquation{a, b, k}, options.local);
      } catch (const BudgetExceeded& e) {
        attach_budget_context(e, describe(ThueEquation{a, b, k}));
      }
    }
  });

  // Global side: smallest solution height per pair, from solution lines.
  std::vector<HeightBound> bounds;
  for (i64 H : H_list) bounds.push_back(height_bound(k, H, options.slack));
  const i64 B_max = bounds.back().B;
  std::vector<i64> height(w * w, kNoSolution);
  const std::size_t span = static_cast<std::size_t>(2 * B_max + 1);
  std::vector<std::vector<std::pair<std::size_t, i64>>> found(span);
  detail::parallel_for(span, options.jobs, [&](std::size_t xi) {
    const i64 x = static_cast<i64>(xi) - B_max;
    for (i64 y = -B_max; y <= B_max; ++y) {
      if (x == 0 && y == 0) continue;
      if (std::gcd(x, y) != 1) continue;  // otherwise no (a, b) can work
      const i64 h = std::max(abs64(x), abs64(y));
      for (auto [a, b] : pairs_on_line(x, y, k, H_max)) {
        found[xi].emplace_back(idx.of(a) * w + idx.of(b), h);
      }
    }
  });
  for (const auto& cell : found) {
    for (auto [slot, h] : cell) height[slot] = std::min(height[slot], h);
  }

  std::vector<CensusRow> rows;
  for (std::size_t r = 0; r < H_list.size(); ++r) {
    const i64 H = H_list[r];
    CensusRow row{H, k, 0, 0, bounds[r].B, 0.0, true};
    for (i64 a = -H; a <= H; ++a) {
      if (a == 0) continue;
      for (i64 b = -H; b <= H; ++b) {
        if (b == 0 || !admissible(a, b)) continue;
        const std::size_t slot = idx.of(a) * w + idx.of(b);
        row.loc_count += loc[slot];
        row.glob_count += height[slot] <= bounds[r].B;
      }
    }
    row.ratio = ratio_of(row.glob_count, row.loc_count);
    rows.push_back(row);
  }
  return rows;
}

std::vector<CensusRow> fermat_census(int k, const std::vector<i64>& H_list,
                                     const CensusOptions& options) {
  if (k < 3) throw std::invalid_argument("fermat_census: k >= 3 required");
  check_h_list(H_list);
  const i64 H_max = H_list.back();
  const CoefficientIndex idx{H_max};
  const std::size_t w = idx.width();
  auto slot_of = [&](i64 a, i64 b, i64 c) {
    return (idx.of(a) * w + idx.of(b)) * w + idx.of(c);
  };
  auto admissible = [&](i64 a, i64 b, i64 c) {
    return !options.coprime_only || std::gcd(std::gcd(a, b), c) == 1;
  };

  std::vector<std::uint8_t> loc(w * w * w, 0);
  detail::parallel_for(w * w, options.jobs, [&](std::size_t ij) {
    const i64 a = idx.at(ij / w), b = idx.at(ij % w);
    for (std::size_t l = 0; l < w; ++l) {
      const i64 c = idx.at(l);
      if (!admissible(a, b, c)) continue;
      const FermatEquation eq{a, b, c, k};
      try {
        loc[ij * w + l] = everywhere_locally_soluble(eq, options.local);
      } catch (const BudgetExceeded& e) {
        attach_budget_context(e, describe(eq));
      }
    }
  });

  std::vector<HeightBound> bounds;
  for (i64 H : H_list) bounds.push_back(fermat_height_bound(k, H, options.slack));
  const i64 B_max = bounds.back().B;
  std::vector<i64> height(w * w * w, kNoSolution);
  // Points (x, y, z) up to sign: x >= 0, and the first nonzero entry positive.
  const std::size_t span = static_cast<std::size_t>(B_max + 1);
  std::vector<std::vector<std::pair<std::size_t, i64>>> found(span);
  detail::parallel_for(span, options.jobs, [&](std::size_t xi) {
    const i64 x = static_cast<i64>(xi);
    for (i64 y = x == 0 ? 0 : -B_max; y <= B_max; ++y) {
      for (i64 z = (x == 0 && y == 0) ? 1 : -B_max; z <= B_max; ++z) {
        if (std::gcd(std::gcd(x, y), z) != 1) continue;
        const i64 h = std::max({abs64(x), abs64(y), abs64(z)});
        const CoefficientLattice lattice = coefficient_lattice(x, y, z, k);
        for (const auto& p : lattice_points_in_box(lattice, H_max, true)) {
          found[xi].emplace_back(slot_of(p[0], p[1], p[2]), h);
        }
      }
    }
  });
  for (const auto& cell : found) {
    for (auto [slot, h] : cell) height[slot] = std::min(height[slot], h);
  }

  std::vector<CensusRow> rows;
  for (std::size_t r = 0; r < H_list.size(); ++r) {
    const i64 H = H_list[r];
    CensusRow row{H, k, 0, 0, bounds[r].B, 0.0, true};
    for (i64 a = -H; a <= H; ++a) {
      for (i64 b = -H; b <= H; ++b) {
        for (i64 c = -H; c <= H; ++c) {
          if (a == 0 || b == 0 || c == 0 || !admissible(a, b, c)) continue;
          const std::size_t slot = slot_of(a, b, c);
          row.loc_count += loc[slot];
          row.glob_count += height[slot] <= bounds[r].B;
        }
      }
    }
    row.ratio = ratio_of(row.glob_count, row.loc_count);
    rows.push_back(row);
  }
  return rows;
}

i64 quadruple_count(const DyadicBox& box) {
  if (box.X < 1 || box.Y < 1 || box.Z < 1 || box.k < 1) {
    throw std::invalid_argument("quadruple_count: X, Y, Z, k >= 1 required");
  }
  i64 total = 0;
  for (i64 x = box.X + 1; x <= 2 * box.X; ++x) {
    const i64 xk = checked_pow(x, box.k);
    for (i64 y = box.Y + 1; y <= 2 * box.Y; ++y) {
      if (std::gcd(x, y) != 1) continue;
      const i64 yk = checked_pow(y, box.k);
      // b y^k = -1 mod x^k, and Z < b y^k <= 2Z.
      const i64 lo = box.Z / yk + 1;
      const i64 hi = (2 * box.Z) / yk;
      if (hi < lo) continue;
      const i64 b0 = xk == 1 ? 0 : mod(-*invmod(yk, xk), xk);
      // Count b in [lo, hi] with b = b0 mod xk.
      auto upto = [&](i64 n) { return n < b0 ? 0 : (n - b0) / xk + 1; };
      total += upto(hi) - upto(lo - 1);
    }
  }
  return total;
}

}  // namespace hasse
