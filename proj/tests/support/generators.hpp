#pragma once

// Seeded generators for property tests. Each test constructs its own Gen
// with a fixed seed so failures are reproducible.

#include <cstdint>
#include <random>
#include <vector>

#include "hasse/arith.hpp"

namespace hasse::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  i64 uniform(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng_); }

  i64 nonzero(i64 bound) {
    const i64 v = uniform(1, bound);
    return coin() ? v : -v;
  }

  bool coin() { return uniform(0, 1) == 1; }

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(0, static_cast<i64>(items.size()) - 1))];
  }

  /// A unit modulo p, in [1, bound].
  i64 unit_mod(i64 p, i64 bound) {
    while (true) {
      const i64 u = uniform(1, bound);
      if (u % p != 0) return u;
    }
  }

  /// Distinct primes = 3 mod 4 from [lo, hi].
  std::vector<i64> primes_3mod4(std::size_t count, i64 lo, i64 hi) {
    std::vector<i64> pool;
    for (i64 p : primes_up_to(hi)) {
      if (p >= lo && p % 4 == 3) pool.push_back(p);
    }
    std::vector<i64> out;
    while (out.size() < count) {
      const i64 p = pick(pool);
      bool fresh = true;
      for (i64 q : out) fresh = fresh && q != p;
      if (fresh) out.push_back(p);
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace hasse::testing
