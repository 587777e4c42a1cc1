#pragma once

// Exact integer and modular arithmetic on 64-bit signed integers.
//
// Intermediate products are carried in 128-bit arithmetic; anything that
// would not fit back into int64 raises std::overflow_error rather than
// wrapping. All functions are pure and safe to call concurrently.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hasse {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

/// Raised when an operation would exceed its declared work budget.
/// `prime` and `modulus` identify the search that gave up (0 when not
/// applicable).
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, i64 prime = 0, i64 modulus = 0)
      : std::runtime_error(what), prime_(prime), modulus_(modulus) {}
  i64 prime() const { return prime_; }
  i64 modulus() const { return modulus_; }

 private:
  i64 prime_;
  i64 modulus_;
};

struct Egcd {
  i64 g;
  i64 u;
  i64 v;
};

/// g = gcd(a, b) > 0 together with Bezout coefficients u*a + v*b = g.
/// Throws std::invalid_argument for (0, 0).
Egcd egcd(i64 a, i64 b);

/// Jacobi symbol (a/n) for odd n >= 1.
int jacobi(i64 a, i64 n);

/// Deterministic for every int64 input (fixed Miller-Rabin witness set).
bool is_prime(i64 n);

/// All primes <= limit, ascending.
std::vector<i64> primes_up_to(i64 limit);

struct Valuation {
  int exponent;
  i64 cofactor;
};

/// n = p^exponent * cofactor with p not dividing cofactor. n must be nonzero.
Valuation valuation(i64 n, i64 p);

/// Shorthand for valuation(n, p).exponent.
int vp(i64 n, i64 p);

class Factorization {
 public:
  /// prime -> exponent (all exponents >= 1).
  std::map<i64, int> factors;

  /// Product of p^e; throws std::overflow_error when it leaves int64.
  i64 value() const;
  int exponent_of(i64 p) const;
  bool operator==(const Factorization&) const = default;
};

/// Prime factorization of |n|, n != 0. Trial division to 10^6 followed by
/// Pollard-Brent splitting.
Factorization factorize(i64 n);

/// Product of the distinct primes dividing n; radical(+-1) = 1.
i64 radical(i64 n);

/// Least nonnegative residue of a modulo m > 0.
i64 mod(i64 a, i64 m);
i64 mod(i128 a, i64 m);
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 base, u64 exponent, i64 m);
std::optional<i64> invmod(i64 a, i64 m);

/// base^e, throwing std::overflow_error if the result leaves int64.
i64 checked_pow(i64 base, int e);
/// base^e in 128 bits, or nullopt on overflow.
std::optional<i128> pow128(i64 base, int e);

/// The image of x -> x^k on Z/pZ, including 0.
class ResidueTable {
 public:
  ResidueTable(i64 p, int k, std::vector<bool> members);

  i64 modulus() const { return modulus_; }
  int degree() const { return degree_; }
  bool contains(i64 r) const { return members_[mod(r, modulus_)]; }
  std::size_t size() const { return size_; }
  std::vector<i64> residues() const;

 private:
  i64 modulus_;
  int degree_;
  std::vector<bool> members_;
  std::size_t size_;
};

ResidueTable kth_power_residues(i64 p, int k);

/// Smallest x in [1, p) with x^k = a (mod p), or nullopt if a is not a
/// k-th power residue. Requires p prime, p not dividing a.
std::optional<i64> kth_root_mod(i64 a, int k, i64 p);

/// Precision (exponent of p) at which k-th power classes of p-adic units
/// are decided: 2*v_p(k)+1 for odd p, 2*v_2(k)+3 for p = 2.
int unit_power_precision(i64 p, int k);

/// k-th powers of units modulo p^e, e = unit_power_precision(p, k).
/// Backed by an explicit table of smallest roots when p^e is small, and by
/// Euler's criterion plus kth_root_mod otherwise (only possible when p is
/// odd and coprime to k, where e = 1). Immutable after construction.
class UnitPowerTable {
 public:
  UnitPowerTable(i64 p, int k);

  i64 prime() const { return p_; }
  int degree() const { return k_; }
  int precision() const { return precision_; }
  i64 modulus() const { return modulus_; }

  /// u must be a unit; only u mod modulus() matters.
  bool contains(i64 u) const;
  /// Smallest unit root x in [0, modulus()) of x^k = u (mod modulus()).
  std::optional<i64> root(i64 u) const;

 private:
  i64 p_;
  int k_;
  int precision_;
  i64 modulus_;
  int residue_degree_;  // gcd(k, p - 1) on the Euler path
  std::vector<std::int32_t> min_root_;  // empty on the Euler path
};

/// Shared, lazily built table for (p, k).
const UnitPowerTable& unit_power_table(i64 p, int k);

/// True iff the unit u is the k-th power of a unit of Z_p.
/// Throws std::invalid_argument when p divides u.
bool unit_kth_power_in_Zp(i64 u, int k, i64 p);

/// A unit x with x^k = u (mod p^precision), when u is a k-th power in Z_p.
std::optional<i64> kth_root_mod_prime_power(i64 u, int k, i64 p, int precision);

/// Exact x with x^k = n, or nullopt. For even k only n >= 0 can succeed;
/// the nonnegative root is returned.
std::optional<i128> integer_kth_root(i128 n, int k);

}  // namespace hasse
