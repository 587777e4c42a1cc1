#pragma once

// Local solubility of diagonal Thue equations a x^k + b y^k = 1 and diagonal
// Fermat equations a x^k + b y^k + c z^k = 0 over the reals and over Z_p.
//
// Every "soluble" verdict carries a Hensel witness: a residue point together
// with the exact p-adic valuation n of the gradient there, such that the
// form vanishes modulo p^(2n+1). Such a point lifts to a genuine p-adic zero
// agreeing with it modulo p^(n+1).
//
// Completeness. Any Z_p solution of a Thue equation has a unit coordinate
// (otherwise the left side is divisible by p). If the last unit coordinate
// carries coefficient c, the gradient there has valuation at most
// n_c = v_p(k) + v_p(c), so reducing the solution modulo p^(2 n_c + 1)
// already yields a valid witness. Exhausting each "last unit coordinate"
// case at that precision therefore decides solubility. Fermat equations are
// first brought to coefficient valuations in [0, k) with at least one unit
// coefficient (x -> p^j x scaling, then dividing out the common p-power), and
// the same argument applies to primitive solutions.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hasse/arith.hpp"

namespace hasse {

/// a x^k + b y^k = 1.
struct ThueEquation {
  i64 a = 1;
  i64 b = 1;
  int k = 3;

  /// Throws std::invalid_argument unless a, b != 0 and k >= 3.
  void validate() const;
  bool operator==(const ThueEquation&) const = default;
};

/// a x^k + b y^k + c z^k = 0, solutions sought away from the origin.
struct FermatEquation {
  i64 a = 1;
  i64 b = 1;
  i64 c = 1;
  int k = 3;

  void validate() const;
  bool operator==(const FermatEquation&) const = default;
};

using Equation = std::variant<ThueEquation, FermatEquation>;

int degree(const Equation& eq);
std::vector<i64> coefficients(const Equation& eq);
std::string describe(const Equation& eq);

struct HenselWitness {
  std::vector<i64> point;
  int precision_n = 0;
  i64 prime = 0;
  bool operator==(const HenselWitness&) const = default;
};

enum class LocalMethod {
  automatic_large_prime,
  surjectivity_shortcut,
  residue_search,
  exhaustive_hensel,
};

std::string_view to_string(LocalMethod method);
std::optional<LocalMethod> parse_local_method(std::string_view text);

struct LocalVerdict {
  i64 prime = 0;
  bool soluble = false;
  std::optional<HenselWitness> witness;
  LocalMethod method = LocalMethod::residue_search;
  /// Largest p-power modulus enumerated. When insoluble this is the modulus
  /// at which the exhaustive search was completed.
  i64 search_modulus = 0;
  bool operator==(const LocalVerdict&) const = default;
};

struct SolubilityCertificate {
  Equation equation;
  bool real_soluble = false;
  i64 threshold = 0;
  std::vector<LocalVerdict> checked_primes;
  bool everywhere_soluble = false;
  bool operator==(const SolubilityCertificate&) const = default;
};

enum class SearchStrategy {
  /// Enumerate whole residue points at precision p^(2n+1) per unit case.
  exhaustive_points,
  /// Enumerate the non-solved coordinates and test the solved one with the
  /// unit k-th power classes of Z_p. Default.
  unit_fibres,
};

class VerdictCache;

struct LocalOptions {
  SearchStrategy strategy = SearchStrategy::unit_fibres;
  /// Large-prime and gcd(k, p-1) <= 2 shortcuts.
  bool shortcuts = true;
  /// Hard cap on enumerated candidates per (equation, prime).
  i64 budget = 100'000'000;
  /// Optional shared verdict cache; may be used from several threads.
  VerdictCache* cache = nullptr;
};

/// k^2 (k+1)^2: above this, primes coprime to the coefficients and to k
/// are soluble automatically.
i64 large_prime_threshold(int k);

/// The gradient valuation n when `point` is a Hensel witness for `eq` at p,
/// i.e. f(point) = 0 mod p^(2n+1) and p^n exactly divides the gradient.
/// Fermat witnesses must also have a unit coordinate. nullopt otherwise.
std::optional<int> hensel_witness_valid(const Equation& eq, std::span<const i64> point, i64 p);

LocalVerdict thue_local(const ThueEquation& eq, i64 p, const LocalOptions& options = {});
LocalVerdict fermat_local(const FermatEquation& eq, i64 p, const LocalOptions& options = {});
LocalVerdict local_verdict(const Equation& eq, i64 p, const LocalOptions& options = {});

bool real_soluble(const Equation& eq);

/// Primes p <= k^2(k+1)^2, primes dividing a coefficient, primes dividing k.
/// Ascending, without repeats.
std::vector<i64> prime_checklist(const Equation& eq);

SolubilityCertificate certify(const Equation& eq, const LocalOptions& options = {});

/// Same decision as certify(eq).everywhere_soluble, stopping at the first
/// obstruction.
bool everywhere_locally_soluble(const Equation& eq, const LocalOptions& options = {});

/// Re-checks every witness and the aggregate flags of a certificate.
bool replay_certificate(const SolubilityCertificate& cert);

}  // namespace hasse
