#pragma once

// Prime pairs and triples whose diagonal equations are everywhere locally
// soluble by construction: all primes are -1 modulo a congruence modulus and
// satisfy quadratic-symbol conditions. Every emitted family is additionally
// machine-certified.

#include <optional>
#include <vector>

#include "hasse/localsolve.hpp"

namespace hasse {

struct FamilyPair {
  i64 q = 0;
  i64 r = 0;
  int k = 3;
  i64 modulus = 0;
  ThueEquation equation;  // q x^k - r y^k = 1
  std::optional<SolubilityCertificate> certificate;
};

enum class SignCase { alt1, alt2 };
std::string_view to_string(SignCase sign);

struct FamilyTriple {
  i64 q = 0;
  i64 r = 0;
  i64 s = 0;
  int k = 3;
  i64 modulus = 0;
  SignCase sign_case = SignCase::alt1;
  FermatEquation equation;  // q x^k - r y^k -/+ s z^k = 0
  std::optional<SolubilityCertificate> certificate;
};

/// prod over p <= k^2(k+1)^2 of p^(2 a_p + 2), p^(a_p) || k. Far too large
/// to multiply out, so only the factorization is returned.
Factorization paper_modulus(int k);

/// lcm(4, prod over p | k of p^(2 a_p + 1)).
i64 default_modulus(int k);

/// Primes p <= limit with p = -1 mod modulus.
std::vector<i64> candidate_primes(i64 modulus, i64 limit);

/// (q, r) ordered so that (q/r) = 1; requires distinct primes = 3 mod 4.
std::pair<i64, i64> orient_pair(i64 p1, i64 p2);

struct StreamOptions {
  bool attach_certificates = false;
  /// Worker threads used to certify candidates; results stay in candidate order.
  int jobs = 1;
  LocalOptions local;
};

struct PairStreamResult {
  std::vector<FamilyPair> pairs;
  bool complete = false;  // false when prime_limit ran out before `count`
};

/// Pairs ordered by the larger prime, then the smaller.
PairStreamResult pair_stream(int k, i64 modulus, i64 prime_limit, std::size_t count,
                             const StreamOptions& options = {});

/// Smallest index i in {0,1,2} with (p_i/p_j) = (p_i/p_l) for the other two.
/// Throws std::invalid_argument unless the inputs are distinct primes = 3 mod 4.
std::optional<int> is_good_triple(i64 p1, i64 p2, i64 p3);

/// Labels a good triple (s = good prime, q < r the others) and its sign
/// case; nullopt when the triple is not good.
std::optional<FamilyTriple> label_triple(i64 p1, i64 p2, i64 p3, int k);

struct TripleStreamResult {
  std::vector<FamilyTriple> triples;
  bool complete = false;
};

/// Triples of candidate primes, ordered by largest then middle then smallest.
TripleStreamResult triple_stream(int k, i64 modulus, i64 prime_limit, std::size_t count,
                                 const StreamOptions& options = {});

}  // namespace hasse
