#include "hasse/families.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"

namespace hasse {

std::string_view to_string(SignCase sign) { return sign == SignCase::alt1 ? "alt1" : "alt2"; }

Factorization paper_modulus(int k) {
  if (k < 3) throw std::invalid_argument("paper_modulus: k >= 3 required");
  Factorization m;
  for (i64 p : primes_up_to(large_prime_threshold(k))) m.factors[p] = 2 * vp(k, p) + 2;
  return m;
}

i64 default_modulus(int k) {
  if (k < 3) throw std::invalid_argument("default_modulus: k >= 3 required");
  i64 m = 1;
  for (auto [p, e] : factorize(k).factors) m *= checked_pow(p, 2 * e + 1);
  return std::lcm(m, i64{4});
}

std::vector<i64> candidate_primes(i64 modulus, i64 limit) {
  if (modulus < 1) throw std::invalid_argument("candidate_primes: modulus must be positive");
  std::vector<i64> out;
  for (i64 p = modulus - 1; p <= limit; p += modulus) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

std::pair<i64, i64> orient_pair(i64 p1, i64 p2) {
  if (p1 == p2 || !is_prime(p1) || !is_prime(p2) || p1 % 4 != 3 || p2 % 4 != 3) {
    throw std::invalid_argument("orient_pair: distinct primes = 3 mod 4 required");
  }
  return jacobi(p1, p2) == 1 ? std::pair{p1, p2} : std::pair{p2, p1};
}

std::optional<int> is_good_triple(i64 p1, i64 p2, i64 p3) {
  const i64 p[3] = {p1, p2, p3};
  for (i64 x : p) {
    if (!is_prime(x) || x % 4 != 3) {
      throw std::invalid_argument("is_good_triple: primes = 3 mod 4 required");
    }
  }
  if (p1 == p2 || p1 == p3 || p2 == p3) {
    throw std::invalid_argument("is_good_triple: primes must be distinct");
  }
  for (int i = 0; i < 3; ++i) {
    if (jacobi(p[i], p[(i + 1) % 3]) == jacobi(p[i], p[(i + 2) % 3])) return i;
  }
  return std::nullopt;
}

std::optional<FamilyTriple> label_triple(i64 p1, i64 p2, i64 p3, int k) {
  std::optional<int> good = is_good_triple(p1, p2, p3);
  if (!good) return std::nullopt;
  const i64 p[3] = {p1, p2, p3};
  FamilyTriple t;
  t.k = k;
  t.s = p[*good];
  t.q = std::min(p[(*good + 1) % 3], p[(*good + 2) % 3]);
  t.r = std::max(p[(*good + 1) % 3], p[(*good + 2) % 3]);
  // (-rs/q) and (qs/r) agree for primes = 3 mod 4 with (s/q) = (s/r).
  const int symbol = jacobi(mod(-static_cast<i128>(t.r) * t.s, t.q), t.q);
  if (symbol != jacobi(mod(static_cast<i128>(t.q) * t.s, t.r), t.r)) {
    throw std::logic_error("label_triple: sign symbols disagree");
  }
  t.sign_case = symbol == 1 ? SignCase::alt1 : SignCase::alt2;
  t.equation = {t.q, -t.r, t.sign_case == SignCase::alt1 ? -t.s : t.s, k};
  return t;
}

namespace {

// Certifies candidates in parallel and returns them in the original order.
std::vector<std::optional<SolubilityCertificate>> certify_batch(
    const std::vector<Equation>& equations, const StreamOptions& options) {
  std::vector<std::optional<SolubilityCertificate>> out(equations.size());
  detail::parallel_for(equations.size(), options.jobs,
                       [&](std::size_t i) { out[i] = certify(equations[i], options.local); });
  return out;
}

template <class Family>
void emit_batch(std::vector<Family>& batch, std::vector<Family>& out, std::size_t count,
                const StreamOptions& options) {
  std::vector<Equation> equations;
  for (const Family& f : batch) equations.emplace_back(f.equation);
  auto certs = certify_batch(equations, options);
  for (std::size_t i = 0; i < batch.size() && out.size() < count; ++i) {
    if (!certs[i]->everywhere_soluble) continue;
    if (options.attach_certificates) batch[i].certificate = std::move(certs[i]);
    out.push_back(std::move(batch[i]));
  }
  batch.clear();
}

std::vector<i64> family_primes(int k, i64 modulus, i64 prime_limit) {
  if (k < 3) throw std::invalid_argument("family streams: k >= 3 required");
  if (modulus % 4 != 0) throw std::invalid_argument("family streams: modulus must be = 0 mod 4");
  std::vector<i64> primes = candidate_primes(modulus, prime_limit);
  const i64 threshold = large_prime_threshold(k);
  std::erase_if(primes, [threshold](i64 p) { return p <= threshold; });
  return primes;
}

std::size_t batch_size(const StreamOptions& options) {
  return static_cast<std::size_t>(std::max(8, 4 * options.jobs));
}

}  // namespace

PairStreamResult pair_stream(int k, i64 modulus, i64 prime_limit, std::size_t count,
                             const StreamOptions& options) {
  const std::vector<i64> primes = family_primes(k, modulus, prime_limit);
  PairStreamResult result;
  std::vector<FamilyPair> batch;
  for (std::size_t j = 0; j < primes.size() && result.pairs.size() < count; ++j) {
    for (std::size_t i = 0; i < j && result.pairs.size() < count; ++i) {
      auto [q, r] = orient_pair(primes[i], primes[j]);
      batch.push_back({q, r, k, modulus, ThueEquation{q, -r, k}, std::nullopt});
      if (batch.size() >= batch_size(options)) emit_batch(batch, result.pairs, count, options);
    }
  }
  if (!batch.empty()) emit_batch(batch, result.pairs, count, options);
  result.complete = result.pairs.size() >= count;
  return result;
}

TripleStreamResult triple_stream(int k, i64 modulus, i64 prime_limit, std::size_t count,
                                 const StreamOptions& options) {
  const std::vector<i64> primes = family_primes(k, modulus, prime_limit);
  TripleStreamResult result;
  std::vector<FamilyTriple> batch;
  for (std::size_t l = 0; l < primes.size() && result.triples.size() < count; ++l) {
    for (std::size_t j = 0; j < l && result.triples.size() < count; ++j) {
      for (std::size_t i = 0; i < j && result.triples.size() < count; ++i) {
        std::optional<FamilyTriple> t = label_triple(primes[i], primes[j], primes[l], k);
        if (!t) continue;
        t->modulus = modulus;
        batch.push_back(std::move(*t));
        if (batch.size() >= batch_size(options)) {
          emit_batch(batch, result.triples, count, options);
        }
      }
    }
  }
  if (!batch.empty()) emit_batch(batch, result.triples, count, options);
  result.complete = result.triples.size() >= count;
  return result;
}

}  // namespace hasse
