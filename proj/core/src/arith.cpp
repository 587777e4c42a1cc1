#include "hasse/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <utility>

namespace hasse {

namespace {

u64 mulmod_u(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod_u(u64 base, u64 e, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mulmod_u(result, base, m);
    base = mulmod_u(base, base, m);
    e >>= 1;
  }
  return result;
}

bool miller_rabin_round(u64 n, u64 d, int s, u64 a) {
  u64 x = powmod_u(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod_u(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

u64 gcd_u(u64 a, u64 b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Pollard-Brent. Returns a nontrivial factor of the odd composite n.
u64 pollard_brent(u64 n) {
  constexpr u64 kIterationCap = 50'000'000;
  for (u64 c = 1; c < 64; ++c) {
    u64 y = 2, g = 1, q = 1, x = 0, ys = 0;
    u64 r = 1;
    constexpr u64 m = 128;
    u64 iterations = 0;
    auto f = [&](u64 v) { return (mulmod_u(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod_u(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u(q, n);
        k += m;
        iterations += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1 && iterations < kIterationCap);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  throw BudgetExceeded("factorization budget exceeded");
}

void factor_into(u64 n, std::map<i64, int>& out) {
  if (n == 1) return;
  if (is_prime(static_cast<i64>(n))) {
    ++out[static_cast<i64>(n)];
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

Egcd egcd(i64 a, i64 b) {
  if (a == 0 && b == 0) throw std::invalid_argument("egcd: both arguments are zero");
  // Recursive-style Euclid unrolled; signs are restored at the end.
  i128 r0 = a < 0 ? -static_cast<i128>(a) : a;
  i128 r1 = b < 0 ? -static_cast<i128>(b) : b;
  i128 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    i128 q = r0 / r1;
    i128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (a < 0) s0 = -s0;
  if (b < 0) t0 = -t0;
  if (r0 > std::numeric_limits<i64>::max()) throw std::overflow_error("egcd: gcd exceeds int64");
  return {static_cast<i64>(r0), static_cast<i64>(s0), static_cast<i64>(t0)};
}

int jacobi(i64 a, i64 n) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
  u64 aa = static_cast<u64>(mod(a, n));
  u64 nn = static_cast<u64>(n);
  int t = 1;
  while (aa != 0) {
    while (aa % 2 == 0) {
      aa /= 2;
      u64 r = nn % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(aa, nn);
    if (aa % 4 == 3 && nn % 4 == 3) t = -t;
    aa %= nn;
  }
  return nn == 1 ? t : 0;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  u64 un = static_cast<u64>(n);
  for (u64 p : kSmall) {
    if (un == p) return true;
    if (un % p == 0) return false;
  }
  u64 d = un - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // These twelve bases are a proven deterministic set below 3.3 * 10^24.
  for (u64 a : kSmall) {
    if (!miller_rabin_round(un, d, s, a)) return false;
  }
  return true;
}

std::vector<i64> primes_up_to(i64 limit) {
  std::vector<i64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (i64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    if (i <= limit / i) {
      for (i64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }
  return primes;
}

Valuation valuation(i64 n, i64 p) {
  if (n == 0) throw std::invalid_argument("valuation: n = 0 has infinite valuation");
  if (p < 2) throw std::invalid_argument("valuation: p must be a prime");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return {e, n};
}

int vp(i64 n, i64 p) { return valuation(n, p).exponent; }

i64 Factorization::value() const {
  i64 result = 1;
  for (auto [p, e] : factors) {
    for (int i = 0; i < e; ++i) {
      if (__builtin_mul_overflow(result, p, &result)) {
        throw std::overflow_error("factorization value exceeds int64");
      }
    }
  }
  return result;
}

int Factorization::exponent_of(i64 p) const {
  auto it = factors.find(p);
  return it == factors.end() ? 0 : it->second;
}

Factorization factorize(i64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n = 0");
  u64 m = n < 0 ? static_cast<u64>(0) - static_cast<u64>(n) : static_cast<u64>(n);
  Factorization f;
  while (m % 2 == 0) {
    ++f.factors[2];
    m /= 2;
  }
  constexpr u64 kTrialLimit = 1'000'000;
  for (u64 d = 3; d <= kTrialLimit && d * d <= m; d += 2) {
    while (m % d == 0) {
      ++f.factors[static_cast<i64>(d)];
      m /= d;
    }
  }
  factor_into(m, f.factors);
  return f;
}

i64 radical(i64 n) {
  i64 r = 1;
  for (auto [p, e] : factorize(n).factors) r *= p;
  return r;
}

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mod(i128 a, i64 m) {
  i128 r = a % m;
  return static_cast<i64>(r < 0 ? r + m : r);
}

i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>(mulmod_u(static_cast<u64>(mod(a, m)), static_cast<u64>(mod(b, m)),
                                   static_cast<u64>(m)));
}

i64 powmod(i64 base, u64 exponent, i64 m) {
  return static_cast<i64>(
      powmod_u(static_cast<u64>(mod(base, m)), exponent, static_cast<u64>(m)));
}

std::optional<i64> invmod(i64 a, i64 m) {
  a = mod(a, m);
  if (a == 0) return m == 1 ? std::optional<i64>(0) : std::nullopt;
  Egcd e = egcd(a, m);
  if (e.g != 1) return std::nullopt;
  return mod(e.u, m);
}

i64 checked_pow(i64 base, int e) {
  i64 result = 1;
  for (int i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) {
      throw std::overflow_error("checked_pow: result exceeds int64");
    }
  }
  return result;
}

std::optional<i128> pow128(i64 base, int e) {
  i128 result = 1;
  for (int i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(result, static_cast<i128>(base), &result)) return std::nullopt;
  }
  return result;
}

ResidueTable::ResidueTable(i64 p, int k, std::vector<bool> members)
    : modulus_(p), degree_(k), members_(std::move(members)) {
  size_ = static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
}

std::vector<i64> ResidueTable::residues() const {
  std::vector<i64> out;
  for (i64 r = 0; r < modulus_; ++r) {
    if (members_[r]) out.push_back(r);
  }
  return out;
}

ResidueTable kth_power_residues(i64 p, int k) {
  if (k < 1) throw std::invalid_argument("kth_power_residues: k must be positive");
  if (!is_prime(p)) throw std::invalid_argument("kth_power_residues: p must be prime");
  if (p > (i64{1} << 30)) throw std::domain_error("kth_power_residues: p too large to tabulate");
  std::vector<bool> members(static_cast<std::size_t>(p), false);
  members[0] = true;
  for (i64 x = 1; x < p; ++x) members[powmod(x, static_cast<u64>(k), p)] = true;
  return ResidueTable(p, k, std::move(members));
}

namespace {

// Discrete log of `target` to base `h` inside the cyclic group of order
// `order`, all of whose prime factors are listed in `primes` (each small).
i64 smooth_log(i64 target, i64 h, i64 order, const std::vector<i64>& primes, i64 p) {
  i128 log = 0;
  i128 combined_modulus = 1;
  for (i64 r : primes) {
    int f = 0;
    i64 rf = 1;
    while ((order / rf) % r == 0) {
      rf *= r;
      ++f;
    }
    i64 hr = powmod(h, static_cast<u64>(order / rf), p);
    i64 ar = powmod(target, static_cast<u64>(order / rf), p);
    i64 gamma = powmod(hr, static_cast<u64>(rf / r), p);
    i64 hr_inv = *invmod(hr, p);
    i64 x = 0;
    i64 rj = 1;
    for (int j = 0; j < f; ++j) {
      i64 reduced = mulmod(ar, powmod(hr_inv, static_cast<u64>(x), p), p);
      i64 t = powmod(reduced, static_cast<u64>(rf / rj / r), p);
      i64 digit = -1;
      i64 acc = 1;
      for (i64 dg = 0; dg < r; ++dg) {
        if (acc == t) {
          digit = dg;
          break;
        }
        acc = mulmod(acc, gamma, p);
      }
      if (digit < 0) throw std::logic_error("smooth_log: element outside subgroup");
      x += digit * rj;
      rj *= r;
    }
    // CRT merge of x mod r^f into log mod combined_modulus.
    i64 inv = *invmod(static_cast<i64>(combined_modulus % rf), rf);
    i128 delta = mod(static_cast<i128>(x) - log, rf);
    log += combined_modulus * ((delta * inv) % rf);
    combined_modulus *= rf;
    log %= combined_modulus;
  }
  return static_cast<i64>(log);
}

}  // namespace

std::optional<i64> kth_root_mod(i64 a, int k, i64 p) {
  if (k < 1) throw std::invalid_argument("kth_root_mod: k must be positive");
  if (!is_prime(p)) throw std::invalid_argument("kth_root_mod: p must be prime");
  a = mod(a, p);
  if (a == 0) throw std::invalid_argument("kth_root_mod: p divides a");
  if (p == 2) return 1;

  const i64 order = p - 1;
  const i64 d = std::gcd(static_cast<i64>(k), order);
  if (powmod(a, static_cast<u64>(order / d), p) != 1) return std::nullopt;

  std::vector<i64> d_primes;
  for (auto [r, e] : factorize(d).factors) d_primes.push_back(r);
  i64 D = 1;  // part of p - 1 supported on the primes of d
  i64 m = order;
  for (i64 r : d_primes) {
    while (m % r == 0) {
      m /= r;
      D *= r;
    }
  }

  i64 root;
  if (D == 1) {
    root = powmod(a, static_cast<u64>(*invmod(k, order)), p);
  } else {
    // Split a into its components in C_D x C_m (p - 1 = D * m, coprime).
    i64 e_D = static_cast<i64>(static_cast<i128>(m) * *invmod(m, D) % order);
    i64 e_m = static_cast<i64>(static_cast<i128>(D) * *invmod(D, m) % order);
    i64 a_D = powmod(a, static_cast<u64>(e_D), p);
    i64 a_m = powmod(a, static_cast<u64>(e_m), p);

    i64 x_m = m == 1 ? 1 : powmod(a_m, static_cast<u64>(*invmod(k, m)), p);

    i64 h = 0;
    for (i64 c = 2; c < p; ++c) {
      i64 candidate = powmod(c, static_cast<u64>(m), p);
      bool generates = std::all_of(d_primes.begin(), d_primes.end(), [&](i64 r) {
        return powmod(candidate, static_cast<u64>(D / r), p) != 1;
      });
      if (generates) {
        h = candidate;
        break;
      }
    }
    i64 L = smooth_log(a_D, h, D, d_primes, p);
    if (L % d != 0) throw std::logic_error("kth_root_mod: inconsistent residue class");
    i64 reduced_order = D / d;
    i64 X = reduced_order == 1
                ? 0
                : static_cast<i64>(static_cast<i128>(L / d) *
                                   *invmod((k / d) % reduced_order, reduced_order) % reduced_order);
    i64 x_D = powmod(h, static_cast<u64>(X), p);
    root = mulmod(x_D, x_m, p);

    // Every root is root * zeta for zeta of order dividing d.
    i64 zeta = powmod(h, static_cast<u64>(D / d), p);
    i64 best = root;
    i64 candidate = root;
    for (i64 i = 1; i < d; ++i) {
      candidate = mulmod(candidate, zeta, p);
      best = std::min(best, candidate);
    }
    root = best;
  }
  if (powmod(root, static_cast<u64>(k), p) != a) {
    throw std::logic_error("kth_root_mod: root verification failed");
  }
  return root;
}

int unit_power_precision(i64 p, int k) {
  int alpha = vp(k, p);
  return p == 2 ? 2 * alpha + 3 : 2 * alpha + 1;
}

UnitPowerTable::UnitPowerTable(i64 p, int k)
    : p_(p), k_(k), precision_(unit_power_precision(p, k)), residue_degree_(1) {
  if (k < 1) throw std::invalid_argument("UnitPowerTable: k must be positive");
  if (!is_prime(p)) throw std::invalid_argument("UnitPowerTable: p must be prime");
  modulus_ = checked_pow(p, precision_);
  constexpr i64 kTableLimit = i64{1} << 22;
  if (modulus_ <= kTableLimit) {
    min_root_.assign(static_cast<std::size_t>(modulus_), -1);
    for (i64 x = 1; x < modulus_; ++x) {
      if (x % p == 0) continue;
      i64 r = powmod(x, static_cast<u64>(k), modulus_);
      if (min_root_[r] < 0) min_root_[r] = static_cast<std::int32_t>(x);
    }
  } else if (p != 2 && precision_ == 1) {
    residue_degree_ = static_cast<int>(std::gcd(static_cast<i64>(k), p - 1));
  } else {
    throw std::domain_error("UnitPowerTable: p^e too large to tabulate");
  }
}

bool UnitPowerTable::contains(i64 u) const {
  i64 r = mod(u, modulus_);
  if (!min_root_.empty()) return min_root_[r] >= 0;
  if (r % p_ == 0) return false;
  return powmod(r, static_cast<u64>((p_ - 1) / residue_degree_), p_) == 1;
}

std::optional<i64> UnitPowerTable::root(i64 u) const {
  i64 r = mod(u, modulus_);
  if (!min_root_.empty()) {
    if (min_root_[r] < 0) return std::nullopt;
    return min_root_[r];
  }
  if (r % p_ == 0) return std::nullopt;
  return kth_root_mod(r, k_, p_);
}

const UnitPowerTable& unit_power_table(i64 p, int k) {
  static std::mutex mutex;
  static std::map<std::pair<i64, int>, std::unique_ptr<UnitPowerTable>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[{p, k}];
  if (!slot) slot = std::make_unique<UnitPowerTable>(p, k);
  return *slot;
}

bool unit_kth_power_in_Zp(i64 u, int k, i64 p) {
  if (mod(u, p) == 0) throw std::invalid_argument("unit_kth_power_in_Zp: p divides u");
  return unit_power_table(p, k).contains(u);
}

std::optional<i64> kth_root_mod_prime_power(i64 u, int k, i64 p, int precision) {
  const UnitPowerTable& table = unit_power_table(p, k);
  std::optional<i64> r = table.root(u);
  if (!r) return std::nullopt;
  const int e = table.precision();
  if (precision <= e) return mod(*r, checked_pow(p, precision));
  const int alpha = vp(k, p);
  i64 x = *r;
  i64 modulus = table.modulus();
  // x^k = u (mod p^j) with j >= 2*alpha + 1 lifts uniquely through
  // x + t * p^(j - alpha), t in [0, p).
  for (int j = e; j < precision; ++j) {
    i64 step = checked_pow(p, j - alpha);
    i64 next = checked_pow(p, j + 1);
    i64 target = mod(u, next);
    bool lifted = false;
    for (i64 t = 0; t < p; ++t) {
      i64 candidate = mod(static_cast<i128>(x) + static_cast<i128>(t) * step, next);
      if (powmod(candidate, static_cast<u64>(k), next) == target) {
        x = candidate;
        lifted = true;
        break;
      }
    }
    if (!lifted) throw std::logic_error("kth_root_mod_prime_power: lifting failed");
    modulus = next;
  }
  return mod(x, modulus);
}

std::optional<i128> integer_kth_root(i128 n, int k) {
  if (k < 1) throw std::invalid_argument("integer_kth_root: k must be positive");
  if (k == 1) return n;
  if (n == 0) return i128{0};
  if (n < 0) {
    if (k % 2 == 0) return std::nullopt;
    auto r = integer_kth_root(-n, k);
    if (!r) return std::nullopt;
    return -*r;
  }
  // power(x) clamps to n + 1 on overflow; monotone in x.
  auto power_cmp = [&](i128 x) -> int {
    i128 acc = 1;
    for (int i = 0; i < k; ++i) {
      if (__builtin_mul_overflow(acc, x, &acc)) return 1;
      if (acc > n) return 1;
    }
    return acc == n ? 0 : -1;
  };
  i128 lo = 0;
  i128 hi = 1;
  while (power_cmp(hi) < 0) hi *= 2;
  while (lo < hi) {
    i128 mid = lo + (hi - lo) / 2;
    if (power_cmp(mid) < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (power_cmp(lo) == 0) return lo;
  return std::nullopt;
}

}  // namespace hasse
