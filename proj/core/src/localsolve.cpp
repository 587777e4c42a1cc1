#include "hasse/localsolve.hpp"

#include <algorithm>
#include <map>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hasse/verdict_cache.hpp"

namespace hasse {

void ThueEquation::validate() const {
  if (a == 0 || b == 0) throw std::invalid_argument("Thue equation needs nonzero coefficients");
  if (k < 3) throw std::invalid_argument("Thue equation needs degree k >= 3");
}

void FermatEquation::validate() const {
  if (a == 0 || b == 0 || c == 0) {
    throw std::invalid_argument("Fermat equation needs nonzero coefficients");
  }
  if (k < 3) throw std::invalid_argument("Fermat equation needs degree k >= 3");
}

int degree(const Equation& eq) {
  return std::visit([](const auto& e) { return e.k; }, eq);
}

std::vector<i64> coefficients(const Equation& eq) {
  if (const auto* t = std::get_if<ThueEquation>(&eq)) return {t->a, t->b};
  const auto& f = std::get<FermatEquation>(eq);
  return {f.a, f.b, f.c};
}

std::string describe(const Equation& eq) {
  std::ostringstream out;
  if (const auto* t = std::get_if<ThueEquation>(&eq)) {
    out << t->a << "x^" << t->k << (t->b < 0 ? " - " : " + ") << (t->b < 0 ? -t->b : t->b)
        << "y^" << t->k << " = 1";
  } else {
    const auto& f = std::get<FermatEquation>(eq);
    out << f.a << "x^" << f.k << (f.b < 0 ? " - " : " + ") << (f.b < 0 ? -f.b : f.b) << "y^"
        << f.k << (f.c < 0 ? " - " : " + ") << (f.c < 0 ? -f.c : f.c) << "z^" << f.k << " = 0";
  }
  return out.str();
}

std::string_view to_string(LocalMethod method) {
  switch (method) {
    case LocalMethod::automatic_large_prime: return "automatic_large_prime";
    case LocalMethod::surjectivity_shortcut: return "surjectivity_shortcut";
    case LocalMethod::residue_search: return "residue_search";
    case LocalMethod::exhaustive_hensel: return "exhaustive_hensel";
  }
  return "unknown";
}

std::optional<LocalMethod> parse_local_method(std::string_view text) {
  for (LocalMethod m : {LocalMethod::automatic_large_prime, LocalMethod::surjectivity_shortcut,
                        LocalMethod::residue_search, LocalMethod::exhaustive_hensel}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

i64 large_prime_threshold(int k) {
  i64 kk = k;
  return checked_pow(kk, 2) * checked_pow(kk + 1, 2);
}

namespace {

// sum_i coeffs[i] * x_i^k + constant.
struct Form {
  std::vector<i64> coeffs;
  i64 constant = 0;
  int k = 3;
};

Form form_of(const Equation& eq) {
  if (const auto* t = std::get_if<ThueEquation>(&eq)) return {{t->a, t->b}, -1, t->k};
  const auto& f = std::get<FermatEquation>(eq);
  return {{f.a, f.b, f.c}, 0, f.k};
}

i64 eval_mod(const Form& f, std::span<const i64> point, i64 m) {
  i64 acc = mod(f.constant, m);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    acc = mod(static_cast<i128>(acc) +
                  mulmod(f.coeffs[i], powmod(point[i], static_cast<u64>(f.k), m), m),
              m);
  }
  return acc;
}

std::optional<i128> eval_exact(const Form& f, std::span<const i64> point) {
  i128 acc = f.constant;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    auto power = pow128(point[i], f.k);
    if (!power) return std::nullopt;
    i128 term;
    if (__builtin_mul_overflow(*power, static_cast<i128>(f.coeffs[i]), &term)) return std::nullopt;
    if (__builtin_add_overflow(acc, term, &acc)) return std::nullopt;
  }
  return acc;
}

std::optional<int> gradient_valuation(const Form& f, std::span<const i64> point, i64 p) {
  const int alpha = vp(f.k, p);
  std::optional<int> best;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (point[i] == 0) continue;
    int v = alpha + vp(f.coeffs[i], p) + (f.k - 1) * vp(point[i], p);
    if (!best || v < *best) best = v;
  }
  return best;
}

std::optional<int> witness_precision(const Form& f, std::span<const i64> point, i64 p,
                                     bool require_unit) {
  if (point.size() != f.coeffs.size()) return std::nullopt;
  if (require_unit &&
      std::none_of(point.begin(), point.end(), [p](i64 x) { return mod(x, p) != 0; })) {
    return std::nullopt;
  }
  std::optional<int> n = gradient_valuation(f, point, p);
  if (!n) return std::nullopt;
  const int exponent = 2 * *n + 1;
  i64 modulus = 0;
  try {
    modulus = checked_pow(p, exponent);
  } catch (const std::overflow_error&) {
    modulus = 0;
  }
  if (modulus != 0) {
    if (eval_mod(f, point, modulus) != 0) return std::nullopt;
    return n;
  }
  std::optional<i128> value = eval_exact(f, point);
  if (!value) throw std::overflow_error("hensel_witness_valid: precision exceeds 64-bit range");
  if (*value == 0) return n;
  for (int i = 0; i < exponent; ++i) {
    if (*value % p != 0) return std::nullopt;
    *value /= p;
  }
  return n;
}

// Coefficient valuations brought into [0, k) by x -> p^j x, then the common
// p-power divided out. Over Q_p the normalized form has the same nontrivial
// zeros up to the coordinate scaling.
struct Normalization {
  Form form;
  std::vector<int> scale;  // j_i with x_original = x_normalized / p^(j_i)
  int common = 0;
  bool trivial() const {
    return common == 0 && std::all_of(scale.begin(), scale.end(), [](int j) { return j == 0; });
  }
};

Normalization normalize(const Form& f, i64 p) {
  Normalization norm{f, std::vector<int>(f.coeffs.size(), 0), 0};
  int min_v = -1;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    int v = vp(f.coeffs[i], p);
    norm.scale[i] = v / f.k;
    for (int s = 0; s < norm.scale[i] * f.k; ++s) norm.form.coeffs[i] /= p;
    int reduced = v % f.k;
    if (min_v < 0 || reduced < min_v) min_v = reduced;
  }
  norm.common = min_v;
  for (i64& c : norm.form.coeffs) {
    for (int s = 0; s < min_v; ++s) c /= p;
  }
  return norm;
}

struct SearchResult {
  bool soluble = false;
  std::vector<i64> point;  // valid witness for the searched form
  i64 modulus = 0;
};

class WorkMeter {
 public:
  WorkMeter(i64 budget, i64 p) : budget_(budget), p_(p) {}
  void charge(i64 modulus, i64 amount = 1) {
    used_ += amount;
    if (used_ > budget_) {
      throw BudgetExceeded("local search budget exceeded at modulus " + std::to_string(modulus),
                           p_, modulus);
    }
  }

 private:
  i64 budget_;
  i64 p_;
  i64 used_ = 0;
};

// Raise coordinate l of a point with f = 0 mod p^from (from >= 2n+1, where
// n is the valuation of the l-th partial derivative) to f = 0 mod p^to.
std::vector<i64> lift_coordinate(const Form& f, std::vector<i64> point, std::size_t l, int n,
                                 int from, int to, i64 p) {
  for (int j = from; j < to; ++j) {
    const i64 step = checked_pow(p, j - n);
    const i64 next = checked_pow(p, j + 1);
    const i64 base = point[l];
    bool lifted = false;
    for (i64 t = 0; t < p; ++t) {
      point[l] = mod(static_cast<i128>(base) + static_cast<i128>(t) * step, next);
      if (eval_mod(f, point, next) == 0) {
        lifted = true;
        break;
      }
    }
    if (!lifted) throw std::logic_error("lift_coordinate: Hensel step failed");
  }
  return point;
}

// Representatives t in [0, p) that are the smallest root of t^k mod p,
// ascending, with their k-th powers. A mod-p search that only depends on
// x^k mod p finds the same lexicographically first point when it runs over
// these instead of all residues.
struct PowerClasses {
  std::vector<i64> roots;
  std::vector<i64> powers;
};

constexpr i64 kPowerClassLimit = i64{1} << 22;

const PowerClasses& power_classes(i64 p, int k) {
  static std::mutex mutex;
  static std::map<std::pair<i64, int>, std::unique_ptr<PowerClasses>> memo;
  std::lock_guard lock(mutex);
  auto& slot = memo[{p, k}];
  if (!slot) {
    slot = std::make_unique<PowerClasses>();
    std::vector<bool> seen(static_cast<std::size_t>(p), false);
    for (i64 t = 0; t < p; ++t) {
      const i64 power = powmod(t, static_cast<u64>(k), p);
      if (seen[power]) continue;
      seen[power] = true;
      slot->roots.push_back(t);
      slot->powers.push_back(power);
    }
  }
  return *slot;
}

// Strategy B. Cases are taken with the solved (unit) coordinate running from
// the last index down; coordinates after it are restricted to non-units.
// Free coordinates are built digit by digit, pruning on the congruence
// f = 0 mod p^L while L <= v_p(solved coefficient).
class FibreSearch {
 public:
  FibreSearch(const Form& f, i64 p, WorkMeter& meter)
      : f_(f),
        p_(p),
        meter_(meter),
        alpha_(vp(f.k, p)),
        table_(unit_power_table(p, f.k)),
        e_(table_.precision()) {}

  SearchResult run() {
    SearchResult result;
    const std::size_t s = f_.coeffs.size();
    for (std::size_t case_index = s; case_index-- > 0;) {
      solved_ = case_index;
      v_ = vp(f_.coeffs[solved_], p_);
      depth_ = v_ + e_;
      powers_.assign(static_cast<std::size_t>(depth_) + 1, 1);
      for (int L = 1; L <= depth_; ++L) powers_[L] = checked_pow(p_, L);
      const i64 unit_part = f_.coeffs[solved_] / powers_[v_];
      unit_inverse_ = *invmod(unit_part, table_.modulus());
      free_.clear();
      for (std::size_t j = 0; j < s; ++j) {
        if (j != solved_) free_.push_back(j);
      }
      residues_.assign(s, 0);
      coeff_val_.assign(s, 0);
      for (std::size_t j = 0; j < s; ++j) coeff_val_[j] = vp(f_.coeffs[j], p_);
      result.modulus = std::max(result.modulus, powers_[depth_]);
      const bool found = depth_ == 1 && p_ <= kPowerClassLimit
                             ? flat_search(0, mod(f_.constant, p_), power_classes(p_, f_.k))
                             : descend(1);
      if (found) {
        result.soluble = true;
        result.modulus = powers_[depth_];
        result.point = build_witness();
        return result;
      }
    }
    return result;
  }

 private:
  // Depth 1: every free coordinate only matters through its k-th power mod p.
  bool flat_search(std::size_t t, i64 partial, const PowerClasses& classes) {
    if (t == free_.size()) {
      meter_.charge(p_);
      const i64 w = mod(-partial, p_);
      return w != 0 && table_.contains(mulmod(w, unit_inverse_, p_));
    }
    const std::size_t j = free_[t];
    if (j > solved_) {
      residues_[j] = 0;
      return flat_search(t + 1, partial, classes);
    }
    const i64 c = mod(f_.coeffs[j], p_);
    for (std::size_t idx = 0; idx < classes.roots.size(); ++idx) {
      residues_[j] = classes.roots[idx];
      if (flat_search(t + 1, (partial + mulmod(c, classes.powers[idx], p_)) % p_, classes)) {
        return true;
      }
    }
    residues_[j] = 0;
    return false;
  }

  bool descend(int level) {
    const i64 step = powers_[level - 1];
    const i64 modulus = powers_[level];
    std::vector<i64> digits(free_.size(), 0);
    std::vector<i64> saved(free_.size());
    for (std::size_t t = 0; t < free_.size(); ++t) saved[t] = residues_[free_[t]];
    auto restricted = [&](std::size_t t) { return level == 1 && free_[t] > solved_; };
    while (true) {
      for (std::size_t t = 0; t < free_.size(); ++t) {
        residues_[free_[t]] = saved[t] + digits[t] * step;
      }
      meter_.charge(modulus);
      const Status status = classify(level);
      if (status == Status::accept) return true;
      if (status == Status::open && descend(level + 1)) return true;
      // Odometer over digit tuples, last free coordinate fastest.
      std::size_t t = free_.size();
      while (t > 0) {
        --t;
        if (restricted(t)) continue;
        if (++digits[t] < p_) break;
        digits[t] = 0;
        if (t == 0) {
          t = free_.size() + 1;
          break;
        }
      }
      if (t == free_.size() + 1 || free_.empty()) break;
      bool all_zero = true;
      for (std::size_t u = 0; u < free_.size(); ++u) all_zero = all_zero && digits[u] == 0;
      if (all_zero) break;
    }
    for (std::size_t t = 0; t < free_.size(); ++t) residues_[free_[t]] = saved[t];
    return false;
  }

  enum class Status { prune, open, accept };

  // With free coordinates known mod p^level, the exponent to which their
  // contribution is determined: a unit residue fixes x^k modulo
  // p^(level + alpha), a residue of valuation s < level fixes it modulo
  // p^(ks + level - s + alpha), and a zero residue modulo p^(k level).
  int known_precision(int level) const {
    int known = depth_;
    for (std::size_t j : free_) {
      const i64 r = residues_[j];
      const int s = r == 0 ? level : vp(r, p_);
      const int exponent = s >= level ? f_.k * level : f_.k * s + (level - s) + alpha_;
      known = std::min(known, coeff_val_[j] + exponent);
    }
    return known;
  }

  // The solved coordinate contributes exactly valuation v with unit part in
  // the k-th power classes; test what the known digits already decide.
  Status classify(int level) const {
    const int known = known_precision(level);
    const i64 modulus = powers_[known];
    const i64 w = mod(-partial_sum(modulus), modulus);
    if (known <= v_) return w == 0 ? Status::open : Status::prune;
    if (w % powers_[v_] != 0 || (w / powers_[v_]) % p_ == 0) return Status::prune;
    if (known < depth_) return Status::open;
    return table_.contains(mulmod(w / powers_[v_], unit_inverse_, table_.modulus()))
               ? Status::accept
               : Status::prune;
  }

  i64 partial_sum(i64 modulus) const {
    i64 acc = mod(f_.constant, modulus);
    for (std::size_t j : free_) {
      acc = mod(static_cast<i128>(acc) +
                    mulmod(f_.coeffs[j], powmod(residues_[j], static_cast<u64>(f_.k), modulus),
                           modulus),
                modulus);
    }
    return acc;
  }

  std::vector<i64> build_witness() const {
    // Solve coefficient * x^k = -(rest) to p^(2(alpha+v)+1); the solved
    // coordinate's gradient component then has valuation alpha + v.
    const int root_precision = 2 * alpha_ + v_ + 1;
    const i64 big = checked_pow(p_, root_precision + v_);
    const i64 w = mod(-partial_sum(big), big);
    const i64 small = checked_pow(p_, root_precision);
    const i64 reduced = w / powers_[v_];
    const i64 unit_part = f_.coeffs[solved_] / powers_[v_];
    const i64 u = mulmod(reduced, *invmod(unit_part, small), small);
    std::optional<i64> root = kth_root_mod_prime_power(u, f_.k, p_, root_precision);
    if (!root) throw std::logic_error("FibreSearch: accepted fibre has no root");
    std::vector<i64> point = residues_;
    point[solved_] = *root;
    return point;
  }

  const Form& f_;
  i64 p_;
  WorkMeter& meter_;
  int alpha_;
  const UnitPowerTable& table_;
  int e_;

  std::size_t solved_ = 0;
  int v_ = 0;
  int depth_ = 0;
  i64 unit_inverse_ = 0;
  std::vector<i64> powers_;
  std::vector<std::size_t> free_;
  std::vector<i64> residues_;
  std::vector<int> coeff_val_;
};

// Strategy A. Whole points modulo p^(2 n_c + 1) per last-unit-coordinate
// case, in lexicographic order. The final coordinate is looked up in tables
// of its contributions bucketed modulo p^(2n+1) for every admissible n, so
// only candidates that can close the congruence are visited; the first
// valid point is the same one a plain scan would find.
SearchResult point_search(const Form& f, i64 p, WorkMeter& meter) {
  SearchResult result;
  const std::size_t s = f.coeffs.size();
  const int alpha = vp(f.k, p);
  for (std::size_t solved = s; solved-- > 0;) {
    const int n_case = alpha + vp(f.coeffs[solved], p);
    const int exponent = 2 * n_case + 1;
    i64 modulus = 0;
    try {
      modulus = checked_pow(p, exponent);
    } catch (const std::overflow_error&) {
      throw BudgetExceeded("point search modulus exceeds 64-bit range", p, 0);
    }
    result.modulus = std::max(result.modulus, modulus);
    meter.charge(modulus, modulus);

    std::vector<std::vector<i64>> values(s), contributions(s);
    for (std::size_t j = 0; j < s; ++j) {
      for (i64 t = 0; t < modulus; ++t) {
        bool unit = t % p != 0;
        if (j == solved && !unit) continue;
        if (j > solved && unit) continue;
        values[j].push_back(t);
        contributions[j].push_back(mulmod(f.coeffs[j], powmod(t, static_cast<u64>(f.k), modulus),
                                          modulus));
      }
    }
    // Gradient valuation of the last coordinate alone; kNone when it is 0.
    constexpr int kNone = std::numeric_limits<int>::max();
    const std::size_t last = s - 1;
    auto own_gradient = [&](std::size_t j, i64 value) {
      return value == 0 ? kNone : alpha + vp(f.coeffs[j], p) + (f.k - 1) * vp(value, p);
    };
    // Per n, (contribution mod p^(2n+1), index) for last-coordinate values
    // whose own gradient valuation is exactly n, and at least n; sorted.
    using Bucket = std::vector<std::pair<i64, std::uint32_t>>;
    std::vector<i64> bucket_modulus(static_cast<std::size_t>(n_case) + 1);
    std::vector<Bucket> exact(bucket_modulus.size()), at_least(bucket_modulus.size());
    for (int n = 0; n <= n_case; ++n) {
      bucket_modulus[n] = checked_pow(p, 2 * n + 1);
      for (std::size_t idx = 0; idx < values[last].size(); ++idx) {
        const int g = own_gradient(last, values[last][idx]);
        if (g < n) continue;
        const auto entry = std::make_pair(contributions[last][idx] % bucket_modulus[n],
                                          static_cast<std::uint32_t>(idx));
        at_least[n].push_back(entry);
        if (g == n) exact[n].push_back(entry);
      }
      std::sort(exact[n].begin(), exact[n].end());
      std::sort(at_least[n].begin(), at_least[n].end());
    }
    meter.charge(modulus, static_cast<i64>(values[last].size()) * (n_case + 1));

    std::vector<i64> point(s, 0);
    // The point's gradient valuation is min(partial, own); it must equal n
    // and the sum must vanish mod p^(2n+1).
    auto close_last = [&](i64 partial, int partial_gradient) -> bool {
      std::optional<std::uint32_t> best;
      for (int n = 0; n <= n_case && n <= partial_gradient; ++n) {
        meter.charge(modulus);
        const Bucket& b = partial_gradient == n ? at_least[n] : exact[n];
        const i64 target = mod(-partial, bucket_modulus[n]);
        auto it = std::lower_bound(b.begin(), b.end(), std::make_pair(target, std::uint32_t{0}));
        if (it != b.end() && it->first == target && (!best || it->second < *best)) best = it->second;
      }
      if (!best) return false;
      point[last] = values[last][*best];
      return true;
    };
    auto walk = [&](auto&& self, std::size_t j, i64 partial, int gradient) -> bool {
      if (j == last) return close_last(partial, gradient);
      for (std::size_t idx = 0; idx < values[j].size(); ++idx) {
        point[j] = values[j][idx];
        const int g = std::min(gradient, own_gradient(j, point[j]));
        if (self(self, j + 1, mod(static_cast<i128>(partial) + contributions[j][idx], modulus), g)) {
          return true;
        }
      }
      return false;
    };
    if (walk(walk, 0, mod(f.constant, modulus), kNone)) {
      result.soluble = true;
      result.point = point;
      result.modulus = modulus;
      return result;
    }
  }
  return result;
}

SearchResult run_search(const Form& f, i64 p, SearchStrategy strategy, WorkMeter& meter) {
  if (strategy == SearchStrategy::unit_fibres) return FibreSearch(f, p, meter).run();
  return point_search(f, p, meter);
}

LocalMethod search_method(i64 modulus, i64 p) {
  return modulus == p ? LocalMethod::residue_search : LocalMethod::exhaustive_hensel;
}

// Residue-class modulus that determines a verdict (witness included) for
// coefficients with the given maximal combined valuation.
std::optional<i64> key_modulus(i64 p, int n0) {
  int exponent = 2 * n0 + 1 + (p == 2 ? 2 : 0);
  try {
    return checked_pow(p, exponent);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

VerdictKey make_key(std::uint8_t kind, const Form& f, i64 p, const LocalOptions& options,
                    std::optional<int> n0) {
  VerdictKey key;
  key.kind = kind;
  key.strategy = static_cast<std::uint8_t>(options.strategy);
  key.shortcuts = options.shortcuts ? 1 : 0;
  key.k = f.k;
  key.p = p;
  std::optional<i64> modulus = n0 ? key_modulus(p, *n0) : std::nullopt;
  key.exact = modulus ? 0 : 1;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    key.residues[i] = modulus ? mod(f.coeffs[i], *modulus) : f.coeffs[i];
  }
  return key;
}

void require_prime(i64 p) {
  if (!is_prime(p)) throw std::invalid_argument("local solubility requires a prime p");
}

bool coprime_to_all(i64 p, int k, const std::vector<i64>& coeffs) {
  if (k % p == 0) return false;
  return std::all_of(coeffs.begin(), coeffs.end(), [p](i64 c) { return c % p != 0; });
}

std::optional<LocalMethod> shortcut_for(i64 p, int k, const std::vector<i64>& coeffs) {
  if (!coprime_to_all(p, k, coeffs)) return std::nullopt;
  if (p > large_prime_threshold(k)) return LocalMethod::automatic_large_prime;
  if (p != 2 && std::gcd(static_cast<i64>(k), p - 1) <= 2) return LocalMethod::surjectivity_shortcut;
  return std::nullopt;
}

// A shortcut verdict is decided without search; the witness is the first
// residue point found modulo p, which the shortcut guarantees to exist.
LocalVerdict shortcut_verdict(const Form& f, i64 p, LocalMethod method, WorkMeter& meter) {
  SearchResult found = FibreSearch(f, p, meter).run();
  if (!found.soluble) throw std::logic_error("shortcut verdict without residue witness");
  std::optional<int> n = witness_precision(f, found.point, p, f.constant == 0);
  if (!n) throw std::logic_error("shortcut witness failed validation");
  return {p, true, HenselWitness{found.point, *n, p}, method, found.modulus};
}

// Map a witness of the normalized form back to a witness of the original.
std::vector<i64> denormalize_witness(const Form& original, const Normalization& norm,
                                     const std::vector<i64>& point, i64 p) {
  const Form& g = norm.form;
  std::optional<int> n = gradient_valuation(g, point, p);
  if (!n) throw std::logic_error("denormalize_witness: degenerate witness");
  std::size_t lead = 0;
  const int alpha = vp(g.k, p);
  for (std::size_t i = 0; i < g.coeffs.size(); ++i) {
    if (point[i] == 0) continue;
    if (alpha + vp(g.coeffs[i], p) + (g.k - 1) * vp(point[i], p) == *n) {
      lead = i;
      break;
    }
  }
  const int max_scale = *std::max_element(norm.scale.begin(), norm.scale.end());
  const int start = 2 * *n + 1;
  std::vector<i64> lifted = point;
  for (int precision = start; precision < 62; ++precision) {
    try {
      if (precision > start) {
        lifted = lift_coordinate(g, lifted, lead, *n, precision - 1, precision, p);
      }
      std::vector<i64> candidate(lifted.size());
      for (std::size_t i = 0; i < lifted.size(); ++i) {
        i64 factor = checked_pow(p, max_scale - norm.scale[i]);
        if (__builtin_mul_overflow(lifted[i], factor, &candidate[i])) {
          throw std::overflow_error("denormalize_witness: overflow");
        }
      }
      int shift = -1;
      for (i64 x : candidate) {
        if (x == 0) continue;
        int v = vp(x, p);
        if (shift < 0 || v < shift) shift = v;
      }
      for (i64& x : candidate) {
        for (int s = 0; s < shift; ++s) x /= p;
      }
      if (witness_precision(original, candidate, p, true)) return candidate;
    } catch (const std::overflow_error&) {
      break;
    }
  }
  throw std::logic_error("denormalize_witness: no witness within 64-bit precision");
}

std::vector<i64> small_primes_for(int k) {
  static std::mutex mutex;
  static std::map<int, std::vector<i64>> memo;
  std::lock_guard lock(mutex);
  auto it = memo.find(k);
  if (it != memo.end()) return it->second;
  return memo[k] = primes_up_to(large_prime_threshold(k));
}

}  // namespace

std::optional<int> hensel_witness_valid(const Equation& eq, std::span<const i64> point, i64 p) {
  return witness_precision(form_of(eq), point, p, std::holds_alternative<FermatEquation>(eq));
}

LocalVerdict thue_local(const ThueEquation& eq, i64 p, const LocalOptions& options) {
  eq.validate();
  require_prime(p);
  const Form f = form_of(eq);

  const bool a_unit = eq.a % p != 0;
  const bool b_unit = eq.b % p != 0;
  std::optional<VerdictKey> key;
  if (options.cache) {
    int n0 = vp(eq.k, p) + vp(eq.a, p) + vp(eq.b, p);
    key = make_key(0, f, p, options, n0);
    if (auto hit = options.cache->find(*key)) return *hit;
  }

  LocalVerdict verdict;
  WorkMeter meter(options.budget, p);
  if (!a_unit && !b_unit) {
    // a x^k + b y^k - 1 = -1 (mod p) at every point.
    verdict = {p, false, std::nullopt, LocalMethod::residue_search, p};
  } else if (auto method = options.shortcuts ? shortcut_for(p, eq.k, f.coeffs) : std::nullopt) {
    verdict = shortcut_verdict(f, p, *method, meter);
  } else {
    SearchResult found = run_search(f, p, options.strategy, meter);
    verdict.prime = p;
    verdict.soluble = found.soluble;
    verdict.search_modulus = found.modulus;
    verdict.method = search_method(found.modulus, p);
    if (found.soluble) {
      std::optional<int> n = witness_precision(f, found.point, p, false);
      if (!n) throw std::logic_error("thue_local: search produced an invalid witness");
      verdict.witness = HenselWitness{found.point, *n, p};
    }
  }
  if (key) options.cache->insert(*key, verdict);
  return verdict;
}

LocalVerdict fermat_local(const FermatEquation& eq, i64 p, const LocalOptions& options) {
  eq.validate();
  require_prime(p);
  const Form f = form_of(eq);
  const Normalization norm = normalize(f, p);

  std::optional<VerdictKey> key;
  if (options.cache) {
    std::optional<int> n0;
    if (norm.trivial()) {
      int max_v = 0;
      for (i64 c : f.coeffs) max_v = std::max(max_v, vp(c, p));
      n0 = vp(eq.k, p) + max_v;
    }
    key = make_key(1, f, p, options, n0);
    if (auto hit = options.cache->find(*key)) return *hit;
  }

  LocalVerdict verdict;
  WorkMeter meter(options.budget, p);
  if (auto method = options.shortcuts ? shortcut_for(p, eq.k, f.coeffs) : std::nullopt) {
    verdict = shortcut_verdict(f, p, *method, meter);
  } else {
    SearchResult found = run_search(norm.form, p, options.strategy, meter);
    verdict.prime = p;
    verdict.soluble = found.soluble;
    verdict.search_modulus = found.modulus;
    verdict.method = search_method(found.modulus, p);
    if (found.soluble) {
      std::vector<i64> point =
          norm.trivial() ? found.point : denormalize_witness(f, norm, found.point, p);
      std::optional<int> n = witness_precision(f, point, p, true);
      if (!n) throw std::logic_error("fermat_local: search produced an invalid witness");
      verdict.witness = HenselWitness{point, *n, p};
    }
  }
  if (key) options.cache->insert(*key, verdict);
  return verdict;
}

LocalVerdict local_verdict(const Equation& eq, i64 p, const LocalOptions& options) {
  if (const auto* t = std::get_if<ThueEquation>(&eq)) return thue_local(*t, p, options);
  return fermat_local(std::get<FermatEquation>(eq), p, options);
}

bool real_soluble(const Equation& eq) {
  if (degree(eq) % 2 == 1) return true;
  if (const auto* t = std::get_if<ThueEquation>(&eq)) return t->a > 0 || t->b > 0;
  const auto& f = std::get<FermatEquation>(eq);
  bool all_positive = f.a > 0 && f.b > 0 && f.c > 0;
  bool all_negative = f.a < 0 && f.b < 0 && f.c < 0;
  return !all_positive && !all_negative;
}

std::vector<i64> prime_checklist(const Equation& eq) {
  std::visit([](const auto& e) { e.validate(); }, eq);
  const int k = degree(eq);
  std::vector<i64> primes = small_primes_for(k);
  const i64 threshold = large_prime_threshold(k);
  auto add_factors = [&](i64 n) {
    for (auto [p, e] : factorize(n).factors) {
      if (p > threshold) primes.push_back(p);
    }
  };
  for (i64 c : coefficients(eq)) add_factors(c);
  add_factors(k);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

SolubilityCertificate certify(const Equation& eq, const LocalOptions& options) {
  SolubilityCertificate cert;
  cert.equation = eq;
  cert.real_soluble = real_soluble(eq);
  cert.threshold = large_prime_threshold(degree(eq));
  bool all_local = true;
  for (i64 p : prime_checklist(eq)) {
    cert.checked_primes.push_back(local_verdict(eq, p, options));
    all_local = all_local && cert.checked_primes.back().soluble;
  }
  cert.everywhere_soluble = cert.real_soluble && all_local;
  return cert;
}

bool everywhere_locally_soluble(const Equation& eq, const LocalOptions& options) {
  if (!real_soluble(eq)) return false;
  for (i64 p : prime_checklist(eq)) {
    if (!local_verdict(eq, p, options).soluble) return false;
  }
  return true;
}

bool replay_certificate(const SolubilityCertificate& cert) {
  if (cert.real_soluble != real_soluble(cert.equation)) return false;
  if (cert.threshold != large_prime_threshold(degree(cert.equation))) return false;
  std::vector<i64> primes;
  bool all_local = true;
  for (const LocalVerdict& v : cert.checked_primes) {
    primes.push_back(v.prime);
    all_local = all_local && v.soluble;
    if (v.soluble) {
      if (!v.witness || v.witness->prime != v.prime) return false;
      std::optional<int> n = hensel_witness_valid(cert.equation, v.witness->point, v.prime);
      if (!n || *n != v.witness->precision_n) return false;
    } else if (v.witness) {
      return false;
    }
  }
  if (primes != prime_checklist(cert.equation)) return false;
  return cert.everywhere_soluble == (cert.real_soluble && all_local);
}

}  // namespace hasse
