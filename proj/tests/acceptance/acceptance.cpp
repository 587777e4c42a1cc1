// Acceptance suite: one PASS/FAIL/WARN line per criterion. Exit status is
// nonzero iff some hard criterion fails; WARN never fails the run.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "hasse/census.hpp"
#include "hasse/export.hpp"
#include "hasse/families.hpp"
#include "hasse/globalsearch.hpp"
#include "hasse/localsolve.hpp"
#include "hasse/verdict_cache.hpp"
#include "oracles.hpp"

namespace {

using namespace hasse;
using hasse::testing::Gen;

// Wall-clock limits in seconds.
constexpr double kLimitSelmer = 30;
constexpr double kLimitLocalOracle = 300;
constexpr double kLimitGlobalOracle = 300;
constexpr double kLimitCensus = 600;
constexpr double kLimitDensity = 600;
constexpr double kLimitFamilies = 300;
constexpr double kLimitQuadruples = 60;
constexpr double kLimitCertificates = 300;

// Archived ratios are compared to this absolute tolerance (the CSV carries
// six decimals); counts must match exactly.
constexpr double kRatioTolerance = 5e-7;

enum class Status { pass, warn, fail };

struct Outcome {
  Status status = Status::pass;
  std::string detail;
};

Outcome fail(std::string why) { return {Status::fail, std::move(why)}; }

std::string fixture_dir;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome selmer() {
  const FermatEquation eq{3, 4, 5, 3};
  const SolubilityCertificate cert = certify(eq);
  if (!cert.real_soluble || !cert.everywhere_soluble) return fail("certificate not everywhere soluble");
  if (cert.checked_primes.size() != 34) {
    return fail("expected 34 checked primes, got " + std::to_string(cert.checked_primes.size()));
  }
  if (!replay_certificate(cert)) return fail("certificate does not replay");
  const auto sols = fermat_solutions(eq, 1000);
  if (!sols.empty()) return fail("unexpected solution below 1000");
  return {Status::pass, "everywhere locally soluble over 34 primes; no solution with max |x_i| <= 1000"};
}

Outcome local_oracle() {
  Gen gen(20260101);
  const auto primes = primes_up_to(23);
  LocalOptions points;
  points.strategy = SearchStrategy::exhaustive_points;
  points.shortcuts = false;
  LocalOptions fibres;
  fibres.shortcuts = false;
  int instances = 0, comparisons = 0, engine_mismatch = 0, strategy_mismatch = 0, invalid = 0;
  std::string first_problem;
  for (; instances < 500; ++instances) {
    const int k = static_cast<int>(gen.uniform(3, 5));
    const ThueEquation eq{gen.nonzero(30), gen.nonzero(30), k};
    for (i64 p : primes) {
      const auto oracle = testing::thue_witness_oracle(eq.a, eq.b, k, p);
      if (!oracle) return fail("oracle modulus too large for " + describe(eq));
      const LocalVerdict engine = thue_local(eq, p);
      const LocalVerdict a = thue_local(eq, p, points);
      const LocalVerdict b = thue_local(eq, p, fibres);
      ++comparisons;
      if (engine.soluble != *oracle) ++engine_mismatch;
      if (a.soluble != b.soluble || a.soluble != *oracle) ++strategy_mismatch;
      for (const LocalVerdict* v : {&engine, &a, &b}) {
        if (v->soluble &&
            (!v->witness || hensel_witness_valid(eq, v->witness->point, p) != v->witness->precision_n)) {
          ++invalid;
        }
      }
      if ((engine_mismatch || strategy_mismatch || invalid) && first_problem.empty()) {
        first_problem = describe(eq) + " at p=" + std::to_string(p);
      }
    }
  }
  std::ostringstream os;
  os << instances << " instances, " << comparisons << " (equation, prime) pairs; mismatches: engine "
     << engine_mismatch << ", points vs fibres " << strategy_mismatch << ", invalid witnesses " << invalid;
  if (engine_mismatch || strategy_mismatch || invalid) return fail(os.str() + "; first at " + first_problem);
  return {Status::pass, os.str()};
}

Outcome global_oracle() {
  Gen gen(20260102);
  for (int i = 0; i < 200; ++i) {
    const int k = static_cast<int>(gen.uniform(3, 4));
    i64 a = gen.nonzero(20), b = gen.nonzero(20);
    if (i % 4 == 0) {
      // Seed some instances that do have solutions.
      const i64 x = gen.uniform(-3, 3), y = gen.uniform(1, 3);
      const auto line = pairs_on_line(x, y, k, 20);
      if (!line.empty()) std::tie(a, b) = gen.pick(line);
    }
    const i64 B = gen.uniform(0, 30);
    std::vector<std::pair<i64, i64>> got;
    for (const auto& s : thue_solutions({a, b, k}, B)) got.emplace_back(s.point[0], s.point[1]);
    if (got != testing::brute_thue_points(a, b, k, B)) {
      return fail("thue_solutions differs from brute force for " + describe(ThueEquation{a, b, k}));
    }
  }
  i64 checked_heights = 0;
  for (i64 H = 1; H <= 60; ++H) {
    const i64 B = height_bound(3, H, 1.0).B;
    std::set<std::pair<i64, i64>> by_equation, by_solution;
    for (i64 a = -H; a <= H; ++a) {
      for (i64 b = -H; b <= H; ++b) {
        if (a != 0 && b != 0 && !thue_solutions({a, b, 3}, B).empty()) by_equation.insert({a, b});
      }
    }
    for (i64 x = -B; x <= B; ++x) {
      for (i64 y = -B; y <= B; ++y) {
        if (x == 0 && y == 0) continue;
        for (const auto& ab : pairs_on_line(x, y, 3, H)) by_solution.insert(ab);
      }
    }
    if (by_equation != by_solution) return fail("duality fails at k=3, H=" + std::to_string(H));
    ++checked_heights;
  }
  return {Status::pass, "200 random instances agree with brute force; duality exact for k=3, H=1.." +
                            std::to_string(checked_heights)};
}

Outcome census_sanity() {
  VerdictCache cache;
  CensusOptions options;
  options.local.cache = &cache;
  const CensusRow t3 = thue_census(3, {1}, options)[0];
  const CensusRow t4 = thue_census(4, {1}, options)[0];
  const CensusRow f6 = fermat_census(6, {1}, options)[0];
  std::ostringstream os;
  os << "k=3 H=1 (" << t3.loc_count << "," << t3.glob_count << "), k=4 H=1 (" << t4.loc_count << ","
     << t4.glob_count << "), ternary k=6 H=1 (" << f6.loc_count << "," << f6.glob_count << ")";
  if (t3.loc_count != 4 || t3.glob_count != 4) return fail(os.str());
  if (t4.loc_count != 3 || t4.glob_count != 3) return fail(os.str());
  if (f6.loc_count != 6 || f6.glob_count != 6) return fail(os.str());
  std::vector<i64> heights;
  for (i64 H = 10; H <= 200; H += 10) heights.push_back(H);
  const auto rows = thue_census(3, heights, options);
  for (const CensusRow& row : rows) {
    if (row.glob_count > row.loc_count) return fail("glob > loc at H=" + std::to_string(row.H));
  }
  os << "; glob <= loc for k=3 H=10..200 (H=200: " << rows.back().loc_count << ","
     << rows.back().glob_count << ")";
  return {Status::pass, os.str()};
}

Outcome density_trend() {
  CensusOptions options;
  options.slack = 4.0;
  VerdictCache cache;
  options.local.cache = &cache;
  const auto rows = thue_census(4, {40, 400}, options);
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << "ratio(40) = " << rows[0].ratio
     << ", ratio(400) = " << rows[1].ratio;

  const std::string archived = read_file(fixture_dir + "/density_k4_slack4.csv");
  if (archived.empty()) return fail(os.str() + "; archived fixture missing");
  // Compare counts exactly and ratios within tolerance.
  std::istringstream lines(archived);
  std::string line;
  std::getline(lines, line);  // header
  for (const CensusRow& row : rows) {
    if (!std::getline(lines, line)) return fail(os.str() + "; fixture too short");
    i64 H, k, loc, glob, B;
    double ratio;
    char c;
    std::istringstream fields(line);
    fields >> H >> c >> k >> c >> loc >> c >> glob >> c >> B >> c >> ratio;
    if (H != row.H || loc != row.loc_count || glob != row.glob_count || B != row.glob_bound_B ||
        std::abs(ratio - row.ratio) > kRatioTolerance) {
      return fail(os.str() + "; differs from archived row '" + line + "'");
    }
  }
  if (!(rows[1].ratio < rows[0].ratio)) return {Status::warn, os.str() + "; expected decrease not seen"};
  return {Status::pass, os.str() + "; matches archived fixture"};
}

Outcome families() {
  int certified = 0;
  int total = 0;
  for (const auto& [k, want] : {std::pair<int, std::size_t>{3, 25}, {4, 10}}) {
    StreamOptions options;
    options.jobs = 2;
    const PairStreamResult res = pair_stream(k, default_modulus(k), 1'000'000, want, options);
    if (res.pairs.size() != want) return fail("pair stream for k=" + std::to_string(k) + " too short");
    for (const FamilyPair& pair : res.pairs) {
      ++total;
      if (certify(pair.equation).everywhere_soluble) ++certified;
    }
  }
  if (certified != total) {
    return fail(std::to_string(certified) + "/" + std::to_string(total) + " pairs certified");
  }
  Gen gen(20260106);
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const auto ps = gen.primes_3mod4(4, 3, 100'000);
    bool found = false;
    for (int skip = 0; skip < 4 && !found; ++skip) {
      std::vector<i64> t;
      for (int j = 0; j < 4; ++j) {
        if (j != skip) t.push_back(ps[j]);
      }
      found = is_good_triple(t[0], t[1], t[2]).has_value();
    }
    if (!found) ++failures;
  }
  if (failures) return fail(std::to_string(failures) + " quadruples without a good triple");
  return {Status::pass, "35/35 pairs certified (25 at k=3, 10 at k=4); 200/200 quadruples contain a good triple"};
}

Outcome quadruples() {
  int boxes = 0;
  for (int k : {3, 4}) {
    for (i64 X = 1; X <= 4; ++X) {
      for (i64 Y = 1; Y <= 4; ++Y) {
        for (i64 Z : {8, 16, 64, 256}) {
          const i64 got = quadruple_count({X, Y, Z, k});
          const i64 want = testing::brute_quadruples(X, Y, Z, k);
          if (got != want) {
            return fail("box X=" + std::to_string(X) + " Y=" + std::to_string(Y) + " Z=" +
                        std::to_string(Z) + " k=" + std::to_string(k));
          }
          ++boxes;
        }
      }
    }
  }
  const i64 example = quadruple_count({2, 1, 64, 3});
  if (example != 1) return fail("N(2,1,64) at k=3 is " + std::to_string(example));
  return {Status::pass, std::to_string(boxes) + " boxes agree with brute force; N(2,1,64) = 1 at k=3"};
}

Outcome certificates() {
  Gen gen(20260108);
  int witnesses = 0;
  for (int i = 0; i < 100; ++i) {
    const int k = static_cast<int>(gen.uniform(3, 6));
    const Equation eq = gen.coin()
                            ? Equation{ThueEquation{gen.nonzero(1000), gen.nonzero(1000), k}}
                            : Equation{FermatEquation{gen.nonzero(100), gen.nonzero(100), gen.nonzero(100), k}};
    const SolubilityCertificate cert = certify(eq);
    const std::string text = certificate_json(cert);
    SolubilityCertificate parsed;
    try {
      parsed = parse_certificate_json(text);
    } catch (const std::exception& e) {
      return fail(std::string("parse failed: ") + e.what());
    }
    if (!(parsed == cert)) return fail("round trip changed " + describe(eq));
    for (const LocalVerdict& v : parsed.checked_primes) {
      if (!v.witness) continue;
      ++witnesses;
      if (hensel_witness_valid(parsed.equation, v.witness->point, v.prime) != v.witness->precision_n) {
        return fail("witness fails at p=" + std::to_string(v.prime) + " for " + describe(eq));
      }
    }
    if (certificate_json(parsed) != text) return fail("re-serialization differs for " + describe(eq));
  }
  return {Status::pass, "100 certificates, " + std::to_string(witnesses) +
                            " witnesses replayed; re-serialization byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  fixture_dir = argc > 1 ? argv[1] : HASSE_FIXTURE_DIR;
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Selmer curve", kLimitSelmer, selmer},
      {2, "local oracle equivalence", kLimitLocalOracle, local_oracle},
      {3, "global oracle equivalence", kLimitGlobalOracle, global_oracle},
      {4, "census sanity", kLimitCensus, census_sanity},
      {5, "density trend", kLimitDensity, density_trend},
      {6, "families", kLimitFamilies, families},
      {7, "quadruple count", kLimitQuadruples, quadruples},
      {8, "certificate round trip", kLimitCertificates, certificates},
  };
  bool ok = true;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = fail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit && outcome.status != Status::fail) {
      outcome = fail(outcome.detail + "; exceeded " + std::to_string(static_cast<int>(c.limit)) + " s");
    }
    const char* label = outcome.status == Status::pass ? "PASS" : outcome.status == Status::warn ? "WARN" : "FAIL";
    std::cout << label << " criterion " << c.id << " (" << c.name << "): " << outcome.detail << " ["
              << std::fixed << std::setprecision(1) << seconds << " s]" << std::endl;
    ok = ok && outcome.status != Status::fail;
  }
  return ok ? 0 : 1;
}
