#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hasse/census.hpp"
#include "hasse/export.hpp"
#include "hasse/families.hpp"
#include "hasse/globalsearch.hpp"
#include "hasse/localsolve.hpp"
#include "hasse/verdict_cache.hpp"
#include "hasse/version.hpp"
#include "json.hpp"

namespace hasse::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kFailure = 2;

struct RunConfig {
  std::string subcommand;
  i64 a = 0, b = 0, c = 0, p = 0;
  bool has_c = false;
  int k = 3;
  std::string H_text;
  std::vector<i64> H_list;
  double slack = 4.0;
  i64 budget = 100'000'000;
  std::string out;
  std::string format;
  int jobs = 1;
  i64 seed = 0;
  std::optional<i64> B;
  std::optional<i64> modulus;
  i64 limit = 100'000;
  i64 count = 25;
  i64 X = 1, Y = 1, Z = 1;
  i64 u = 0, v = 0, w = 0;
  bool coprime_only = false;
  std::string plot_data;
  std::string strategy = "fibres";
  bool no_shortcuts = false;
  bool with_certificates = false;
  i64 k3_cap = 500;
};

CLI::Validator plain_integer() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        static const std::regex re("[+-]?[0-9]+");
        return std::regex_match(s, re) ? "" : "expected a plain decimal integer, got '" + s + "'";
      },
      "", "plain_integer");
}

CLI::Validator plain_decimal() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        static const std::regex re("[0-9]+(\\.[0-9]+)?");
        return std::regex_match(s, re) ? "" : "expected a plain decimal number, got '" + s + "'";
      },
      "", "plain_decimal");
}

CLI::Validator decimal_list() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        static const std::regex re("[0-9]+(,[0-9]+)*");
        return std::regex_match(s, re) ? "" : "expected comma-separated integers, got '" + s + "'";
      },
      "", "decimal_list");
}

std::vector<i64> parse_list(const std::string& text) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

Equation equation_of(const RunConfig& cfg) {
  Equation eq = cfg.has_c ? Equation(FermatEquation{cfg.a, cfg.b, cfg.c, cfg.k})
                          : Equation(ThueEquation{cfg.a, cfg.b, cfg.k});
  std::visit([](const auto& e) { e.validate(); }, eq);
  return eq;
}

ojson config_json(const RunConfig& cfg) {
  ojson j;
  j["subcommand"] = cfg.subcommand;
  const std::string& s = cfg.subcommand;
  const bool equation = s == "local" || s == "certify" || s == "search";
  if (equation) {
    j["a"] = cfg.a;
    j["b"] = cfg.b;
    if (cfg.has_c) j["c"] = cfg.c;
    j["k"] = cfg.k;
  }
  if (s == "local") {
    j["p"] = cfg.p;
  }
  if (s == "local" || s == "certify" || s.rfind("census", 0) == 0 || s.rfind("families", 0) == 0) {
    j["strategy"] = cfg.strategy;
    j["shortcuts"] = !cfg.no_shortcuts;
    j["budget"] = cfg.budget;
  }
  if (s == "search") {
    if (cfg.B) j["B"] = *cfg.B;
    j["slack"] = cfg.slack;
  }
  if (s.rfind("census", 0) == 0) {
    j["k"] = cfg.k;
    j["H"] = cfg.H_list;
    j["slack"] = cfg.slack;
    j["coprime_only"] = cfg.coprime_only;
    if (s == "census-thue") j["k3_cap"] = cfg.k3_cap;
  }
  if (s.rfind("families", 0) == 0) {
    j["k"] = cfg.k;
    j["modulus"] = cfg.modulus ? *cfg.modulus : default_modulus(cfg.k);
    j["limit"] = cfg.limit;
    j["count"] = cfg.count;
    j["with_certificates"] = cfg.with_certificates;
  }
  if (s == "count-quadruples") {
    j["k"] = cfg.k;
    j["X"] = cfg.X;
    j["Y"] = cfg.Y;
    j["Z"] = cfg.Z;
  }
  if (s == "abc-quality") {
    j["u"] = cfg.u;
    j["v"] = cfg.v;
    j["w"] = cfg.w;
  }
  j["format"] = cfg.format;
  j["jobs"] = cfg.jobs;
  j["seed"] = cfg.seed;
  return j;
}

class Output {
 public:
  Output(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  std::string comment_header() const {
    return "# hasse " + std::string(kVersion) + "\n# config " + config_json(cfg_).dump() + "\n";
  }

  void json(ojson result) const {
    ojson envelope;
    envelope["tool"] = "hasse";
    envelope["version"] = std::string(kVersion);
    envelope["config"] = config_json(cfg_);
    envelope["result"] = std::move(result);
    emit(envelope.dump(2) + "\n");
  }

  void csv(const std::string& body) const { emit(comment_header() + body); }

  // Bare on stdout; files still carry the run header.
  void text(const std::string& body) const {
    if (cfg_.out.empty()) {
      out_ << body;
    } else {
      write_text_file(cfg_.out, comment_header() + body);
    }
  }

 private:
  void emit(const std::string& content) const {
    if (cfg_.out.empty()) {
      out_ << content;
    } else {
      write_text_file(cfg_.out, content);
    }
  }

  const RunConfig& cfg_;
  std::ostream& out_;
};

ojson verdict_json(const LocalVerdict& v) {
  ojson j;
  j["p"] = v.prime;
  j["soluble"] = v.soluble;
  j["method"] = std::string(to_string(v.method));
  if (v.witness) {
    j["witness"] = {{"point", v.witness->point}, {"n", v.witness->precision_n}};
  } else {
    j["witness"] = nullptr;
  }
  j["search_modulus"] = v.search_modulus;
  return j;
}

ojson abc_json(i64 u, i64 v, i64 w) {
  if (u == 0 || v == 0 || w == 0) return nullptr;
  const AbcTriple t = abc_quality(u, v, w);
  return {{"u", t.u}, {"v", t.v}, {"w", t.w}, {"radical", t.radical_value}, {"quality", t.quality}};
}

LocalOptions local_options(const RunConfig& cfg, VerdictCache* cache) {
  LocalOptions o;
  o.strategy = cfg.strategy == "points" ? SearchStrategy::exhaustive_points
                                        : SearchStrategy::unit_fibres;
  o.shortcuts = !cfg.no_shortcuts;
  o.budget = cfg.budget;
  o.cache = cache;
  return o;
}

void require_format(const RunConfig& cfg, std::initializer_list<std::string_view> allowed) {
  for (std::string_view f : allowed) {
    if (cfg.format == f) return;
  }
  throw CLI::ValidationError("--format", "unsupported format '" + cfg.format +
                                             "' for " + cfg.subcommand);
}

int cmd_local(const RunConfig& cfg, const Output& output, VerdictCache& cache) {
  require_format(cfg, {"json"});
  const Equation eq = equation_of(cfg);
  const LocalVerdict v = local_verdict(eq, cfg.p, local_options(cfg, &cache));
  ojson result;
  result["equation"] = describe(eq);
  result["verdict"] = verdict_json(v);
  output.json(std::move(result));
  return v.soluble ? kOk : kNegative;
}

int cmd_certify(const RunConfig& cfg, const Output& output, VerdictCache& cache) {
  require_format(cfg, {"json"});
  const SolubilityCertificate cert = certify(equation_of(cfg), local_options(cfg, &cache));
  output.json(ojson::parse(certificate_json(cert)));
  return cert.everywhere_soluble ? kOk : kNegative;
}

int cmd_search(const RunConfig& cfg, const Output& output) {
  require_format(cfg, {"json"});
  const Equation eq = equation_of(cfg);
  i64 height = 0;
  for (i64 coefficient : coefficients(eq)) height = std::max(height, coefficient < 0 ? -coefficient : coefficient);
  const i64 B = cfg.B ? *cfg.B
                      : (cfg.has_c ? fermat_height_bound(cfg.k, height, cfg.slack)
                                   : height_bound(cfg.k, height, cfg.slack))
                            .B;
  ojson result;
  result["equation"] = describe(eq);
  result["bound_B"] = B;
  result["conditional"] = !cfg.B.has_value();
  ojson list = ojson::array();
  std::vector<GlobalSolution> found;
  if (const auto* t = std::get_if<ThueEquation>(&eq)) {
    found = thue_solutions(*t, B);
    for (const GlobalSolution& s : found) {
      const i64 u = t->a * checked_pow(s.point[0], t->k);
      const i64 v = t->b * checked_pow(s.point[1], t->k);
      list.push_back({{"point", s.point}, {"abc", abc_json(u, v, -1)}});
    }
  } else {
    const auto& f = std::get<FermatEquation>(eq);
    found = fermat_solutions(f, B);
    for (const GlobalSolution& s : found) {
      const i64 u = f.a * checked_pow(s.point[0], f.k);
      const i64 v = f.b * checked_pow(s.point[1], f.k);
      const i64 w = f.c * checked_pow(s.point[2], f.k);
      list.push_back({{"point", s.point}, {"abc", abc_json(u, v, w)}});
    }
  }
  result["solutions"] = std::move(list);
  output.json(std::move(result));
  return found.empty() ? kNegative : kOk;
}

int cmd_census(const RunConfig& cfg, const Output& output, VerdictCache& cache, bool fermat) {
  require_format(cfg, {"csv", "json"});
  CensusOptions options;
  options.slack = cfg.slack;
  options.jobs = cfg.jobs;
  options.coprime_only = cfg.coprime_only;
  options.k3_height_cap = cfg.k3_cap;
  options.local = local_options(cfg, &cache);
  const std::vector<CensusRow> rows =
      fermat ? fermat_census(cfg.k, cfg.H_list, options) : thue_census(cfg.k, cfg.H_list, options);
  if (cfg.format == "csv") {
    output.csv(census_csv(rows));
  } else {
    output.json(ojson::parse(census_json(rows)));
  }
  if (!cfg.plot_data.empty()) {
    write_text_file(cfg.plot_data, output.comment_header() + plot_data(rows));
  }
  return kOk;
}

int cmd_families(const RunConfig& cfg, const Output& output, VerdictCache& cache, bool triples) {
  require_format(cfg, {"csv", "json"});
  if (cfg.count < 0) throw CLI::ValidationError("--count", "must be nonnegative");
  StreamOptions options;
  options.attach_certificates = cfg.with_certificates;
  options.jobs = cfg.jobs;
  options.local = local_options(cfg, &cache);
  const i64 modulus = cfg.modulus ? *cfg.modulus : default_modulus(cfg.k);
  const auto count = static_cast<std::size_t>(cfg.count);
  bool complete;
  if (triples) {
    const TripleStreamResult r = triple_stream(cfg.k, modulus, cfg.limit, count, options);
    complete = r.complete;
    if (cfg.format == "csv") {
      output.csv(triples_csv(r.triples));
    } else {
      output.json({{"complete", r.complete}, {"triples", ojson::parse(triples_json(r.triples))}});
    }
  } else {
    const PairStreamResult r = pair_stream(cfg.k, modulus, cfg.limit, count, options);
    complete = r.complete;
    if (cfg.format == "csv") {
      output.csv(pairs_csv(r.pairs));
    } else {
      output.json({{"complete", r.complete}, {"pairs", ojson::parse(pairs_json(r.pairs))}});
    }
  }
  return complete ? kOk : kNegative;
}

int cmd_quadruples(const RunConfig& cfg, const Output& output) {
  const i64 n = quadruple_count(DyadicBox{cfg.X, cfg.Y, cfg.Z, cfg.k});
  if (cfg.format == "json") {
    output.json({{"count", n}});
  } else {
    require_format(cfg, {"text"});
    output.text(std::to_string(n) + "\n");
  }
  return kOk;
}

int cmd_abc(const RunConfig& cfg, const Output& output) {
  require_format(cfg, {"json"});
  const AbcTriple t = abc_quality(cfg.u, cfg.v, cfg.w);
  output.json({{"u", t.u}, {"v", t.v}, {"w", t.w}, {"radical", t.radical_value},
               {"quality", t.quality}});
  return kOk;
}

std::optional<std::filesystem::path> cache_file() {
  const char* dir = std::getenv("HASSE_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir) /
         ("verdicts-v" + std::to_string(VerdictCache::kFormatVersion) + ".txt");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  CLI::App app{"Local and global solubility of diagonal Thue and Fermat equations", "hasse"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1, 1);

  const CLI::Validator integer = plain_integer();
  const CLI::Validator decimal = plain_decimal();
  const CLI::Validator list = decimal_list();

  auto common = [&](CLI::App* sub, const std::string& default_format) {
    cfg.format = default_format;
    sub->add_option("--out", cfg.out, "Write output to this file instead of stdout");
    sub->add_option("--format", cfg.format, "Output format")->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(integer)->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Recorded in the run configuration")->check(integer);
  };
  auto local_flags = [&](CLI::App* sub) {
    sub->add_option("--budget", cfg.budget, "Candidate evaluations per (equation, prime)")
        ->check(integer)
        ->check(CLI::PositiveNumber);
    sub->add_option("--strategy", cfg.strategy, "Local search: fibres or points")
        ->check(CLI::IsMember({"fibres", "points"}));
    sub->add_flag("--no-shortcuts", cfg.no_shortcuts, "Search even where a shortcut applies");
  };
  auto equation_flags = [&](CLI::App* sub) {
    sub->add_option("--a", cfg.a, "Coefficient a")->required()->check(integer);
    sub->add_option("--b", cfg.b, "Coefficient b")->required()->check(integer);
    sub->add_option("--c", cfg.c, "Coefficient c (ternary equation)")->check(integer);
    sub->add_option("--k", cfg.k, "Degree")->required()->check(integer);
  };

  CLI::App* local = app.add_subcommand("local", "Decide solubility over Z_p");
  equation_flags(local);
  local->add_option("--p", cfg.p, "Prime")->required()->check(integer);
  local_flags(local);

  CLI::App* cert = app.add_subcommand("certify", "Everywhere-local solubility certificate");
  equation_flags(cert);
  local_flags(cert);

  CLI::App* search = app.add_subcommand("search", "Integer solutions in a box");
  equation_flags(search);
  search->add_option("--B", cfg.B, "Box bound (default: abc-conditional bound)")->check(integer);
  search->add_option("--slack", cfg.slack, "Constant in the conditional bound")->check(decimal);

  CLI::App* census_thue = app.add_subcommand("census-thue", "Count pairs (a, b) up to H");
  CLI::App* census_fermat = app.add_subcommand("census-fermat", "Count triples (a, b, c) up to H");
  for (CLI::App* sub : {census_thue, census_fermat}) {
    sub->add_option("--k", cfg.k, "Degree")->required()->check(integer);
    sub->add_option("--H", cfg.H_text, "Ascending comma-separated heights")->required()->check(list);
    sub->add_option("--slack", cfg.slack, "Constant in the conditional bound")->check(decimal);
    sub->add_flag("--coprime-only", cfg.coprime_only, "Only coefficient tuples with gcd 1");
    sub->add_option("--plot-data", cfg.plot_data, "Also write 'H ratio' lines to this file");
    local_flags(sub);
  }
  census_thue->add_option("--k3-cap", cfg.k3_cap, "Largest H accepted at k = 3")->check(integer);

  CLI::App* pairs = app.add_subcommand("families-pairs", "Certified prime pairs");
  CLI::App* triples = app.add_subcommand("families-triples", "Certified prime triples");
  for (CLI::App* sub : {pairs, triples}) {
    sub->add_option("--k", cfg.k, "Degree")->required()->check(integer);
    sub->add_option("--modulus", cfg.modulus, "Congruence modulus (default: lcm(4, ...))")
        ->check(integer);
    sub->add_option("--limit", cfg.limit, "Largest prime scanned")->check(integer);
    sub->add_option("--count", cfg.count, "Number of families to emit")->check(integer);
    sub->add_flag("--with-certificates", cfg.with_certificates, "Embed certificates");
    local_flags(sub);
  }

  CLI::App* quad = app.add_subcommand("count-quadruples", "Dyadic quadruple count");
  quad->add_option("--k", cfg.k, "Degree")->required()->check(integer);
  quad->add_option("--X", cfg.X, "x in (X, 2X]")->required()->check(integer);
  quad->add_option("--Y", cfg.Y, "y in (Y, 2Y]")->required()->check(integer);
  quad->add_option("--Z", cfg.Z, "b y^k in (Z, 2Z]")->required()->check(integer);

  CLI::App* abc = app.add_subcommand("abc-quality", "Quality of a zero-sum triple");
  abc->add_option("--u", cfg.u)->required()->check(integer);
  abc->add_option("--v", cfg.v)->required()->check(integer);
  abc->add_option("--w", cfg.w)->required()->check(integer);

  const std::pair<CLI::App*, const char*> defaults[] = {
      {local, "json"},          {cert, "json"},    {search, "json"}, {census_thue, "csv"},
      {census_fermat, "csv"},   {pairs, "json"},   {triples, "json"}, {quad, "text"},
      {abc, "json"}};
  for (auto [sub, format] : defaults) common(sub, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kOk;
    err << app.help();
    return kFailure;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.subcommand = chosen->get_name();
  for (auto [sub, format] : defaults) {
    if (sub == chosen && chosen->count("--format") == 0) cfg.format = format;
  }
  cfg.has_c = chosen->get_option_no_throw("--c") != nullptr && chosen->count("--c") > 0;
  if (!cfg.H_text.empty()) cfg.H_list = parse_list(cfg.H_text);

  VerdictCache cache;
  const std::optional<std::filesystem::path> persisted = cache_file();
  if (persisted) cache.load(*persisted);

  try {
    const Output output(cfg, out);
    int code = kOk;
    if (chosen == local) code = cmd_local(cfg, output, cache);
    if (chosen == cert) code = cmd_certify(cfg, output, cache);
    if (chosen == search) code = cmd_search(cfg, output);
    if (chosen == census_thue) code = cmd_census(cfg, output, cache, false);
    if (chosen == census_fermat) code = cmd_census(cfg, output, cache, true);
    if (chosen == pairs) code = cmd_families(cfg, output, cache, false);
    if (chosen == triples) code = cmd_families(cfg, output, cache, true);
    if (chosen == quad) code = cmd_quadruples(cfg, output);
    if (chosen == abc) code = cmd_abc(cfg, output);
    if (persisted && cache.size() > 0) {
      std::filesystem::create_directories(persisted->parent_path());
      cache.save(*persisted);
    }
    return code;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (p = " << e.prime() << ", modulus = " << e.modulus()
        << ")\n";
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kFailure;
}

}  // namespace hasse::cli
