#include "hasse/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hasse {

using ojson = nlohmann::ordered_json;

namespace {

std::string fixed6(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

ojson row_json(const CensusRow& r) {
  ojson j;
  j["H"] = r.H;
  j["k"] = r.k;
  j["loc"] = r.loc_count;
  j["glob"] = r.glob_count;
  j["bound_B"] = r.glob_bound_B;
  j["ratio"] = std::isnan(r.ratio) ? ojson(nullptr) : ojson(r.ratio);
  j["conditional"] = r.conditional;
  return j;
}

ojson equation_json(const Equation& eq) {
  ojson j;
  if (const auto* t = std::get_if<ThueEquation>(&eq)) {
    j["a"] = t->a;
    j["b"] = t->b;
    j["k"] = t->k;
  } else {
    const auto& f = std::get<FermatEquation>(eq);
    j["a"] = f.a;
    j["b"] = f.b;
    j["c"] = f.c;
    j["k"] = f.k;
  }
  return j;
}

ojson certificate_value(const SolubilityCertificate& cert) {
  ojson j;
  j["equation"] = equation_json(cert.equation);
  j["real"] = cert.real_soluble;
  j["threshold"] = cert.threshold;
  ojson primes = ojson::array();
  for (const LocalVerdict& v : cert.checked_primes) {
    ojson p;
    p["p"] = v.prime;
    p["soluble"] = v.soluble;
    p["method"] = std::string(to_string(v.method));
    if (v.witness) {
      p["witness"] = {{"point", v.witness->point}, {"n", v.witness->precision_n}};
    } else {
      p["witness"] = nullptr;
    }
    p["search_modulus"] = v.search_modulus;
    primes.push_back(std::move(p));
  }
  j["primes"] = std::move(primes);
  j["everywhere"] = cert.everywhere_soluble;
  return j;
}

std::string dump(const ojson& j, int indent) {
  std::string out = j.dump(indent);
  out.push_back('\n');
  return out;
}

template <class T>
T field(const ojson& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw std::invalid_argument(std::string("certificate JSON: missing field '") + name + "'");
  }
  return j.at(name).get<T>();
}

}  // namespace

std::string census_csv(const std::vector<CensusRow>& rows) {
  std::ostringstream out;
  out << kCensusCsvHeader << '\n';
  for (const CensusRow& r : rows) {
    out << r.H << ',' << r.k << ',' << r.loc_count << ',' << r.glob_count << ','
        << r.glob_bound_B << ',' << fixed6(r.ratio) << ',' << (r.conditional ? "true" : "false")
        << '\n';
  }
  return out.str();
}

std::string census_json(const std::vector<CensusRow>& rows, int indent) {
  ojson j = ojson::array();
  for (const CensusRow& r : rows) j.push_back(row_json(r));
  return dump(j, indent);
}

std::string plot_data(const std::vector<CensusRow>& rows) {
  std::ostringstream out;
  for (const CensusRow& r : rows) {
    if (r.loc_count == 0) continue;
    out << r.H << ' ' << fixed6(r.ratio) << '\n';
  }
  return out.str();
}

std::string certificate_json(const SolubilityCertificate& cert, int indent) {
  return dump(certificate_value(cert), indent);
}

SolubilityCertificate parse_certificate_json(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw std::invalid_argument(std::string("certificate JSON: ") + e.what());
  }
  try {
    SolubilityCertificate cert;
    const ojson& eq = j.at("equation");
    if (eq.contains("c")) {
      cert.equation = FermatEquation{field<i64>(eq, "a"), field<i64>(eq, "b"),
                                     field<i64>(eq, "c"), field<int>(eq, "k")};
    } else {
      cert.equation = ThueEquation{field<i64>(eq, "a"), field<i64>(eq, "b"), field<int>(eq, "k")};
    }
    std::visit([](const auto& e) { e.validate(); }, cert.equation);
    cert.real_soluble = field<bool>(j, "real");
    cert.threshold = field<i64>(j, "threshold");
    for (const ojson& p : j.at("primes")) {
      LocalVerdict v;
      v.prime = field<i64>(p, "p");
      v.soluble = field<bool>(p, "soluble");
      std::optional<LocalMethod> method = parse_local_method(field<std::string>(p, "method"));
      if (!method) throw std::invalid_argument("certificate JSON: unknown method");
      v.method = *method;
      const ojson& w = p.at("witness");
      if (!w.is_null()) {
        v.witness = HenselWitness{field<std::vector<i64>>(w, "point"), field<int>(w, "n"), v.prime};
      }
      v.search_modulus = field<i64>(p, "search_modulus");
      cert.checked_primes.push_back(std::move(v));
    }
    cert.everywhere_soluble = field<bool>(j, "everywhere");
    return cert;
  } catch (const ojson::exception& e) {
    throw std::invalid_argument(std::string("certificate JSON: ") + e.what());
  }
}

std::string pairs_json(const std::vector<FamilyPair>& pairs, int indent) {
  ojson j = ojson::array();
  for (const FamilyPair& f : pairs) {
    ojson e;
    e["q"] = f.q;
    e["r"] = f.r;
    e["k"] = f.k;
    e["modulus"] = f.modulus;
    e["equation"] = equation_json(f.equation);
    if (f.certificate) e["certificate"] = certificate_value(*f.certificate);
    j.push_back(std::move(e));
  }
  return dump(j, indent);
}

std::string triples_json(const std::vector<FamilyTriple>& triples, int indent) {
  ojson j = ojson::array();
  for (const FamilyTriple& f : triples) {
    ojson e;
    e["q"] = f.q;
    e["r"] = f.r;
    e["s"] = f.s;
    e["k"] = f.k;
    e["modulus"] = f.modulus;
    e["sign_case"] = std::string(to_string(f.sign_case));
    e["equation"] = equation_json(f.equation);
    if (f.certificate) e["certificate"] = certificate_value(*f.certificate);
    j.push_back(std::move(e));
  }
  return dump(j, indent);
}

std::string pairs_csv(const std::vector<FamilyPair>& pairs) {
  std::ostringstream out;
  out << "q,r,k,modulus\n";
  for (const FamilyPair& f : pairs) out << f.q << ',' << f.r << ',' << f.k << ',' << f.modulus << '\n';
  return out.str();
}

std::string triples_csv(const std::vector<FamilyTriple>& triples) {
  std::ostringstream out;
  out << "q,r,s,k,modulus,sign_case\n";
  for (const FamilyTriple& f : triples) {
    out << f.q << ',' << f.r << ',' << f.s << ',' << f.k << ',' << f.modulus << ','
        << to_string(f.sign_case) << '\n';
  }
  return out.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace hasse
