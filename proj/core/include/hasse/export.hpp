#pragma once

// Text serializations. All writers are deterministic: identical inputs give
// byte-identical output.
//
// Certificate JSON:
//   {"equation": {"a", "b"[, "c"], "k"}, "real": bool, "threshold": int,
//    "primes": [{"p", "soluble", "method",
//                "witness": {"point": [...], "n"} | null, "search_modulus"}],
//    "everywhere": bool}

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hasse/census.hpp"
#include "hasse/families.hpp"
#include "hasse/localsolve.hpp"

namespace hasse {

inline constexpr std::string_view kCensusCsvHeader = "H,k,loc,glob,bound_B,ratio,conditional";

/// Header line plus one line per row; ratio with 6 decimals, "nan" when
/// loc is 0.
std::string census_csv(const std::vector<CensusRow>& rows);
std::string census_json(const std::vector<CensusRow>& rows, int indent = 2);
/// "H ratio" per line, rows with loc = 0 skipped.
std::string plot_data(const std::vector<CensusRow>& rows);

std::string certificate_json(const SolubilityCertificate& cert, int indent = 2);
/// Throws std::invalid_argument on malformed input.
SolubilityCertificate parse_certificate_json(std::string_view text);

std::string pairs_json(const std::vector<FamilyPair>& pairs, int indent = 2);
std::string triples_json(const std::vector<FamilyTriple>& triples, int indent = 2);
std::string pairs_csv(const std::vector<FamilyPair>& pairs);
std::string triples_csv(const std::vector<FamilyTriple>& triples);

/// Truncates and writes; failures raise std::runtime_error naming the path.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace hasse
