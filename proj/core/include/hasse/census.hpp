#pragma once

// Counting locally and globally soluble coefficient boxes.
//
// Thue rows count pairs (a, b) with 0 < |a|, |b| <= H; Fermat rows count
// triples (a, b, c) with 0 < |a|, |b|, |c| <= H. "loc" means everywhere
// locally soluble; "glob" means an integer solution was found inside the
// abc-conditional bound, so glob is a lower bound that is exact only under
// that assumption.

#include <vector>

#include "hasse/globalsearch.hpp"
#include "hasse/localsolve.hpp"

namespace hasse {

struct CensusRow {
  i64 H = 0;
  int k = 3;
  i64 loc_count = 0;
  i64 glob_count = 0;
  i64 glob_bound_B = 0;
  double ratio = 0.0;  // NaN when loc_count == 0
  bool conditional = true;
  bool operator==(const CensusRow&) const;
};

struct CensusOptions {
  double slack = 4.0;
  int jobs = 1;
  /// Restrict to coefficient tuples with gcd 1.
  bool coprime_only = false;
  /// Thue runs at k = 3 are quadratic in H; larger H must be requested
  /// explicitly by raising this cap.
  i64 k3_height_cap = 500;
  LocalOptions local;
};

/// Rows in the order of H_list, which must be strictly ascending and >= 1.
std::vector<CensusRow> thue_census(int k, const std::vector<i64>& H_list,
                                   const CensusOptions& options = {});
std::vector<CensusRow> fermat_census(int k, const std::vector<i64>& H_list,
                                     const CensusOptions& options = {});

struct DyadicBox {
  i64 X = 1;
  i64 Y = 1;
  i64 Z = 1;
  int k = 3;
};

/// #{(a, b, x, y) in N^4 : a x^k - b y^k = 1, X < x <= 2X, Y < y <= 2Y,
///   Z < b y^k <= 2Z}.
i64 quadruple_count(const DyadicBox& box);

}  // namespace hasse
