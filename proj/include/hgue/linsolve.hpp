/*
  Exact Gaussian elimination for the small dense-ish linear systems that
  show up in jet fitting and in the constraint-solve test oracle.
  Rows are sparse maps column -> Rat with a Coeff right-hand side, so one
  elimination serves both the rational and the zeta'(-1) components.
*/
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hgue/rational.hpp"

namespace hgue {

struct LinRow {
  std::map<int, Rat> a;
  Coeff rhs;
};

enum class SolveStatus { UNIQUE, INCONSISTENT, UNDERDETERMINED };

struct SolveResult {
  SolveStatus status;
  std::vector<Coeff> x;  // valid when UNIQUE, indexed by column id
};

SolveResult solve_exact(std::vector<LinRow> rows, int ncols);

// Gauss-Jordan on a possibly underdetermined system; returns the columns
// whose value is pinned uniquely (pivot row with no other unknowns).
// Throws if the system is inconsistent.
std::map<int, Coeff> solve_pinned(std::vector<LinRow> rows, int ncols);

}  // namespace hgue
