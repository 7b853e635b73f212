#include "hgue/linsolve.hpp"

namespace hgue {

static void eliminate(std::vector<LinRow>& rows, int ncols,
                      std::vector<std::optional<std::size_t>>& pivot_row, std::size_t& used) {
  for (int col = 0; col < ncols; ++col) {
    std::size_t r = used;
    while (r < rows.size()) {
      auto it = rows[r].a.find(col);
      if (it != rows[r].a.end() && it->second != 0) break;
      ++r;
    }
    if (r == rows.size()) continue;
    std::swap(rows[used], rows[r]);
    Rat p = rows[used].a[col];
    for (auto& [c, v] : rows[used].a) v /= p;
    rows[used].rhs = Coeff(rows[used].rhs.a / p, rows[used].rhs.z / p);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == used) continue;
      auto it = rows[k].a.find(col);
      if (it == rows[k].a.end() || it->second == 0) continue;
      Rat f = it->second;
      for (auto& [c, v] : rows[used].a) {
        rows[k].a[c] -= f * v;
        if (rows[k].a[c] == 0) rows[k].a.erase(c);
      }
      rows[k].rhs -= Coeff(f * rows[used].rhs.a, f * rows[used].rhs.z);
    }
    pivot_row[col] = used;
    ++used;
  }
}

std::map<int, Coeff> solve_pinned(std::vector<LinRow> rows, int ncols) {
  std::vector<std::optional<std::size_t>> pivot_row(ncols);
  std::size_t used = 0;
  eliminate(rows, ncols, pivot_row, used);
  for (std::size_t k = used; k < rows.size(); ++k)
    if (!rows[k].rhs.is_zero()) throw std::runtime_error("inconsistent linear system");
  std::map<int, Coeff> pinned;
  for (int col = 0; col < ncols; ++col) {
    if (!pivot_row[col]) continue;
    const LinRow& row = rows[*pivot_row[col]];
    if (row.a.size() == 1) pinned[col] = row.rhs;
  }
  return pinned;
}

SolveResult solve_exact(std::vector<LinRow> rows, int ncols) {
  std::vector<std::optional<std::size_t>> pivot_row(ncols);
  std::size_t used = 0;
  eliminate(rows, ncols, pivot_row, used);
  for (std::size_t k = used; k < rows.size(); ++k)
    if (!rows[k].rhs.is_zero()) return {SolveStatus::INCONSISTENT, {}};
  for (int col = 0; col < ncols; ++col)
    if (!pivot_row[col]) return {SolveStatus::UNDERDETERMINED, {}};
  SolveResult res{SolveStatus::UNIQUE, std::vector<Coeff>(ncols)};
  for (int col = 0; col < ncols; ++col) res.x[col] = rows[*pivot_row[col]].rhs;
  return res;
}

}  // namespace hgue
