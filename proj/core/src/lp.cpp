#include "xdof/lp.hpp"

#include "xdof/error.hpp"

namespace xdof {

LpSolution solve_lp(const LpProblem& p) {
  const std::size_t rows = p.A.size();
  const std::size_t n = p.c.size();
  if (p.b.size() != rows) throw InvalidInput("solve_lp: A and b row counts differ");
  for (const auto& row : p.A) {
    if (row.size() != n) throw InvalidInput("solve_lp: ragged constraint matrix");
  }
  for (const auto& bi : p.b) {
    if (bi.sign() < 0) throw InvalidInput("solve_lp: right-hand sides must be >= 0");
  }

  // Tableau columns: n structural, rows slacks, then RHS.
  const std::size_t cols = n + rows;
  std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < n; ++j) t[r][j] = p.A[r][j];
    t[r][n + r] = 1;
    t[r][cols] = p.b[r];
    basis[r] = n + r;
  }
  // Reduced costs for maximization: entering candidates have obj[j] > 0.
  std::vector<Rational> obj(cols + 1);
  for (std::size_t j = 0; j < n; ++j) obj[j] = p.c[j];

  LpSolution sol;
  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (obj[j].sign() > 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = rows;
    Rational best_ratio;
    for (std::size_t r = 0; r < rows; ++r) {
      if (t[r][enter].sign() <= 0) continue;
      Rational ratio = t[r][cols] / t[r][enter];
      if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == rows) {
      sol.status = LpStatus::kUnbounded;
      return sol;
    }

    const Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || t[r][enter].is_zero()) continue;
      const Rational factor = t[r][enter];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (!t[leave][j].is_zero()) t[r][j] -= factor * t[leave][j];
      }
    }
    if (!obj[enter].is_zero()) {
      const Rational factor = obj[enter];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (!t[leave][j].is_zero()) obj[j] -= factor * t[leave][j];
      }
    }
    basis[leave] = enter;
    ++sol.pivots;
  }

  sol.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] < n) sol.x[basis[r]] = t[r][cols];
  }
  sol.value = 0;
  for (std::size_t j = 0; j < n; ++j) sol.value += p.c[j] * sol.x[j];
  return sol;
}

}  // namespace xdof
