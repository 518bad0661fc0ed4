// Exact rational linear programming for small dense problems:
//   maximize c·x  subject to  A x <= b,  x >= 0,  with b >= 0.
// The origin is always feasible, so a single-phase simplex suffices.
#pragma once

#include <vector>

#include "xdof/rational.hpp"

namespace xdof {

struct LpProblem {
  std::vector<std::vector<Rational>> A;  // rows x n
  std::vector<Rational> b;               // rows, all >= 0
  std::vector<Rational> c;               // n
};

enum class LpStatus { kOptimal, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  Rational value;
  std::vector<Rational> x;
  int pivots = 0;
};

// Dense tableau simplex with Bland's rule (smallest-index entering and
// leaving variables), so it terminates and is deterministic.
LpSolution solve_lp(const LpProblem& problem);

}  // namespace xdof
