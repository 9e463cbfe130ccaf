#pragma once

#include "convexforest/numeric.hpp"

#include <vector>

namespace convexforest {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericalFailure };
const char* ToString(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kNumericalFailure;
  std::vector<Real> x;
  Real objective = 0;
  int pivots = 0;
};

// maximize c.x subject to A x = b, x >= 0. Dense two-phase tableau simplex
// with Bland's rule; `eps` is the pivot/feasibility tolerance.
LpResult SolveStandardForm(const std::vector<std::vector<Real>>& a, const std::vector<Real>& b,
                           const std::vector<Real>& c, const Real& eps = Real("1e-35"),
                           int max_pivots = 10000);

}  // namespace convexforest
