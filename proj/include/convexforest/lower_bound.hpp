#pragma once

#include "convexforest/common.hpp"
#include "convexforest/numeric.hpp"

#include <array>
#include <vector>

namespace convexforest {

using Matrix2 = std::array<std::array<BigInt, 2>, 2>;

// Transfer matrix of the lower-bound construction, brute-forced over the
// matchings of the 22-edge piece: row 0 counts all matchings of the piece,
// row 1 those leaving the new root uncovered; column 0 those leaving the old
// root uncovered, column 1 those covering it.
Matrix2 PieceTransferMatrix();

inline const Matrix2 kExpectedTransferMatrix = {{{19888, 10144}, {13456, 6880}}};

struct LowerBoundReport {
  Matrix2 matrix;
  bool matrix_ok = false;
  // Per k = 0..max_k: matchings of T_k (all / root uncovered) from the tree
  // DP and from matrix powers applied to T_0.
  std::vector<BigInt> z_dp, z0_dp, z_power, z0_power;
  bool powers_ok = false;
  // (trace/2)^2 - det == 64 * 2793745, i.e. eigenvalues 13384 +- 8 sqrt(R).
  bool eigen_ok = false;
  Real dominant_eigenvalue;
  Real alpha;
  bool passed() const { return matrix_ok && powers_ok && eigen_ok; }
};

LowerBoundReport VerifyLowerBound(int max_k = 5);

// Coefficients c_l (l = 0..truncation) of the comb-tree series
// sum_{a,b,c} multinomial(a+b+c; a,b,c) ([3a+4>c] + 2[3a+1>c] + [3a-2>c]) x^{a+b+c+2}.
std::vector<BigInt> CombSeriesCoefficients(int truncation);

struct CombConstants {
  double rho = 0;
  double beta = 0;
};

// Root of (truncated series) = 1 on (0, 0.5) by bisection; beta = rho^(-1/3).
// Throws DomainError if the truncated series does not bracket a root.
CombConstants SolveCombConstants(int truncation, double tol = 1e-10);

}  // namespace convexforest
