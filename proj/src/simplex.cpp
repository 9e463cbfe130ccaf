#include "convexforest/simplex.hpp"

#include "convexforest/common.hpp"

#include <boost/multiprecision/number.hpp>

namespace convexforest {

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kNumericalFailure: return "numerical_failure";
  }
  return "?";
}

namespace {

using boost::multiprecision::abs;

// Tableau rows 0..m-1 are constraints (last column = rhs); row m is the
// reduced-cost row of the objective being maximised, stored as -c.
class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), n_(cols), t_(rows + 1, std::vector<Real>(cols + 1, 0)), basis_(rows, -1) {}

  Real& at(int r, int c) { return t_[r][c]; }
  Real& rhs(int r) { return t_[r][n_]; }
  std::vector<int>& basis() { return basis_; }

  void Pivot(int r, int c) {
    const Real p = t_[r][c];
    for (Real& x : t_[r]) x /= p;
    for (int i = 0; i <= m_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const Real f = t_[i][c];
      for (int j = 0; j <= n_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Bland's rule over columns with allowed[c]. Returns false when unbounded.
  LpStatus Optimise(const std::vector<char>& allowed, const Real& eps, int& pivots, int max_pivots) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < n_; ++j)
        if (allowed[j] && t_[m_][j] < -eps) {
          enter = j;
          break;
        }
      if (enter < 0) return LpStatus::kOptimal;
      int leave = -1;
      Real best_ratio = 0;
      for (int i = 0; i < m_; ++i) {
        if (t_[i][enter] <= eps) continue;
        const Real ratio = t_[i][n_] / t_[i][enter];
        if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      if (++pivots > max_pivots) return LpStatus::kNumericalFailure;
      Pivot(leave, enter);
    }
  }

  int rows() const { return m_; }

 private:
  int m_, n_;
  std::vector<std::vector<Real>> t_;
  std::vector<int> basis_;
};

}  // namespace

LpResult SolveStandardForm(const std::vector<std::vector<Real>>& a, const std::vector<Real>& b,
                           const std::vector<Real>& c, const Real& eps, int max_pivots) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());
  if (static_cast<int>(b.size()) != m) throw DomainError("LP: row count mismatch");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw DomainError("LP: column count mismatch");

  // Columns 0..n-1 original, n..n+m-1 artificial.
  Tableau t(m, n + m);
  for (int i = 0; i < m; ++i) {
    const Real sign = b[i] < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) t.at(i, j) = sign * a[i][j];
    t.at(i, n + i) = 1;
    t.rhs(i) = sign * b[i];
    t.basis()[i] = n + i;
  }
  LpResult result;
  // Phase 1: maximise -(sum of artificials).
  for (int j = 0; j <= n + m; ++j) {
    Real s = 0;
    if (j >= n && j < n + m) continue;
    for (int i = 0; i < m; ++i) s += (j == n + m ? t.rhs(i) : t.at(i, j));
    t.at(m, j) = -s;
  }
  std::vector<char> all(n + m, 1);
  LpStatus st = t.Optimise(all, eps, result.pivots, max_pivots);
  if (st != LpStatus::kOptimal) {
    result.status = LpStatus::kNumericalFailure;
    return result;
  }
  if (-t.at(m, n + m) > eps * 1e10) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  // Drive remaining artificials out of the basis.
  for (int i = 0; i < m; ++i) {
    if (t.basis()[i] < n) continue;
    for (int j = 0; j < n; ++j)
      if (abs(t.at(i, j)) > eps) {
        t.Pivot(i, j);
        break;
      }
    // Otherwise the row is redundant; its artificial stays at zero.
  }
  // Phase 2 objective row: reduced costs of -c given the current basis.
  for (int j = 0; j <= n + m; ++j) t.at(m, j) = j < n ? -c[j] : Real(0);
  for (int i = 0; i < m; ++i) {
    const int bj = t.basis()[i];
    if (bj >= n) continue;
    const Real f = t.at(m, bj);
    if (f == 0) continue;
    for (int j = 0; j <= n + m; ++j) t.at(m, j) -= f * t.at(i, j);
  }
  std::vector<char> original(n + m, 0);
  std::fill(original.begin(), original.begin() + n, 1);
  st = t.Optimise(original, eps, result.pivots, max_pivots);
  if (st != LpStatus::kOptimal) {
    result.status = st;
    return result;
  }
  result.x.assign(n, 0);
  for (int i = 0; i < m; ++i)
    if (t.basis()[i] < n) result.x[t.basis()[i]] = t.rhs(i);
  result.objective = t.at(m, n + m);
  result.status = LpStatus::kOptimal;
  return result;
}

}  // namespace convexforest
