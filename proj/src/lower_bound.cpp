#include "convexforest/lower_bound.hpp"

#include "convexforest/generators.hpp"
#include "convexforest/matchings.hpp"

#include <cmath>
#include <cstdio>

namespace convexforest {

Real Alpha() {
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  return pow(Real(13384) + 8 * sqrt(Real(kLowerBoundRadicand)), Real(1) / 22);
}

std::string RoundUp(double x, int places) {
  const double scale = std::pow(10.0, places);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, std::ceil(x * scale - 1e-9) / scale);
  return buf;
}

Matrix2 PieceTransferMatrix() {
  const LowerBoundPiece piece = MakeLowerBoundPiece();
  Matrix2 m{};
  for (const Matching& match : BruteForceMatchings(piece.tree)) {
    bool old_covered = false, new_covered = false;
    for (EdgeId e : match.edges) {
      const Edge& ed = piece.tree.edge(e);
      old_covered |= ed.u == piece.old_root || ed.v == piece.old_root;
      new_covered |= ed.u == piece.new_root || ed.v == piece.new_root;
    }
    m[0][old_covered] += 1;
    if (!new_covered) m[1][old_covered] += 1;
  }
  return m;
}

namespace {

// (all matchings, matchings leaving `root` uncovered) by a rooted DP.
std::pair<BigInt, BigInt> RootedMatchingCounts(const CoreTree& tree, NodeId root) {
  const int n = tree.node_count();
  std::vector<NodeId> parent(n, kNoNode), order{root};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto [w, e] : tree.neighbors(order[i]))
      if (w != parent[order[i]]) parent[w] = order[i], order.push_back(w);
  std::vector<BigInt> free(n), covered(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId u = *it;
    BigInt product = 1;
    for (auto [w, e] : tree.neighbors(u))
      if (w != parent[u]) product *= free[w] + covered[w];
    free[u] = product;
    covered[u] = 0;
    for (auto [w, e] : tree.neighbors(u))
      if (w != parent[u]) covered[u] += product / (free[w] + covered[w]) * free[w];
  }
  return {free[root] + covered[root], free[root]};
}

}  // namespace

LowerBoundReport VerifyLowerBound(int max_k) {
  LowerBoundReport r;
  r.matrix = PieceTransferMatrix();
  r.matrix_ok = r.matrix == kExpectedTransferMatrix;

  const Matrix2& m = r.matrix;
  BigInt z = 1, z0 = 1;  // T_0 is a single node
  r.powers_ok = true;
  for (int k = 0; k <= max_k; ++k) {
    const LowerBoundTree t = MakeLowerBoundTree(k);
    const auto [all, free] = RootedMatchingCounts(t.tree, t.root);
    r.z_dp.push_back(CountMatchings(t.tree, MatchingKind::kAll));
    r.z0_dp.push_back(free);
    r.z_power.push_back(z);
    r.z0_power.push_back(z0);
    r.powers_ok &= r.z_dp.back() == z && all == z && free == z0;
    const BigInt next_z = m[0][0] * z + m[0][1] * z0;
    const BigInt next_z0 = m[1][0] * z + m[1][1] * z0;
    z = next_z;
    z0 = next_z0;
  }

  const BigInt trace = m[0][0] + m[1][1];
  const BigInt det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  r.eigen_ok = trace == 26768 && trace * trace - 4 * det == 4 * 64 * BigInt(kLowerBoundRadicand);
  using boost::multiprecision::sqrt;
  r.dominant_eigenvalue = Real(trace) / 2 + sqrt(Real(trace * trace - 4 * det)) / 2;
  r.alpha = Alpha();
  return r;
}

std::vector<BigInt> CombSeriesCoefficients(int truncation) {
  if (truncation < 2) throw DomainError("truncation must be at least 2");
  // multinomial(n; a, b, c) = n! / (a! b! c!)
  std::vector<BigInt> factorial(truncation + 1, 1);
  for (int i = 1; i <= truncation; ++i) factorial[i] = factorial[i - 1] * i;
  std::vector<BigInt> coef(truncation + 1, 0);
  for (int l = 2; l <= truncation; ++l) {
    const int n = l - 2;
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b) {
        const int c = n - a - b;
        const int weight = (3 * a + 4 > c) + 2 * (3 * a + 1 > c) + (3 * a - 2 > c);
        if (weight) coef[l] += weight * (factorial[n] / (factorial[a] * factorial[b] * factorial[c]));
      }
  }
  return coef;
}

CombConstants SolveCombConstants(int truncation, double tol) {
  if (truncation < 10) throw DomainError("truncation must be at least 10");
  const std::vector<BigInt> coef = CombSeriesCoefficients(truncation);
  std::vector<double> c(coef.size());
  for (std::size_t i = 0; i < coef.size(); ++i) c[i] = static_cast<double>(coef[i]);
  auto excess = [&](double x) {
    double sum = 0;
    for (std::size_t i = c.size(); i-- > 0;) sum = sum * x + c[i];
    return sum - 1;
  };
  double lo = 0, hi = 0.5;
  if (!(excess(lo) < 0 && excess(hi) > 0)) throw DomainError("truncated series does not bracket a root");
  while (hi - lo > tol) {
    const double mid = (lo + hi) / 2;
    (excess(mid) < 0 ? lo : hi) = mid;
  }
  CombConstants out;
  out.rho = (lo + hi) / 2;
  out.beta = std::pow(out.rho, -1.0 / 3);
  return out;
}

}  // namespace convexforest
