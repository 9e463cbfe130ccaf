#include "convexforest/bounds.hpp"
#include "convexforest/generators.hpp"
#include "convexforest/lower_bound.hpp"
#include "convexforest/simplex.hpp"

#include <doctest.h>

#include <cmath>

using namespace convexforest;

namespace {

BigInt Factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_SUITE("lower_bound") {

TEST_CASE("transfer matrix") {
  CHECK(PieceTransferMatrix() == kExpectedTransferMatrix);
  const Matrix2& m = kExpectedTransferMatrix;
  const BigInt trace = m[0][0] + m[1][1];
  const BigInt det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  CHECK(trace == 26768);
  CHECK(trace * trace - 4 * det == BigInt(4) * 64 * kLowerBoundRadicand);
}

TEST_CASE("first piece brute-forced directly") {
  const LowerBoundTree t1 = MakeLowerBoundTree(1);
  CHECK(t1.tree.node_count() == 23);
  const std::vector<Matching> all = BruteForceMatchings(t1.tree);
  BigInt root_free = 0;
  for (const Matching& mt : all) {
    bool covered = false;
    for (EdgeId e : mt.edges) covered |= t1.tree.edge(e).u == t1.root || t1.tree.edge(e).v == t1.root;
    root_free += !covered;
  }
  const LowerBoundReport r = VerifyLowerBound(2);
  CHECK(r.z_dp[1] == all.size());
  CHECK(r.z0_dp[1] == root_free);
  CHECK(r.passed());
  CHECK(MakeLowerBoundTree(0).tree.node_count() == 1);
  CHECK(MakeLowerBoundTree(3).tree.node_count() == 67);
}

TEST_CASE("alpha") {
  const long double alpha = std::pow(13384.0L + 8.0L * std::sqrt(2793745.0L), 1.0L / 22);
  CHECK(static_cast<double>(Alpha()) == doctest::Approx(static_cast<double>(alpha)).epsilon(1e-15));
  CHECK(RoundUp(static_cast<double>(Alpha()), 4) == "1.5895");
  CHECK(RoundUp(1.0, 2) == "1.00");
  CHECK(RoundUp(1.23401, 4) == "1.2341");
  const LowerBoundReport r = VerifyLowerBound(5);
  CHECK(r.passed());
  CHECK(static_cast<double>(r.dominant_eigenvalue) ==
        doctest::Approx(13384 + 8 * std::sqrt(2793745.0)).epsilon(1e-14));
}

TEST_CASE("comb series") {
  const int truncation = 14;
  std::vector<BigInt> want(truncation + 1, 0);
  for (int a = 0; a <= truncation; ++a)
    for (int b = 0; a + b <= truncation; ++b)
      for (int c = 0; a + b + c + 2 <= truncation; ++c) {
        const int weight = (3 * a + 4 > c) + 2 * (3 * a + 1 > c) + (3 * a - 2 > c);
        want[a + b + c + 2] += Factorial(a + b + c) / (Factorial(a) * Factorial(b) * Factorial(c)) * weight;
      }
  CHECK(CombSeriesCoefficients(truncation) == want);
}

TEST_CASE("comb constants") {
  const CombConstants k = SolveCombConstants(40);
  CHECK(std::abs(k.rho - 0.2633) <= 5e-4);
  CHECK(std::abs(k.beta - 1.5603) <= 5e-4);
  CHECK(k.beta == doctest::Approx(std::pow(k.rho, -1.0 / 3)));
  // More terms move the root only slightly.
  CHECK(std::abs(SolveCombConstants(60).rho - k.rho) < 1e-3);
  CHECK_THROWS_AS(SolveCombConstants(5), DomainError);
}

}

TEST_SUITE("simplex") {

TEST_CASE("optimal") {
  const std::vector<std::vector<Real>> a{{1, 2, 1, 0}, {3, 1, 0, 1}};
  const LpResult r = SolveStandardForm(a, {4, 6}, {1, 1, 0, 0});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(static_cast<double>(r.objective) == doctest::Approx(2.8));
  CHECK(static_cast<double>(r.x[0]) == doctest::Approx(1.6));
  CHECK(static_cast<double>(r.x[1]) == doctest::Approx(1.2));
}

TEST_CASE("infeasible and unbounded") {
  CHECK(SolveStandardForm({{1, 1}}, {-1}, {1, 0}).status == LpStatus::kInfeasible);
  CHECK(SolveStandardForm({{1, 1}, {1, 1}}, {1, 2}, {0, 0}).status == LpStatus::kInfeasible);
  CHECK(SolveStandardForm({{1, -1}}, {1}, {1, 0}).status == LpStatus::kUnbounded);
  CHECK(std::string(ToString(LpStatus::kUnbounded)) == "unbounded");
}

TEST_CASE("degenerate and redundant rows") {
  const LpResult r = SolveStandardForm({{1, 1, 1}, {2, 2, 2}, {1, 0, 0}}, {1, 2, 0}, {0, 1, 2});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(static_cast<double>(r.objective) == doctest::Approx(2.0));
}

}

TEST_SUITE("set_s") {

TEST_CASE("vectors and groups") {
  const auto& s = SetSVectors();
  REQUIRE(s.size() == 62);
  int per_group[5] = {};
  for (const SetSEntry& e : s) {
    ++per_group[e.group];
    for (const Real& x : e.v) CHECK(x >= 0);
  }
  CHECK(per_group[1] == 39);
  CHECK(per_group[2] == 11);
  CHECK(per_group[3] == 11);
  CHECK(per_group[4] == 1);
  CHECK(CheckGroupClosure().empty());
  const BoundVector maxima = ComponentMaxima();
  for (const SetSEntry& e : s)
    for (int c = 0; c < 5; ++c) CHECK(e.v[c] <= maxima[c]);
}

TEST_CASE("membership") {
  const auto& s = SetSVectors();
  for (const SetSEntry& e : s) {
    const MembershipResult m = ConvMembership(e.v);
    CHECK(m.status == Membership::kMember);
    CHECK(m.slack >= Real("-1e-30"));
  }
  BoundVector big = ComponentMaxima();
  for (Real& x : big) x *= 2;
  CHECK(ConvMembership(big).status == Membership::kNotMember);
  CHECK(ConvMembership(BoundVector{}).status == Membership::kMember);
}

TEST_CASE("sampled pair products with certificates") {
  const auto& s = SetSVectors();
  for (std::size_t i = 0; i < s.size(); i += 7)
    for (std::size_t j = 0; j < s.size(); j += 5) {
      const BoundVector target = BilinearB(s[i].v, s[j].v);
      const MembershipResult m = ConvMembership(target);
      CHECK(m.status == Membership::kMember);
      REQUIRE(m.certificate.size() == s.size());
      Real sum = 0;
      for (const Real& c : m.certificate) {
        CHECK(c >= Real("-1e-30"));
        sum += c;
      }
      CHECK(sum <= 1 + Real("1e-30"));
      CHECK(CertificateResidual(target, m.certificate) >= Real("-1e-9"));
    }
}

}
