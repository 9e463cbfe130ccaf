#include "convexforest/selftest.hpp"

#include "convexforest/agreement.hpp"
#include "convexforest/convex_enum.hpp"
#include "convexforest/generators.hpp"
#include "convexforest/lower_bound.hpp"
#include "convexforest/matchings.hpp"
#include "convexforest/mp2.hpp"
#include "convexforest/oracles.hpp"
#include "convexforest/parsimony.hpp"

#include <cmath>
#include <exception>
#include <functional>

namespace convexforest {

namespace {

const char* kSevenTaxa = "(((a,b),c),d,(e,(f,g)));";

}  // namespace

std::vector<SelfTestCheck> RunSelfTest(std::uint64_t seed, int jobs) {
  std::vector<SelfTestCheck> out;
  auto check = [&](const std::string& name, const std::function<std::string()>& body) {
    try {
      const std::string failure = body();
      out.push_back({name, failure.empty(), failure});
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };

  check("convex counts match closed form", [&]() -> std::string {
    if (ConvexCounter(ParseNewick(kSevenTaxa, NewickMode::kUnrooted)).Total() != 233)
      return "seven-taxon caterpillar total is not 233";
    for (int i = 0; i < 30; ++i) {
      const int n = 3 + i % 10;
      const ConvexCounter counter(RandomTree(n, seed + i));
      for (int k = 1; k <= n; ++k)
        if (counter.Count(k) != SteelCount(n, k)) return "mismatch at n=" + std::to_string(n);
    }
    return {};
  });

  check("convex unranking covers brute-force set", [&]() -> std::string {
    for (int i = 0; i < 5; ++i) {
      const PhyloTree tree = RandomTree(4 + i, seed + 100 + i);
      const ConvexCounter counter(tree);
      std::vector<Character> got;
      counter.Enumerate(1, 0, -1, [&](const Character& c) {
        got.push_back(c);
        return true;
      });
      std::sort(got.begin(), got.end());
      if (got != oracle::ConvexCharacters(tree)) return "set differs for n=" + std::to_string(4 + i);
    }
    return {};
  });

  check("legal matching DP matches brute force", [&]() -> std::string {
    for (int i = 0; i < 40; ++i) {
      const CoreTree core = RandomDegree3Tree(1 + i % 16, seed + 200 + i);
      BigInt legal = 0;
      const auto all = BruteForceMatchings(core);
      for (const Matching& m : all) legal += oracle::IsLegalByDefinition(core, m);
      if (CountMatchings(core, MatchingKind::kAll) != all.size()) return "all-matchings count";
      if (CountMatchings(core, MatchingKind::kLegal) != legal) return "legal-matchings count";
    }
    return {};
  });

  check("mp2 modes agree with brute force", [&]() -> std::string {
    for (int i = 0; i < 15; ++i) {
      const int n = 4 + i % 6;
      const PhyloTree a = RandomTree(n, seed + 300 + i), b = RandomTree(n, seed + 400 + i);
      const int want = Mp2Brute(a, b).distance;
      for (Mp2Mode mode : {Mp2Mode::kLegal, Mp2Mode::kAll, Mp2Mode::kFullyLegal})
        if (Mp2Distance(a, b, mode, jobs).distance != want) return ToString(mode) + " mode differs";
    }
    return {};
  });

  check("maf hybrid, enumeration and brute force agree", [&]() -> std::string {
    for (int i = 0; i < 6; ++i) {
      const int n = 4 + i % 4;
      const PhyloTree a = RandomTree(n, seed + 500 + i), b = RandomTree(n, seed + 600 + i);
      const int want = oracle::BruteMafSize(a, b);
      if (MafEnumerate(a, b, 1, jobs).size != want) return "enumeration differs";
      for (double c : {0.25, kUnrootedTippingPoint})
        if (MafHybrid(a, b, c, jobs).forest.size != want) return "hybrid differs";
    }
    return {};
  });

  check("lower-bound transfer matrix", [&]() -> std::string {
    const LowerBoundReport r = VerifyLowerBound(3);
    return r.passed() ? "" : "transfer matrix or matrix powers differ";
  });

  check("tipping points", [&]() -> std::string {
    const TippingPoint u = SolveTippingPoint(3), r = SolveTippingPoint(2.42);
    if (std::abs(u.c - 0.7571) > 5e-4 || std::abs(r.c - 0.8204) > 5e-4) return "c out of tolerance";
    return {};
  });

  check("comb constants", [&]() -> std::string {
    const CombConstants c = SolveCombConstants(40);
    if (std::abs(c.rho - 0.2633) > 5e-4 || std::abs(c.beta - 1.5603) > 5e-4) return "rho/beta out of tolerance";
    return {};
  });

  return out;
}

}  // namespace convexforest
