#include "convexforest/generators.hpp"
#include "convexforest/matchings.hpp"
#include "convexforest/mp2.hpp"
#include "convexforest/oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace convexforest;

namespace {

CoreTree Path(int nodes) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < nodes; ++i) edges.push_back({i, i + 1});
  return CoreTree(nodes, edges);
}

std::vector<Matching> UnrankAll(const MatchingIndex& index) {
  std::vector<Matching> out;
  for (BigInt i = 0; i < index.Count(); ++i) out.push_back(index.Unrank(i));
  return out;
}

}  // namespace

TEST_SUITE("matchings") {

TEST_CASE("core tree of the seven-taxon tree is a weighted path") {
  const PhyloTree t = ParseNewick(testing::kSevenTaxa, NewickMode::kAuto);
  const CoreTree core = MakeCoreTree(t);
  CHECK(core.node_count() == 5);
  CHECK(core.edge_count() == 4);
  CHECK(core.total_weight() == 7);
  std::vector<int> degrees;
  for (NodeId v = 0; v < 5; ++v) degrees.push_back(core.degree(v));
  std::sort(degrees.begin(), degrees.end());
  CHECK(degrees == std::vector<int>{1, 1, 2, 2, 2});
  CHECK_THROWS_AS(MakeCoreTree(ParseNewick("(a,b,c);", NewickMode::kAuto)), DomainError);
}

TEST_CASE("path on five nodes") {
  const CoreTree p5 = Path(5);
  CHECK(CountMatchings(p5, MatchingKind::kAll) == 8);
  CHECK(CountMatchings(p5, MatchingKind::kLegal) == 6);
  CHECK(BruteForceMatchings(p5).size() == 8);
}

TEST_CASE("small paths") {
  // Fibonacci numbers count matchings of paths.
  BigInt f0 = 1, f1 = 1;
  for (int nodes = 1; nodes <= 20; ++nodes) {
    CHECK(CountMatchings(Path(nodes), MatchingKind::kAll) == f1);
    const BigInt next = f0 + f1;
    f0 = f1;
    f1 = next;
  }
  // Only a matched pair of edges around a single edge is illegal.
  CHECK(CountMatchings(Path(1), MatchingKind::kLegal) == 1);
  CHECK(CountMatchings(Path(2), MatchingKind::kLegal) == 2);
  CHECK(CountMatchings(Path(3), MatchingKind::kLegal) == 3);
  CHECK(CountMatchings(Path(4), MatchingKind::kLegal) == 4);
}

TEST_CASE("invalid cores are rejected") {
  CHECK_THROWS_AS(CoreTree(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}), DomainError);
  CHECK_THROWS_AS(CoreTree(4, {{0, 1}, {2, 3}}), DomainError);
  CHECK_THROWS_AS(BruteForceMatchings(CombTree(8), 22), DomainError);
}

TEST_CASE("DP counts and unranking agree with brute force") {
  for (int i = 0; i < 80; ++i) {
    const CoreTree core = RandomDegree3Tree(1 + i % 16, 1000 + i);
    const std::vector<Matching> all = BruteForceMatchings(core);
    std::vector<Matching> legal;
    for (const Matching& m : all)
      if (oracle::IsLegalByDefinition(core, m)) legal.push_back(m);

    const MatchingIndex all_index(core, MatchingKind::kAll), legal_index(core, MatchingKind::kLegal);
    CHECK(all_index.Count() == all.size());
    CHECK(legal_index.Count() == legal.size());
    std::vector<Matching> got = UnrankAll(all_index);
    for (const Matching& m : got) CHECK(IsMatching(core, m));
    std::sort(got.begin(), got.end());
    CHECK(got == all);
    got = UnrankAll(legal_index);
    std::sort(got.begin(), got.end());
    CHECK(got == legal);
    CHECK(CountKLegalBrute(core, 2) == legal.size());
  }
}

TEST_CASE("legality report") {
  for (int i = 0; i < 30; ++i) {
    const CoreTree core = RandomDegree3Tree(4 + i % 10, 2000 + i);
    for (const Matching& m : BruteForceMatchings(core)) {
      const LegalityReport r = Legality(core, m, std::nullopt);
      int nodes = 0;
      for (const LegalityComponent& c : r.components) {
        CHECK(c.weight == c.s - c.m + 2);
        nodes += c.s;
      }
      CHECK(nodes == core.node_count());
      CHECK(r.components.size() == m.edges.size() + 1);
      CHECK(IsKLegal(core, m, 2) == oracle::IsLegalByDefinition(core, m));
      // Full legality implies k-legality for every k, which implies legality.
      if (IsKLegal(core, m, std::nullopt)) CHECK(IsKLegal(core, m, 4));
      if (IsKLegal(core, m, 4)) CHECK(IsKLegal(core, m, 2));
    }
  }
}

TEST_CASE("comb trees") {
  // Counted by hand / by an independent script for the smallest combs.
  CHECK(CountFullyLegalBrute(CombTree(2)) == 9);
  CHECK(CountFullyLegalBrute(CombTree(3)) == 31);
  CHECK(CombTree(5).node_count() == 15);
  CHECK(CombTree(5).edge_count() == 14);
}

TEST_CASE("matchings are in bijection with covering characters") {
  for (int i = 0; i < 25; ++i) {
    const PhyloTree t = RandomTree(4 + i % 6, 3000 + i);
    const CoreTree core = MakeCoreTree(t);
    std::vector<Character> from_matchings;
    for (const Matching& m : BruteForceMatchings(core)) from_matchings.push_back(CharacterOfMatching(t, core, m));
    std::sort(from_matchings.begin(), from_matchings.end());
    CHECK(std::adjacent_find(from_matchings.begin(), from_matchings.end()) == from_matchings.end());
    CHECK(from_matchings == oracle::CoveringCharacters(t));
  }
}

TEST_CASE("good-tree transform") {
  for (int i = 0; i < 60; ++i) {
    const CoreTree core = RandomDegree3Tree(2 + i % 13, 4000 + i);
    const CoreTree good = GoodTreeTransform(core);
    CHECK(IsGoodTree(good));
    CHECK(good.node_count() == core.node_count());
    CHECK(CountMatchings(good, MatchingKind::kLegal) >= CountMatchings(core, MatchingKind::kLegal));
  }
  CHECK_FALSE(IsGoodTree(Path(4)));
  CHECK(IsGoodTree(Path(3)));
}

TEST_CASE("combining branches") {
  const MatchVector leaf = CombineBranches(EmptyTreeVector(), EmptyTreeVector());
  // A lone node: only the empty matching, root uncovered.
  CHECK(leaf == MatchVector{1, 0, 0, 0, 0});
  for (int i = 0; i < 20; ++i) {
    const CoreTree core = RandomDegree3Tree(1 + i, 5000 + i);
    const NodeId root = DefaultCoreRoot(core);
    const MatchVector v = MatchVectors(core, root)[root];
    CHECK(v[0] + v[1] + v[2] + v[3] == CountMatchings(core, MatchingKind::kLegal));
  }
}

}
