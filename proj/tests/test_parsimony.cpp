#include "convexforest/generators.hpp"
#include "convexforest/oracles.hpp"
#include "convexforest/parsimony.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace convexforest;
using testing::ParseCharacter;

TEST_SUITE("parsimony") {

TEST_CASE("quartet scores") {
  const PhyloTree t = ParseNewick("((a,b),(c,d));", NewickMode::kUnrooted);
  CHECK(ParsimonyScore(t, ParseCharacter(t, "ab|cd")) == 1);
  CHECK(ParsimonyScore(t, ParseCharacter(t, "ac|bd")) == 2);
  CHECK(ParsimonyScore(t, ParseCharacter(t, "abcd")) == 0);
  CHECK(ParsimonyScore(t, ParseCharacter(t, "a|b|c|d")) == 3);
  CHECK(IsConvex(t, ParseCharacter(t, "ab|cd")));
  CHECK_FALSE(IsConvex(t, ParseCharacter(t, "ac|bd")));
}

TEST_CASE("character taxa must match") {
  const PhyloTree t = ParseNewick("((a,b),(c,d));", NewickMode::kUnrooted);
  CHECK_THROWS_AS(ParsimonyScore(t, Character::SingleBlock(5)), DomainError);
}

TEST_CASE("Fitch equals exhaustive parsimony") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 60; ++i) {
    const int n = 3 + i % 5;
    const PhyloTree t = i % 3 == 0 ? RandomRootedTree(n, i) : RandomTree(n, i);
    const ParsimonyScorer scorer(t);
    const Character f = testing::RandomCharacter(n, 2 + i % 3, rng);
    const int want = oracle::ExhaustiveParsimony(t, f);
    CHECK(ParsimonyScore(t, f) == want);
    CHECK(scorer.Score(f) == want);
    if (f.block_count() == 2) {
      std::vector<char> red(n);
      for (TaxonId x : f.block(0)) red[x] = 1;
      CHECK(scorer.ScoreBinary(red) == want);
    }
  }
}

TEST_CASE("top-down extensions are optimal for every policy") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 40; ++i) {
    const int n = 4 + i % 9;
    const PhyloTree t = RandomTree(n, 50 + i);
    const Character f = testing::RandomCharacter(n, 3, rng);
    const FitchResult fitch = FitchBottomUp(t, f);
    CHECK(FitchTopDown(fitch).assignment.size() == static_cast<std::size_t>(t.node_count()));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Extension ext = FitchTopDown(fitch, ChoicePolicy::kSeeded, seed);
      CHECK(ExtensionLength(t, ext) == fitch.score);
      CHECK(MutationEdges(t, ext).size() == static_cast<std::size_t>(fitch.score));
    }
    // Root edge choice does not change the score.
    CHECK(FitchBottomUp(t, f, t.edge_count() - 1).score == fitch.score);
  }
}

TEST_CASE("convexity agrees with the spanning-tree oracle") {
  for (int i = 0; i < 4; ++i) {
    const PhyloTree t = RandomTree(6 + i % 2, 70 + i);
    oracle::ForEachPartition(t.taxon_count(), [&](const Character& f) {
      CHECK(IsConvex(t, f) == oracle::IsConvexBySpanning(t, f));
    });
  }
}

TEST_CASE("natural partial extension") {
  const PhyloTree t = ParseNewick(testing::kSevenTaxa, NewickMode::kAuto);
  const PartialExtension covering = NaturalPartialExtension(t, ParseCharacter(t, "ab|cd|efg"));
  CHECK(covering.covering);
  const PartialExtension partial = NaturalPartialExtension(t, ParseCharacter(t, "a|b|cdefg"));
  CHECK_FALSE(partial.covering);
  CHECK_THROWS_AS(NaturalPartialExtension(t, ParseCharacter(t, "ac|bdefg")), DomainError);
}

TEST_CASE("covering convex characters have a unique optimal extension") {
  for (int i = 0; i < 12; ++i) {
    const PhyloTree t = RandomTree(5 + i % 5, 300 + i);
    for (const Character& f : oracle::CoveringCharacters(t)) {
      const PartialExtension natural = NaturalPartialExtension(t, f);
      REQUIRE(natural.covering);
      const FitchResult fitch = FitchBottomUp(t, f);
      CHECK(fitch.score == f.block_count() - 1);
      CHECK(FitchTopDown(fitch).assignment == natural.assignment);
      for (std::uint64_t seed = 1; seed < 6; ++seed)
        CHECK(FitchTopDown(fitch, ChoicePolicy::kSeeded, seed).assignment == natural.assignment);
      // Rooting elsewhere must not expose another optimum either.
      for (EdgeId e = 0; e < t.edge_count(); e += 3)
        CHECK(FitchTopDown(FitchBottomUp(t, f, e), ChoicePolicy::kSeeded, e).assignment ==
              natural.assignment);
    }
  }
}

TEST_CASE("optimal two-state extensions: no internal node with two differing neighbours") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    const int n = 4 + i % 10;
    const PhyloTree t = RandomTree(n, 400 + i);
    const Character f = testing::RandomCharacter(n, 2, rng);
    for (EdgeId root = 0; root < t.edge_count(); root += 2) {
      const Extension ext = FitchTopDown(FitchBottomUp(t, f, root), ChoicePolicy::kSeeded, i + root);
      for (NodeId v = 0; v < t.node_count(); ++v) {
        if (t.is_leaf(v)) continue;
        int differing = 0;
        for (const Incidence& inc : t.neighbors(v)) differing += ext.assignment[inc.node] != ext.assignment[v];
        CHECK(differing <= 1);
      }
    }
  }
}

TEST_CASE("two-state recolouring of covering characters") {
  const PhyloTree t = ParseNewick(testing::kSevenTaxa, NewickMode::kAuto);
  const Character two = TwoStateFromCovering(t, ParseCharacter(t, "ab|cd|efg"));
  CHECK(two == ParseCharacter(t, "abefg|cd"));
  for (int i = 0; i < 10; ++i) {
    const PhyloTree r = RandomTree(6 + i % 4, 500 + i);
    for (const Character& fc : oracle::CoveringCharacters(r)) {
      const Character f2 = TwoStateFromCovering(r, fc);
      CHECK(f2.block_count() == std::min(2, fc.block_count()));
      CHECK(f2.block(0).front() == 0);
      // The recoloured natural extension is one extension of f2, with one
      // mutation per edge between states.
      CHECK(ParsimonyScore(r, f2) <= fc.block_count() - 1);
    }
  }
}

}
