#include "convexforest/generators.hpp"
#include "convexforest/mp2.hpp"
#include "convexforest/oracles.hpp"
#include "convexforest/parsimony.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace convexforest;
using testing::ParseCharacter;

TEST_SUITE("mp2") {

TEST_CASE("quartet pair") {
  const PhyloTree a = ParseNewick("((a,b),(c,d));", NewickMode::kUnrooted);
  const PhyloTree b = ParseNewick("((a,c),(b,d));", NewickMode::kUnrooted);
  for (Mp2Mode mode : {Mp2Mode::kLegal, Mp2Mode::kAll, Mp2Mode::kFullyLegal, Mp2Mode::kBrute}) {
    const Mp2Result r = Mp2Distance(a, b, mode);
    CHECK(r.distance == 1);
    CHECK(r.mode == mode);
    CHECK(std::abs(r.score1 - r.score2) == 1);
  }
  CHECK(Mp2Distance(a, a).distance == 0);
  CHECK(Mp2Distance(a, a).direction == "equal");
}

// The gap can be attained in one direction only; both trees' matchings must
// be scored.
TEST_CASE("asymmetric pair") {
  const PhyloTree t1 = ParseNewick("(a,(c,(b,e)),(d,f));", NewickMode::kAuto);
  const PhyloTree t2 = ParseNewick("(a,e,(((b,c),d),f));", NewickMode::kAuto);
  for (Mp2Mode mode : {Mp2Mode::kLegal, Mp2Mode::kAll, Mp2Mode::kFullyLegal}) {
    const Mp2Result r = Mp2Distance(t1, t2, mode);
    CHECK(r.distance == 2);
    CHECK(r.direction == "tree2<tree1");
    CHECK(Mp2Distance(t2, t1, mode).direction == "tree1<tree2");
    CHECK(Mp2Distance(t2, t1, mode).distance == 2);
  }
  CHECK(oracle::BruteMp2(t1, t2) == 2);
}

TEST_CASE("witness reproduces the reported scores") {
  for (int i = 0; i < 20; ++i) {
    const int n = 4 + i % 8;
    const PhyloTree a = RandomTree(n, 10 + i), b = RandomTree(n, 50 + i);
    const Mp2Result r = Mp2Distance(a, b);
    CHECK(r.witness.block_count() <= 2);
    CHECK(r.witness.block(0).front() == 0);
    CHECK(ParsimonyScore(a, r.witness) == r.score1);
    CHECK(ParsimonyScore(b, r.witness) == r.score2);
    CHECK(std::abs(r.score1 - r.score2) == r.distance);
  }
}

TEST_CASE("all modes agree with brute force") {
  for (int i = 0; i < 40; ++i) {
    const int n = 4 + i % 7;
    const PhyloTree a = RandomTree(n, 100 + i), b = RandomTree(n, 200 + i);
    const Mp2Result brute = Mp2Brute(a, b);
    CHECK(brute.distance == oracle::BruteMp2(a, b));
    for (Mp2Mode mode : {Mp2Mode::kLegal, Mp2Mode::kAll, Mp2Mode::kFullyLegal}) {
      const Mp2Result r = Mp2Distance(a, b, mode);
      CHECK(r.distance == brute.distance);
    }
    // Restricting to legal matchings never examines more characters.
    CHECK(Mp2Distance(a, b, Mp2Mode::kLegal).matchings_examined <=
          Mp2Distance(a, b, Mp2Mode::kAll).matchings_examined);
  }
}

TEST_CASE("jobs do not change the result") {
  const PhyloTree a = RandomTree(12, 7), b = RandomTree(12, 8);
  const Mp2Result one = Mp2Distance(a, b, Mp2Mode::kLegal, 1);
  const Mp2Result three = Mp2Distance(a, b, Mp2Mode::kLegal, 3);
  CHECK(one.distance == three.distance);
  CHECK(one.witness == three.witness);
  CHECK(one.matchings_examined == three.matchings_examined);
}

TEST_CASE("small and mismatched inputs") {
  const PhyloTree a = ParseNewick("(a,b,c);", NewickMode::kAuto);
  CHECK(Mp2Distance(a, a).distance == 0);
  const PhyloTree d = ParseNewick("((a,b),(c,e));", NewickMode::kAuto);
  const PhyloTree q = ParseNewick("((a,b),(c,d));", NewickMode::kAuto);
  CHECK_THROWS_AS(Mp2Distance(q, d), DomainError);
  CHECK_THROWS_AS(ParseMp2Mode("fast"), DomainError);
  CHECK(ParseMp2Mode("fully-legal") == Mp2Mode::kFullyLegal);
  CHECK(ToString(Mp2Mode::kFullyLegal) == "fully_legal");
}

TEST_CASE("characters of matchings") {
  const PhyloTree t = ParseNewick(testing::kSevenTaxa, NewickMode::kAuto);
  const CoreTree core = MakeCoreTree(t);
  CHECK(CharacterOfMatching(t, core, Matching{}) == Character::SingleBlock(7));
  for (NodeId v = 0; v < core.node_count(); ++v) {
    if (core.degree(v) < 2) continue;
    std::vector<EdgeId> touching{core.neighbors(v)[0].edge, core.neighbors(v)[1].edge};
    std::sort(touching.begin(), touching.end());
    CHECK_THROWS_AS(CharacterOfMatching(t, core, Matching{touching}), DomainError);
  }
  for (const Matching& m : BruteForceMatchings(core)) {
    const Character c = CharacterOfMatching(t, core, m);
    CHECK(c.block_count() == static_cast<int>(m.edges.size()) + 1);
    CHECK(oracle::IsCoveringBySpanning(t, c));
  }
}

}
