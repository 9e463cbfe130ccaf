#pragma once

#include "convexforest/character.hpp"
#include "convexforest/core_tree.hpp"
#include "convexforest/matchings.hpp"
#include "convexforest/phylo_tree.hpp"

#include <string>

namespace convexforest {

// Blocks are the taxa hanging off each component of core - M. The result is
// a covering convex character with at least two taxa per state.
Character CharacterOfMatching(const PhyloTree& tree, const CoreTree& core, const Matching& m);

enum class Mp2Mode { kLegal, kAll, kFullyLegal, kBrute };
Mp2Mode ParseMp2Mode(const std::string& name);
std::string ToString(Mp2Mode mode);

struct Mp2Result {
  int distance = 0;
  // Two-state witness; block 0 ("red") holds taxon 0.
  Character witness;
  int score1 = 0, score2 = 0;
  std::string direction;  // "tree1<tree2", "tree2<tree1" or "equal"
  Mp2Mode mode = Mp2Mode::kLegal;
  BigInt matchings_examined = 0;
};

// Maximum parsimony-score gap over two-state characters, found by scoring the
// characters induced by matchings of both trees' core trees. Ties go to the
// lexicographically smallest red block. Fewer than 4 taxa falls back to
// brute force.
Mp2Result Mp2Distance(const PhyloTree& t1, const PhyloTree& t2, Mp2Mode mode = Mp2Mode::kLegal,
                      int jobs = 1);

// All 2^(n-1) bipartitions. Throws DomainError above `taxon_cap` taxa.
Mp2Result Mp2Brute(const PhyloTree& t1, const PhyloTree& t2, int taxon_cap = 20);

}  // namespace convexforest
