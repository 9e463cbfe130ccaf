#pragma once

#include "convexforest/character.hpp"
#include "convexforest/phylo_tree.hpp"

#include <functional>
#include <optional>
#include <string>

namespace convexforest {

struct AgreementForest {
  Character partition;
  int size = 0;
  bool valid = false;
  std::string reason;  // empty when valid
};

// Unrooted agreement forest test: every block induces the same restricted
// tree in both inputs, and the blocks' spanning subtrees are vertex-disjoint
// in each tree.
AgreementForest IsAgreementForest(const PhyloTree& t1, const PhyloTree& t2,
                                  const Character& partition);

// Rooted trees are handled through their augmentations: a leaf with this
// label is attached above each root. It sorts after every valid taxon label,
// so it is always the last taxon.
inline constexpr const char* kRootTaxon = "~root";

PhyloTree AugmentRooted(const PhyloTree& rooted);

// `partition` ranges over the taxa of the augmented trees (n + 1 taxa, the
// root taxon last). Blocks must agree as rooted restrictions of the original
// trees and be vertex-disjoint in both augmented trees.
AgreementForest IsRootedAgreementForest(const PhyloTree& t1, const PhyloTree& t2,
                                        const Character& partition);

// "Is there an agreement forest with at most k components?"
using FptOracle = std::function<std::optional<AgreementForest>(int k)>;

// Smallest forest among characters convex on t1 with >= min_size states;
// ties broken by the lexicographically smallest partition.
AgreementForest MafEnumerate(const PhyloTree& t1, const PhyloTree& t2, int min_size = 1,
                             int jobs = 1);

// Deletes at most k-1 edges of t1 in every possible way and tests the
// resulting leaf partition. Complete, but exponential in the edge count.
std::optional<AgreementForest> FptBaseline(const PhyloTree& t1, const PhyloTree& t2, int k);

struct HybridResult {
  AgreementForest forest;
  std::string mode_used;  // "oracle" or "enumeration"
  int k_tried = 0;        // largest k handed to the oracle
};

// Oracle for k = 1..ceil(c n); past that, enumerate convex characters of t1
// with more than ceil(c n) states.
HybridResult MafHybrid(const PhyloTree& t1, const PhyloTree& t2, const FptOracle& oracle,
                       double c, int jobs = 1);
HybridResult MafHybrid(const PhyloTree& t1, const PhyloTree& t2, double c, int jobs = 1);

enum class RmafMode { kEnumerate, kHybrid };

// Minimum rooted agreement forest. Partitions are over the augmented taxa.
HybridResult Rmaf(const PhyloTree& t1, const PhyloTree& t2, RmafMode mode, double c,
                  int jobs = 1);

inline constexpr double kUnrootedTippingPoint = 0.7571;
inline constexpr double kRootedTippingPoint = 0.8204;

// Binary entropy in nats.
double Entropy(double p);

// Solves base^c = exp((2-c) H(c/(2-c))) for c by bisection. Below
// c0 = 1 - 1/sqrt(5) the enumeration cost is flat, so c0 is used there.
struct TippingPoint {
  double base = 0;
  double c = 0;
  double runtime_base = 0;
};
TippingPoint SolveTippingPoint(double base, double tol = 1e-12);

}  // namespace convexforest
