#pragma once

// Slow, independent reference implementations used by the tests and by
// `selftest`. None of them goes through the dynamic programs they check.

#include "convexforest/character.hpp"
#include "convexforest/core_tree.hpp"
#include "convexforest/matchings.hpp"
#include "convexforest/phylo_tree.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace convexforest::oracle {

// Every partition of {0..n-1}, via restricted growth strings.
void ForEachPartition(int n, const std::function<void(const Character&)>& visit);

// Minimum number of bichromatic edges over all assignments of block ids to
// internal nodes.
int ExhaustiveParsimony(const PhyloTree& tree, const Character& f);

// Nodes of the minimal subtree spanning `taxa`: a leaf in the set, or an
// internal node separating at least two of them.
std::vector<char> SpanBySeparation(const PhyloTree& tree, const std::vector<TaxonId>& taxa);

// Vertex-disjoint spanning subtrees.
bool IsConvexBySpanning(const PhyloTree& tree, const Character& f);
// Convex and the spanning subtrees cover every node.
bool IsCoveringBySpanning(const PhyloTree& tree, const Character& f);

// Nontrivial splits as taxon bitmasks normalised to exclude taxon 0.
std::set<std::uint64_t> Splits(const PhyloTree& tree);
// Clusters (taxon bitmasks below each node) of a rooted tree.
std::set<std::uint64_t> Clusters(const PhyloTree& rooted);
bool SameUnrootedTopology(const PhyloTree& a, const PhyloTree& b);
bool SameRootedTopology(const PhyloTree& a, const PhyloTree& b);

// Agreement-forest tests built from split/cluster restriction and
// separation-based spanning sets.
bool IsAgreementForestBySplits(const PhyloTree& t1, const PhyloTree& t2, const Character& p);
// Partition over the taxa plus a trailing root taxon.
bool IsRootedAgreementForestByClusters(const PhyloTree& t1, const PhyloTree& t2, const Character& p);

// Minimum over every partition; returns the smallest forest size.
int BruteMafSize(const PhyloTree& t1, const PhyloTree& t2);
int BruteRootedMafSize(const PhyloTree& t1, const PhyloTree& t2);

// All covering convex characters with at least two taxa per block.
std::vector<Character> CoveringCharacters(const PhyloTree& tree);

// All convex characters (any block sizes).
std::vector<Character> ConvexCharacters(const PhyloTree& tree);

// Maximum gap over all two-state characters using exhaustive parsimony.
int BruteMp2(const PhyloTree& t1, const PhyloTree& t2);

// Legal matchings by the original definition: no component of core - M that
// is a single edge with both ends matched.
bool IsLegalByDefinition(const CoreTree& core, const Matching& m);

}  // namespace convexforest::oracle
