#pragma once

#include "convexforest/core_tree.hpp"
#include "convexforest/phylo_tree.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace convexforest {

// "a".."z" for n <= 26, otherwise zero-padded "t01", "t02", ...
std::vector<std::string> DefaultLabels(int n);

// Unrooted tree built by attaching leaves one at a time to uniformly chosen
// edges. Not uniform over shapes. Taxon labels are shuffled.
PhyloTree RandomTree(int n, std::uint64_t seed);
// RandomTree rooted on a uniformly chosen edge.
PhyloTree RandomRootedTree(int n, std::uint64_t seed);
// Unrooted caterpillar with cherries {a,b} and {y,z} at the ends.
PhyloTree Caterpillar(int n);

// Max-degree-3 tree on `nodes` nodes: each new node attaches to a uniformly
// chosen node of degree < 3.
CoreTree RandomDegree3Tree(int nodes, std::uint64_t seed);

// C_k: shaft 0..k-1; shaft node i carries the tooth i - (k+2i) - (k+2i+1).
CoreTree CombTree(int k);

// T_k of the lower-bound construction: T_0 is a single node and T_{k+1}
// hangs T_k's root off a fresh 22-node piece.
struct LowerBoundTree {
  CoreTree tree;
  NodeId root;
};
LowerBoundTree MakeLowerBoundTree(int k);

// The 22-node piece on its own plus the attachment node r_k (node 0); the
// piece's shaft runs r_k - s8 - s7 - s6 - s5 - s4 - s3 with s3 = r_{k+1}.
struct LowerBoundPiece {
  CoreTree tree;
  NodeId old_root;
  NodeId new_root;
};
LowerBoundPiece MakeLowerBoundPiece();

enum class Family { kRandom, kRandomRooted, kCaterpillar, kComb, kDegree3, kLowerBound };
Family ParseFamily(const std::string& name);

using Generated = std::variant<PhyloTree, CoreTree>;
Generated Generate(Family family, int size, std::uint64_t seed);

}  // namespace convexforest
