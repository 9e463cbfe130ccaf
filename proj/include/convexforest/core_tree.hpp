#pragma once

#include "convexforest/phylo_tree.hpp"

#include <span>
#include <vector>

namespace convexforest {

// An unlabelled tree of maximum degree 3. When derived from a phylogenetic
// tree by deleting its leaves, weight(v) = 3 - deg(v) is the number of taxa
// that hung off v, and the origin maps relate core ids back to the tree.
class CoreTree {
 public:
  // Throws DomainError unless the edges form a tree of max degree 3.
  CoreTree(int node_count, std::vector<Edge> edges);

  int node_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Incidence> neighbors(NodeId v) const { return adjacency_[v]; }
  int degree(NodeId v) const { return static_cast<int>(adjacency_[v].size()); }
  int weight(NodeId v) const { return 3 - degree(v); }
  int total_weight() const;

  bool derived() const { return !origin_.empty(); }
  // Original internal node of core node v.
  NodeId origin(NodeId v) const { return origin_[v]; }
  // Original edge of core edge e.
  EdgeId origin_edge(EdgeId e) const { return origin_edge_[e]; }
  // Taxa adjacent to core node v in the original tree (sorted).
  const std::vector<TaxonId>& adjacent_taxa(NodeId v) const { return taxa_[v]; }

  EdgeId EdgeBetween(NodeId a, NodeId b) const;

 private:
  friend CoreTree MakeCoreTree(const PhyloTree& tree);

  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<NodeId> origin_;
  std::vector<EdgeId> origin_edge_;
  std::vector<std::vector<TaxonId>> taxa_;
};

// Deletes the leaves of `tree` (unrooted first if needed). Core node ids
// follow increasing original node id. Requires at least 4 taxa.
CoreTree MakeCoreTree(const PhyloTree& tree);

// True iff max degree <= 3 and no two degree-2 nodes are adjacent.
bool IsGoodTree(const CoreTree& tree);

// Repeatedly picks the first edge v1v2 joining two degree-2 nodes and
// replaces v1's other edge v0v1 by v0v2. Node count is preserved; the result
// is good. Origin maps are dropped.
CoreTree GoodTreeTransform(const CoreTree& tree);

}  // namespace convexforest
