#pragma once

#include "convexforest/common.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace convexforest {

struct Edge {
  NodeId u = kNoNode;
  NodeId v = kNoNode;
  NodeId Other(NodeId w) const { return w == u ? v : u; }
};

struct Incidence {
  NodeId node;
  EdgeId edge;
};

// Binary phylogenetic tree with leaves bijectively labelled by taxa.
//
// Unrooted: every internal node has degree 3. Rooted: the root has degree 2
// and every other internal node has degree 3 (a parent and two children).
// Node ids are dense; taxon ids index the sorted list of leaf labels.
// Instances are immutable after construction.
class PhyloTree {
 public:
  // `labels[v]` is the taxon name of leaf v and empty for internal nodes.
  // Throws DomainError if the structure violates the invariants above.
  PhyloTree(std::vector<std::string> labels, std::vector<Edge> edges,
            NodeId root = kNoNode);

  int node_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Incidence> neighbors(NodeId v) const { return adjacency_[v]; }
  int degree(NodeId v) const { return static_cast<int>(adjacency_[v].size()); }

  bool is_leaf(NodeId v) const { return !labels_[v].empty(); }
  const std::string& label(NodeId v) const { return labels_[v]; }

  bool rooted() const { return root_ != kNoNode; }
  NodeId root() const { return root_; }

  int taxon_count() const { return static_cast<int>(taxa_.size()); }
  // Sorted leaf labels; position = taxon id.
  const std::vector<std::string>& taxa() const { return taxa_; }
  TaxonId taxon_of(NodeId v) const { return taxon_of_[v]; }
  NodeId leaf_of(TaxonId t) const { return leaf_of_[t]; }
  // -1 when the label is not a taxon of this tree.
  TaxonId FindTaxon(std::string_view label) const;

  // Edge joining two adjacent nodes, or -1.
  EdgeId EdgeBetween(NodeId a, NodeId b) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  NodeId root_ = kNoNode;
  std::vector<std::string> taxa_;
  std::vector<TaxonId> taxon_of_;
  std::vector<NodeId> leaf_of_;
};

// Parent/child orientation of a tree from a chosen root. Children are ordered
// by the smallest taxon id in their subtree, so children[v][0] is the "left"
// child that contains the smallest taxon.
struct RootedView {
  NodeId root = kNoNode;
  std::vector<NodeId> parent;
  std::vector<EdgeId> parent_edge;
  std::vector<std::vector<NodeId>> children;
  std::vector<NodeId> preorder;
  std::vector<TaxonId> min_taxon;
};

RootedView MakeRootedView(const PhyloTree& tree, NodeId root);
// Uses the tree's own root; the tree must be rooted.
RootedView MakeRootedView(const PhyloTree& tree);

enum class NewickMode { kRooted, kUnrooted, kAuto };

// Parses a single Newick expression terminated by ';'. Branch lengths and
// internal labels are accepted and ignored. In unrooted mode a bifurcating
// top node is suppressed; in auto mode the top node's arity decides.
PhyloTree ParseNewick(std::string_view text, NewickMode mode);

// Canonical Newick: children ordered by smallest descendant label. Unrooted
// trees are written bifurcating, split on the edge next to the smallest
// taxon's neighbour that leads away from the second side's smaller label, so
// that the quartet ab|cd prints as "((a,b),(c,d));".
std::string SerializeNewick(const PhyloTree& tree);

// Minimal spanning subtree of the marked taxa with degree-2 nodes suppressed.
// For rooted input the result is rooted at the most recent common ancestor.
PhyloTree Restrict(const PhyloTree& tree, const std::vector<char>& taxon_mask);
PhyloTree Restrict(const PhyloTree& tree, std::span<const std::string> subset);

// Node mask of the minimal subtree spanning the marked taxa.
std::vector<char> SpanningNodes(const PhyloTree& tree,
                                const std::vector<char>& taxon_mask);

// Subdivides `edge` with a new node (id = node_count()) that becomes the
// root. The input must be unrooted.
PhyloTree RootBySubdivision(const PhyloTree& tree, EdgeId edge);

// Suppresses the degree-2 root of a rooted tree; unrooted input is returned
// unchanged.
PhyloTree Unroot(const PhyloTree& tree);

// Adds a leaf labelled `root_label` above the root of a rooted tree and
// returns the resulting unrooted tree.
PhyloTree AttachRootTaxon(const PhyloTree& rooted, const std::string& root_label);

EdgeId PendantEdge(const PhyloTree& tree, TaxonId taxon);

bool SameTaxa(const PhyloTree& a, const PhyloTree& b);
void RequireSameTaxa(const PhyloTree& a, const PhyloTree& b);

nlohmann::json ToJson(const PhyloTree& tree);

}  // namespace convexforest
