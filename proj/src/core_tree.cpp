#include "convexforest/core_tree.hpp"

#include <algorithm>

namespace convexforest {

CoreTree::CoreTree(int node_count, std::vector<Edge> edges) : edges_(std::move(edges)) {
  if (node_count < 1) throw DomainError("core tree must have at least one node");
  if (edge_count() != node_count - 1) throw DomainError("core tree edge count must be node count - 1");
  adjacency_.assign(node_count, {});
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const auto [u, v] = edges_[e];
    if (u < 0 || v < 0 || u >= node_count || v >= node_count || u == v)
      throw DomainError("core edge references an invalid node");
    adjacency_[u].push_back({v, e});
    adjacency_[v].push_back({u, e});
  }
  for (NodeId v = 0; v < node_count; ++v)
    if (degree(v) > 3) throw DomainError("node of degree > 3 in core tree");
  std::vector<char> seen(node_count, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (auto [w, e] : adjacency_[v])
      if (!seen[w]) seen[w] = 1, ++reached, stack.push_back(w);
  }
  if (reached != node_count) throw DomainError("core tree is not connected");
}

int CoreTree::total_weight() const {
  int total = 0;
  for (NodeId v = 0; v < node_count(); ++v) total += weight(v);
  return total;
}

EdgeId CoreTree::EdgeBetween(NodeId a, NodeId b) const {
  for (auto [w, e] : adjacency_[a])
    if (w == b) return e;
  return -1;
}

CoreTree MakeCoreTree(const PhyloTree& input) {
  const PhyloTree tree = Unroot(input);
  if (tree.taxon_count() < 4) throw DomainError("core tree needs at least 4 taxa");
  std::vector<NodeId> core_id(tree.node_count(), kNoNode);
  std::vector<NodeId> origin;
  for (NodeId v = 0; v < tree.node_count(); ++v)
    if (!tree.is_leaf(v)) {
      core_id[v] = static_cast<NodeId>(origin.size());
      origin.push_back(v);
    }
  std::vector<Edge> edges;
  std::vector<EdgeId> origin_edge;
  for (EdgeId e = 0; e < tree.edge_count(); ++e) {
    const Edge& ed = tree.edge(e);
    if (tree.is_leaf(ed.u) || tree.is_leaf(ed.v)) continue;
    edges.push_back({core_id[ed.u], core_id[ed.v]});
    origin_edge.push_back(e);
  }
  CoreTree core(static_cast<int>(origin.size()), std::move(edges));
  core.origin_ = std::move(origin);
  core.origin_edge_ = std::move(origin_edge);
  core.taxa_.assign(core.node_count(), {});
  for (NodeId c = 0; c < core.node_count(); ++c) {
    for (auto [w, e] : tree.neighbors(core.origin_[c]))
      if (tree.is_leaf(w)) core.taxa_[c].push_back(tree.taxon_of(w));
    std::sort(core.taxa_[c].begin(), core.taxa_[c].end());
  }
  return core;
}

bool IsGoodTree(const CoreTree& tree) {
  for (const Edge& e : tree.edges())
    if (tree.degree(e.u) == 2 && tree.degree(e.v) == 2) return false;
  return true;
}

CoreTree GoodTreeTransform(const CoreTree& tree) {
  const int n = tree.node_count();
  std::vector<Edge> edges = tree.edges();
  std::vector<int> degree(n, 0);
  for (const Edge& e : edges) ++degree[e.u], ++degree[e.v];
  while (true) {
    EdgeId pick = -1;
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges.size()); ++e)
      if (degree[edges[e].u] == 2 && degree[edges[e].v] == 2) {
        pick = e;
        break;
      }
    if (pick < 0) break;
    const NodeId v1 = edges[pick].u, v2 = edges[pick].v;
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges.size()); ++e) {
      if (e == pick || (edges[e].u != v1 && edges[e].v != v1)) continue;
      // e = v0v1 becomes v0v2.
      if (edges[e].u == v1) edges[e].u = v2; else edges[e].v = v2;
      --degree[v1];
      ++degree[v2];
      break;
    }
  }
  return CoreTree(n, std::move(edges));
}

}  // namespace convexforest
