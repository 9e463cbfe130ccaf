#include "convexforest/phylo_tree.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <limits>
#include <numeric>
#include <set>

namespace convexforest {

PhyloTree::PhyloTree(std::vector<std::string> labels, std::vector<Edge> edges,
                     NodeId root)
    : labels_(std::move(labels)), edges_(std::move(edges)), root_(root) {
  const int n = node_count();
  if (n == 0) throw DomainError("tree has no nodes");
  if (edge_count() != n - 1) throw DomainError("tree edge count must be node count - 1");
  adjacency_.assign(n, {});
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const auto [u, v] = edges_[e];
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw DomainError("tree edge references an invalid node");
    adjacency_[u].push_back({v, e});
    adjacency_[v].push_back({u, e});
  }
  // Connected with n-1 edges means acyclic.
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (auto [w, e] : adjacency_[v])
      if (!seen[w]) seen[w] = 1, ++reached, stack.push_back(w);
  }
  if (reached != n) throw DomainError("tree is not connected");

  if (root_ != kNoNode) {
    if (root_ < 0 || root_ >= n) throw DomainError("root is not a node");
    if (n > 1 && degree(root_) != 2)
      throw DomainError("root of a rooted tree must have two children");
    if (!labels_[root_].empty() && n > 1) throw DomainError("root cannot be a leaf");
  }
  for (NodeId v = 0; v < n; ++v) {
    const bool labelled = !labels_[v].empty();
    if (v == root_ && n > 1) continue;
    if (degree(v) <= 1) {
      if (!labelled) throw DomainError("leaf without a taxon label");
    } else {
      if (labelled) throw DomainError("internal node carries a taxon label");
      if (degree(v) != 3)
        throw DomainError("internal node of wrong degree (" + std::to_string(degree(v)) + ")");
    }
  }

  std::vector<NodeId> leaves;
  for (NodeId v = 0; v < n; ++v)
    if (!labels_[v].empty()) leaves.push_back(v);
  std::sort(leaves.begin(), leaves.end(),
            [&](NodeId a, NodeId b) { return labels_[a] < labels_[b]; });
  taxon_of_.assign(n, -1);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (i > 0 && labels_[leaves[i]] == labels_[leaves[i - 1]])
      throw DomainError("duplicate leaf label '" + labels_[leaves[i]] + "'");
    taxa_.push_back(labels_[leaves[i]]);
    taxon_of_[leaves[i]] = static_cast<TaxonId>(i);
  }
  leaf_of_ = std::move(leaves);
}

TaxonId PhyloTree::FindTaxon(std::string_view label) const {
  auto it = std::lower_bound(taxa_.begin(), taxa_.end(), label);
  if (it == taxa_.end() || *it != label) return -1;
  return static_cast<TaxonId>(it - taxa_.begin());
}

EdgeId PhyloTree::EdgeBetween(NodeId a, NodeId b) const {
  for (auto [w, e] : adjacency_[a])
    if (w == b) return e;
  return -1;
}

RootedView MakeRootedView(const PhyloTree& tree, NodeId root) {
  const int n = tree.node_count();
  RootedView view;
  view.root = root;
  view.parent.assign(n, kNoNode);
  view.parent_edge.assign(n, -1);
  view.children.assign(n, {});
  view.min_taxon.assign(n, std::numeric_limits<TaxonId>::max());
  view.preorder.reserve(n);
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    view.preorder.push_back(v);
    for (auto [w, e] : tree.neighbors(v)) {
      if (w == view.parent[v]) continue;
      view.parent[w] = v;
      view.parent_edge[w] = e;
      view.children[v].push_back(w);
      stack.push_back(w);
    }
  }
  for (auto it = view.preorder.rbegin(); it != view.preorder.rend(); ++it) {
    NodeId v = *it;
    if (tree.is_leaf(v)) view.min_taxon[v] = tree.taxon_of(v);
    for (NodeId c : view.children[v])
      view.min_taxon[v] = std::min(view.min_taxon[v], view.min_taxon[c]);
    std::sort(view.children[v].begin(), view.children[v].end(),
              [&](NodeId a, NodeId b) { return view.min_taxon[a] < view.min_taxon[b]; });
  }
  return view;
}

RootedView MakeRootedView(const PhyloTree& tree) {
  if (!tree.rooted()) throw DomainError("tree is not rooted");
  return MakeRootedView(tree, tree.root());
}

namespace {

struct ParsedNode {
  std::string label;
  std::vector<int> children;
};

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  // Returns the parsed nodes; node 0 is the top node.
  std::vector<ParsedNode> Parse() {
    SkipSpace();
    if (AtEnd()) Fail("empty input");
    ParseSubtree();
    SkipSpace();
    if (AtEnd()) Fail("missing ';' terminator");
    if (Peek() == ')') Fail("unbalanced parentheses");
    if (Peek() != ';') Fail(std::string("unexpected character '") + Peek() + "'");
    ++pos_;
    SkipSpace();
    if (!AtEnd()) Fail("trailing characters after ';'");
    return std::move(nodes_);
  }

 private:
  int ParseSubtree() {
    SkipSpace();
    int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    if (!AtEnd() && Peek() == '(') {
      ++pos_;
      while (true) {
        int child = ParseSubtree();
        nodes_[id].children.push_back(child);
        SkipSpace();
        if (AtEnd()) Fail("unbalanced parentheses");
        char c = Peek();
        ++pos_;
        if (c == ',') continue;
        if (c == ')') break;
        --pos_;
        Fail(std::string("unexpected character '") + c + "'");
      }
      SkipSpace();
      ParseLabel();  // internal labels are ignored
    } else {
      std::size_t start = pos_;
      std::string label = ParseLabel();
      if (label.empty()) {
        if (AtEnd()) Fail("unbalanced parentheses");
        pos_ = start;
        Fail("expected a taxon label");
      }
      nodes_[id].label = std::move(label);
    }
    SkipSpace();
    if (!AtEnd() && Peek() == ':') {
      ++pos_;
      SkipSpace();
      std::size_t start = pos_;
      while (!AtEnd() && (std::isdigit(static_cast<unsigned char>(Peek())) ||
                          Peek() == '.' || Peek() == 'e' || Peek() == 'E' ||
                          Peek() == '-' || Peek() == '+'))
        ++pos_;
      if (pos_ == start) Fail("expected a branch length");
    }
    return id;
  }

  std::string ParseLabel() {
    std::string out;
    while (!AtEnd()) {
      char c = Peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') {
        out += c;
        ++pos_;
      } else {
        break;
      }
    }
    return out;
  }

  void SkipSpace() {
    while (!AtEnd() && std::isspace(static_cast<unsigned char>(Peek()))) ++pos_;
  }
  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek() const { return text_[pos_]; }
  [[noreturn]] void Fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<ParsedNode> nodes_;
};

// Rebuilds a tree from an adjacency description over a subset of node ids,
// keeping the relative id order.
PhyloTree Renumber(const std::vector<std::string>& labels,
                   const std::vector<std::pair<NodeId, NodeId>>& edges,
                   const std::vector<char>& keep, NodeId root) {
  std::vector<NodeId> new_id(labels.size(), kNoNode);
  std::vector<std::string> new_labels;
  for (std::size_t v = 0; v < labels.size(); ++v)
    if (keep[v]) {
      new_id[v] = static_cast<NodeId>(new_labels.size());
      new_labels.push_back(labels[v]);
    }
  std::vector<Edge> new_edges;
  for (auto [a, b] : edges) new_edges.push_back({new_id[a], new_id[b]});
  return PhyloTree(std::move(new_labels), std::move(new_edges),
                   root == kNoNode ? kNoNode : new_id[root]);
}

// Removes unlabelled degree-2 nodes other than `root` from an edge list.
void SuppressDegreeTwo(const std::vector<std::string>& labels,
                       std::vector<std::pair<NodeId, NodeId>>& edges,
                       std::vector<char>& keep, NodeId root) {
  std::map<NodeId, std::set<NodeId>> adj;
  for (auto [a, b] : edges) adj[a].insert(b), adj[b].insert(a);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [v, nb] : adj) {
      if (v == root || !keep[v] || !labels[v].empty() || nb.size() != 2) continue;
      NodeId x = *nb.begin(), y = *std::next(nb.begin());
      adj[x].erase(v), adj[y].erase(v);
      adj[x].insert(y), adj[y].insert(x);
      nb.clear();
      keep[v] = 0;
      changed = true;
    }
  }
  edges.clear();
  for (auto& [v, nb] : adj)
    for (NodeId w : nb)
      if (v < w) edges.emplace_back(v, w);
}

}  // namespace

PhyloTree ParseNewick(std::string_view text, NewickMode mode) {
  std::vector<ParsedNode> nodes = NewickParser(text).Parse();
  const int n = static_cast<int>(nodes.size());
  int leaves = 0;
  std::vector<std::string> labels(n);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int v = 0; v < n; ++v) {
    if (nodes[v].children.empty()) {
      ++leaves;
      labels[v] = nodes[v].label;
    } else {
      int arity = static_cast<int>(nodes[v].children.size());
      bool top = v == 0;
      bool ok = arity == 2 || (top && arity == 3 && mode != NewickMode::kRooted);
      if (!ok)
        throw DomainError("internal node of wrong degree: " + std::to_string(arity) +
                          (top ? " children at the top node" : " children"));
    }
    for (int c : nodes[v].children) edges.emplace_back(v, c);
  }
  if (leaves < 2) throw DomainError("tree must have at least 2 leaves");

  const bool bifurcating_top = nodes[0].children.size() == 2;
  bool rooted = false;
  switch (mode) {
    case NewickMode::kRooted: rooted = true; break;
    case NewickMode::kUnrooted: rooted = false; break;
    case NewickMode::kAuto: rooted = bifurcating_top; break;
  }
  std::vector<char> keep(n, 1);
  if (!rooted && bifurcating_top) {
    SuppressDegreeTwo(labels, edges, keep, kNoNode);
    // Only the top node can have degree 2; restore parse order of the edges.
    std::sort(edges.begin(), edges.end());
  }
  return Renumber(labels, edges, keep, rooted ? 0 : kNoNode);
}

namespace {

void WriteSubtree(const PhyloTree& tree, const RootedView& view, NodeId v,
                  NodeId skip, std::string& out) {
  if (tree.is_leaf(v)) {
    out += tree.label(v);
    return;
  }
  out += '(';
  bool first = true;
  for (NodeId c : view.children[v]) {
    if (c == skip) continue;
    if (!first) out += ',';
    first = false;
    WriteSubtree(tree, view, c, skip, out);
  }
  out += ')';
}

}  // namespace

std::string SerializeNewick(const PhyloTree& tree) {
  std::string out;
  if (tree.node_count() == 1) return tree.label(0) + ";";
  if (tree.rooted()) {
    RootedView view = MakeRootedView(tree);
    WriteSubtree(tree, view, view.root, kNoNode, out);
    return out + ";";
  }
  if (tree.taxon_count() == 2) return "(" + tree.taxa()[0] + "," + tree.taxa()[1] + ");";
  // Orient from the smallest taxon's neighbour p. Of p's two other
  // neighbours, the one whose side holds the larger minimum label is split
  // off to form the second root child.
  NodeId a = tree.leaf_of(0);
  NodeId p = tree.neighbors(a)[0].node;
  RootedView view = MakeRootedView(tree, p);
  NodeId split = view.children[p].back();
  out += '(';
  WriteSubtree(tree, view, p, split, out);
  out += ',';
  WriteSubtree(tree, view, split, kNoNode, out);
  out += ");";
  return out;
}

std::vector<char> SpanningNodes(const PhyloTree& tree, const std::vector<char>& taxon_mask) {
  std::vector<char> span(tree.node_count(), 0);
  TaxonId first = -1;
  int marked = 0;
  for (TaxonId t = 0; t < tree.taxon_count(); ++t)
    if (taxon_mask[t]) {
      if (first < 0) first = t;
      ++marked;
    }
  if (first < 0) return span;
  RootedView view = MakeRootedView(tree, tree.leaf_of(first));
  std::vector<int> below(tree.node_count(), 0);
  for (auto it = view.preorder.rbegin(); it != view.preorder.rend(); ++it) {
    NodeId v = *it;
    if (tree.is_leaf(v) && taxon_mask[tree.taxon_of(v)]) ++below[v];
    if (view.parent[v] != kNoNode) below[view.parent[v]] += below[v];
  }
  // Rooted at a marked leaf: v is on a path between marked taxa iff its
  // subtree holds at least one of them.
  for (NodeId v = 0; v < tree.node_count(); ++v) span[v] = below[v] > 0;
  (void)marked;
  return span;
}

PhyloTree Restrict(const PhyloTree& tree, const std::vector<char>& taxon_mask) {
  if (static_cast<int>(taxon_mask.size()) != tree.taxon_count())
    throw DomainError("taxon mask size does not match the tree");
  if (std::find(taxon_mask.begin(), taxon_mask.end(), 1) == taxon_mask.end())
    throw DomainError("cannot restrict to an empty taxon set");
  std::vector<char> keep = SpanningNodes(tree, taxon_mask);
  std::vector<std::string> labels(tree.node_count());
  for (NodeId v = 0; v < tree.node_count(); ++v)
    if (tree.is_leaf(v) && keep[v]) labels[v] = tree.label(v);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const Edge& e : tree.edges())
    if (keep[e.u] && keep[e.v]) edges.emplace_back(e.u, e.v);

  NodeId root = kNoNode;
  if (tree.rooted()) {
    // The kept node closest to the original root is the common ancestor.
    RootedView view = MakeRootedView(tree);
    for (NodeId v : view.preorder)
      if (keep[v]) {
        root = v;
        break;
      }
    if (tree.is_leaf(root)) root = kNoNode;  // single taxon
  }
  SuppressDegreeTwo(labels, edges, keep, root);
  return Renumber(labels, edges, keep, root);
}

PhyloTree Restrict(const PhyloTree& tree, std::span<const std::string> subset) {
  std::vector<char> mask(tree.taxon_count(), 0);
  for (const auto& label : subset) {
    TaxonId t = tree.FindTaxon(label);
    if (t < 0) throw DomainError("unknown taxon '" + label + "'");
    mask[t] = 1;
  }
  return Restrict(tree, mask);
}

PhyloTree RootBySubdivision(const PhyloTree& tree, EdgeId edge) {
  if (tree.rooted()) throw DomainError("tree is already rooted");
  if (edge < 0 || edge >= tree.edge_count()) throw DomainError("invalid edge id");
  std::vector<std::string> labels(tree.node_count() + 1);
  for (NodeId v = 0; v < tree.node_count(); ++v) labels[v] = tree.label(v);
  NodeId r = tree.node_count();
  std::vector<Edge> edges = tree.edges();
  NodeId v = edges[edge].v;
  edges[edge].v = r;
  edges.push_back({r, v});
  return PhyloTree(std::move(labels), std::move(edges), r);
}

PhyloTree Unroot(const PhyloTree& tree) {
  if (!tree.rooted() || tree.node_count() == 1) return tree;
  NodeId r = tree.root();
  std::vector<std::string> labels(tree.node_count());
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 0; v < tree.node_count(); ++v) labels[v] = tree.label(v);
  for (const Edge& e : tree.edges()) edges.emplace_back(e.u, e.v);
  std::vector<char> keep(tree.node_count(), 1);
  SuppressDegreeTwo(labels, edges, keep, kNoNode);
  (void)r;
  return Renumber(labels, edges, keep, kNoNode);
}

PhyloTree AttachRootTaxon(const PhyloTree& rooted, const std::string& root_label) {
  if (!rooted.rooted()) throw DomainError("tree is not rooted");
  if (rooted.FindTaxon(root_label) >= 0) throw DomainError("root label clashes with a taxon");
  std::vector<std::string> labels(rooted.node_count() + 1);
  for (NodeId v = 0; v < rooted.node_count(); ++v) labels[v] = rooted.label(v);
  labels.back() = root_label;
  std::vector<Edge> edges = rooted.edges();
  edges.push_back({rooted.root(), rooted.node_count()});
  return PhyloTree(std::move(labels), std::move(edges));
}

EdgeId PendantEdge(const PhyloTree& tree, TaxonId taxon) {
  return tree.neighbors(tree.leaf_of(taxon))[0].edge;
}

bool SameTaxa(const PhyloTree& a, const PhyloTree& b) { return a.taxa() == b.taxa(); }

void RequireSameTaxa(const PhyloTree& a, const PhyloTree& b) {
  if (!SameTaxa(a, b)) throw DomainError("trees are not on the same taxa set");
}

nlohmann::json ToJson(const PhyloTree& tree) {
  nlohmann::json nodes = nlohmann::json::array();
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    nlohmann::json node{{"id", v}};
    if (tree.is_leaf(v)) node["label"] = tree.label(v);
    nodes.push_back(node);
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : tree.edges()) edges.push_back({e.u, e.v});
  nlohmann::json out{{"nodes", nodes}, {"edges", edges}, {"rooted", tree.rooted()}};
  if (tree.rooted()) out["root"] = tree.root();
  return out;
}

}  // namespace convexforest
