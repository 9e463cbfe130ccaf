#include "convexforest/parsimony.hpp"

#include <algorithm>
#include <iterator>
#include <random>

namespace convexforest {

namespace {

void RequireMatchingTaxa(const PhyloTree& tree, const Character& f) {
  if (f.taxon_count() != tree.taxon_count())
    throw DomainError("character taxa do not match the tree taxa");
}

}  // namespace

FitchResult FitchBottomUp(const PhyloTree& tree, const Character& f,
                          std::optional<EdgeId> root_edge) {
  RequireMatchingTaxa(tree, f);
  FitchResult out{.score = 0,
                  .rooted = tree.rooted() || tree.node_count() == 1
                                ? tree
                                : RootBySubdivision(tree, root_edge.value_or(PendantEdge(tree, 0))),
                  .input_nodes = tree.node_count(),
                  .state_sets = {},
                  .character = f};
  const PhyloTree& rt = out.rooted;
  const std::vector<int> state = f.StateOf();
  out.state_sets.assign(rt.node_count(), {});
  if (!rt.rooted()) {  // single leaf
    out.state_sets[0] = {state[0]};
    return out;
  }
  const RootedView view = MakeRootedView(rt);
  for (auto it = view.preorder.rbegin(); it != view.preorder.rend(); ++it) {
    const NodeId v = *it;
    auto& set = out.state_sets[v];
    if (rt.is_leaf(v)) {
      set = {state[rt.taxon_of(v)]};
      continue;
    }
    const auto& a = out.state_sets[view.children[v][0]];
    const auto& b = out.state_sets[view.children[v][1]];
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(set));
    if (set.empty()) {
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(set));
      ++out.score;
    }
  }
  return out;
}

Extension FitchTopDown(const FitchResult& fitch, ChoicePolicy policy, std::uint64_t seed) {
  const PhyloTree& rt = fitch.rooted;
  std::vector<int> assign(rt.node_count(), -1);
  std::mt19937_64 rng(seed);
  auto choose = [&](const std::vector<int>& options) {
    if (policy == ChoicePolicy::kFirst || options.size() == 1) return options.front();
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    return options[pick(rng)];
  };
  if (!rt.rooted()) {
    assign[0] = fitch.state_sets[0].front();
  } else {
    const RootedView view = MakeRootedView(rt);
    for (NodeId v : view.preorder) {
      const auto& set = fitch.state_sets[v];
      const NodeId p = view.parent[v];
      if (p != kNoNode && std::binary_search(set.begin(), set.end(), assign[p]))
        assign[v] = assign[p];
      else
        assign[v] = choose(set);
    }
  }
  assign.resize(fitch.input_nodes);
  return {std::move(assign)};
}

std::vector<EdgeId> MutationEdges(const PhyloTree& tree, const Extension& ext) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < tree.edge_count(); ++e)
    if (ext.assignment[tree.edge(e).u] != ext.assignment[tree.edge(e).v]) out.push_back(e);
  return out;
}

int ExtensionLength(const PhyloTree& tree, const Extension& ext) {
  return static_cast<int>(MutationEdges(tree, ext).size());
}

int ParsimonyScore(const PhyloTree& tree, const Character& f) {
  return FitchBottomUp(tree, f).score;
}

bool IsConvex(const PhyloTree& tree, const Character& f) {
  return ParsimonyScore(tree, f) == f.block_count() - 1;
}

PartialExtension NaturalPartialExtension(const PhyloTree& tree, const Character& f) {
  if (!IsConvex(tree, f)) throw DomainError("character is not convex on the tree");
  PartialExtension out;
  out.assignment.assign(tree.node_count(), -1);
  out.covered.assign(tree.node_count(), 0);
  for (int s = 0; s < f.block_count(); ++s) {
    std::vector<char> mask(tree.taxon_count(), 0);
    for (TaxonId t : f.block(s)) mask[t] = 1;
    const std::vector<char> span = SpanningNodes(tree, mask);
    for (NodeId v = 0; v < tree.node_count(); ++v)
      if (span[v]) {
        out.assignment[v] = s;
        out.covered[v] = 1;
      }
  }
  out.covering = std::all_of(out.covered.begin(), out.covered.end(), [](char c) { return c; });
  return out;
}

Character TwoStateFromCovering(const PhyloTree& tree, const Character& fc) {
  const PartialExtension ext = NaturalPartialExtension(tree, fc);
  if (!ext.covering) throw DomainError("character is not covering");
  if (fc.block_count() == 1) return fc;
  // Component graph: one vertex per state (its spanning subtree), one edge
  // per mutation edge. It is a tree, so the 2-colouring is unique.
  const int k = fc.block_count();
  std::vector<std::vector<int>> adj(k);
  for (const Edge& e : tree.edges()) {
    const int a = ext.assignment[e.u], b = ext.assignment[e.v];
    if (a != b) adj[a].push_back(b), adj[b].push_back(a);
  }
  std::vector<int> colour(k, -1);
  const int start = fc.StateOf()[0];
  colour[start] = 0;
  std::vector<int> queue{start};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (int w : adj[queue[i]])
      if (colour[w] < 0) colour[w] = 1 - colour[queue[i]], queue.push_back(w);
  std::vector<int> states(tree.taxon_count());
  const std::vector<int> state_of = fc.StateOf();
  for (TaxonId t = 0; t < tree.taxon_count(); ++t) states[t] = colour[state_of[t]];
  return Character::FromStates(states);
}

ParsimonyScorer::ParsimonyScorer(const PhyloTree& tree) : tree_(&tree) {
  RootedView view;
  if (tree.rooted()) {
    view = MakeRootedView(tree);
  } else {
    top_leaf_ = tree.leaf_of(0);
    view = MakeRootedView(tree, top_leaf_);
  }
  root_ = tree.rooted() ? tree.root() : (tree.node_count() > 1 ? view.children[top_leaf_][0] : kNoNode);
  children_ = view.children;
  for (auto it = view.preorder.rbegin(); it != view.preorder.rend(); ++it)
    if (!tree.is_leaf(*it)) postorder_.push_back(*it);
}

int ParsimonyScorer::Score(const Character& f) const {
  if (f.taxon_count() != tree_->taxon_count())
    throw DomainError("character taxa do not match the tree taxa");
  if (f.block_count() > 64) return ParsimonyScore(*tree_, f);
  const std::vector<int> state = f.StateOf();
  std::vector<std::uint64_t> mask(tree_->node_count(), 0);
  for (TaxonId t = 0; t < tree_->taxon_count(); ++t)
    mask[tree_->leaf_of(t)] = std::uint64_t{1} << state[t];
  int score = 0;
  for (NodeId v : postorder_) {
    const std::uint64_t a = mask[children_[v][0]], b = mask[children_[v][1]];
    const std::uint64_t both = a & b;
    if (both) {
      mask[v] = both;
    } else {
      mask[v] = a | b;
      ++score;
    }
  }
  if (top_leaf_ != kNoNode && root_ != kNoNode && !(mask[top_leaf_] & mask[root_])) ++score;
  return score;
}

int ParsimonyScorer::ScoreBinary(const std::vector<char>& red) const {
  std::vector<unsigned char> mask(tree_->node_count(), 0);
  for (TaxonId t = 0; t < tree_->taxon_count(); ++t)
    mask[tree_->leaf_of(t)] = red[t] ? 1 : 2;
  int score = 0;
  for (NodeId v : postorder_) {
    const unsigned char a = mask[children_[v][0]], b = mask[children_[v][1]];
    if (a & b) {
      mask[v] = a & b;
    } else {
      mask[v] = a | b;
      ++score;
    }
  }
  if (top_leaf_ != kNoNode && root_ != kNoNode && !(mask[top_leaf_] & mask[root_])) ++score;
  return score;
}

}  // namespace convexforest
