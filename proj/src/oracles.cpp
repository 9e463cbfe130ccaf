#include "convexforest/oracles.hpp"

#include <algorithm>
#include <climits>

namespace convexforest::oracle {

void ForEachPartition(int n, const std::function<void(const Character&)>& visit) {
  std::vector<int> rgs(n, 0);
  auto rec = [&](auto&& self, int i, int blocks) -> void {
    if (i == n) {
      visit(Character::FromStates(rgs));
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) return;
  rec(rec, 1, 1);
}

int ExhaustiveParsimony(const PhyloTree& tree, const Character& f) {
  const std::vector<int> state_of = f.StateOf();
  std::vector<NodeId> internal;
  std::vector<int> assign(tree.node_count(), 0);
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    if (tree.is_leaf(v)) assign[v] = state_of[tree.taxon_of(v)];
    else internal.push_back(v);
  }
  const int k = f.block_count();
  int best = INT_MAX;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == internal.size()) {
      int cost = 0;
      for (const Edge& e : tree.edges()) cost += assign[e.u] != assign[e.v];
      best = std::min(best, cost);
      return;
    }
    for (int s = 0; s < k; ++s) {
      assign[internal[i]] = s;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return best;
}

std::vector<char> SpanBySeparation(const PhyloTree& tree, const std::vector<TaxonId>& taxa) {
  std::vector<char> in_set(tree.taxon_count(), 0);
  for (TaxonId t : taxa) in_set[t] = 1;
  std::vector<char> span(tree.node_count(), 0);
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    if (tree.is_leaf(v)) {
      span[v] = in_set[tree.taxon_of(v)];
      continue;
    }
    // Count the branches at v that contain a marked taxon.
    int branches = 0;
    for (auto [start, e] : tree.neighbors(v)) {
      bool hit = false;
      std::vector<NodeId> stack{start};
      std::vector<NodeId> from{v};
      while (!stack.empty() && !hit) {
        const NodeId x = stack.back();
        const NodeId px = from.back();
        stack.pop_back();
        from.pop_back();
        if (tree.is_leaf(x) && in_set[tree.taxon_of(x)]) hit = true;
        for (auto [y, e2] : tree.neighbors(x))
          if (y != px) stack.push_back(y), from.push_back(x);
      }
      branches += hit;
    }
    span[v] = branches >= 2;
  }
  return span;
}

bool IsConvexBySpanning(const PhyloTree& tree, const Character& f) {
  std::vector<int> owners(tree.node_count(), 0);
  for (const auto& block : f.blocks()) {
    const std::vector<char> span = SpanBySeparation(tree, block);
    for (NodeId v = 0; v < tree.node_count(); ++v)
      if (span[v] && ++owners[v] > 1) return false;
  }
  return true;
}

bool IsCoveringBySpanning(const PhyloTree& tree, const Character& f) {
  std::vector<int> owners(tree.node_count(), 0);
  for (const auto& block : f.blocks()) {
    const std::vector<char> span = SpanBySeparation(tree, block);
    for (NodeId v = 0; v < tree.node_count(); ++v) owners[v] += span[v];
  }
  return std::all_of(owners.begin(), owners.end(), [](int c) { return c == 1; });
}

namespace {

// Taxon bitmask below each node, with the tree oriented from `root`.
std::vector<std::uint64_t> BelowMasks(const PhyloTree& tree, NodeId root, std::vector<NodeId>& parent) {
  const int n = tree.node_count();
  parent.assign(n, kNoNode);
  std::vector<NodeId> order{root};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto [w, e] : tree.neighbors(order[i]))
      if (w != parent[order[i]]) parent[w] = order[i], order.push_back(w);
  std::vector<std::uint64_t> mask(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (tree.is_leaf(*it)) mask[*it] |= std::uint64_t{1} << tree.taxon_of(*it);
    if (parent[*it] != kNoNode) mask[parent[*it]] |= mask[*it];
  }
  return mask;
}

std::uint64_t Full(int n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

std::uint64_t Normalise(std::uint64_t side, std::uint64_t all) {
  return (side & 1) ? (all & ~side) : side;
}

int Popcount(std::uint64_t x) { return __builtin_popcountll(x); }

std::set<std::uint64_t> RestrictSplits(const std::set<std::uint64_t>& splits, std::uint64_t subset) {
  std::set<std::uint64_t> out;
  for (std::uint64_t s : splits) {
    const std::uint64_t a = s & subset, b = ~s & subset;
    if (Popcount(a) >= 2 && Popcount(b) >= 2) out.insert(std::min(a, b));
  }
  return out;
}

std::set<std::uint64_t> RestrictClusters(const std::set<std::uint64_t>& clusters, std::uint64_t subset) {
  std::set<std::uint64_t> out;
  for (std::uint64_t c : clusters)
    if (c & subset) out.insert(c & subset);
  return out;
}

}  // namespace

std::set<std::uint64_t> Splits(const PhyloTree& input) {
  const PhyloTree tree = Unroot(input);
  std::vector<NodeId> parent;
  const std::vector<std::uint64_t> mask = BelowMasks(tree, tree.leaf_of(0), parent);
  const std::uint64_t all = Full(tree.taxon_count());
  std::set<std::uint64_t> out;
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    const int size = Popcount(mask[v]);
    if (parent[v] == kNoNode || size < 2 || tree.taxon_count() - size < 2) continue;
    out.insert(Normalise(mask[v], all));
  }
  return out;
}

std::set<std::uint64_t> Clusters(const PhyloTree& rooted) {
  if (!rooted.rooted()) throw DomainError("clusters need a rooted tree");
  std::vector<NodeId> parent;
  const std::vector<std::uint64_t> mask = BelowMasks(rooted, rooted.root(), parent);
  return {mask.begin(), mask.end()};
}

bool SameUnrootedTopology(const PhyloTree& a, const PhyloTree& b) {
  return a.taxa() == b.taxa() && Splits(a) == Splits(b);
}

bool SameRootedTopology(const PhyloTree& a, const PhyloTree& b) {
  return a.taxa() == b.taxa() && Clusters(a) == Clusters(b);
}

bool IsAgreementForestBySplits(const PhyloTree& t1, const PhyloTree& t2, const Character& p) {
  const auto s1 = Splits(t1), s2 = Splits(t2);
  for (const auto& block : p.blocks()) {
    std::uint64_t subset = 0;
    for (TaxonId t : block) subset |= std::uint64_t{1} << t;
    if (RestrictSplits(s1, subset) != RestrictSplits(s2, subset)) return false;
  }
  return IsConvexBySpanning(Unroot(t1), p) && IsConvexBySpanning(Unroot(t2), p);
}

bool IsRootedAgreementForestByClusters(const PhyloTree& t1, const PhyloTree& t2, const Character& p) {
  const int n = t1.taxon_count();
  const auto c1 = Clusters(t1), c2 = Clusters(t2);
  for (const auto& block : p.blocks()) {
    std::uint64_t subset = 0;
    for (TaxonId t : block)
      if (t < n) subset |= std::uint64_t{1} << t;
    if (subset && RestrictClusters(c1, subset) != RestrictClusters(c2, subset)) return false;
  }
  const PhyloTree a1 = AttachRootTaxon(t1, "~root"), a2 = AttachRootTaxon(t2, "~root");
  return IsConvexBySpanning(a1, p) && IsConvexBySpanning(a2, p);
}

int BruteMafSize(const PhyloTree& t1, const PhyloTree& t2) {
  int best = INT_MAX;
  ForEachPartition(t1.taxon_count(), [&](const Character& p) {
    if (p.block_count() < best && IsAgreementForestBySplits(t1, t2, p)) best = p.block_count();
  });
  return best;
}

int BruteRootedMafSize(const PhyloTree& t1, const PhyloTree& t2) {
  int best = INT_MAX;
  ForEachPartition(t1.taxon_count() + 1, [&](const Character& p) {
    if (p.block_count() < best && IsRootedAgreementForestByClusters(t1, t2, p)) best = p.block_count();
  });
  return best;
}

std::vector<Character> CoveringCharacters(const PhyloTree& input) {
  const PhyloTree tree = Unroot(input);
  std::vector<Character> out;
  ForEachPartition(tree.taxon_count(), [&](const Character& p) {
    for (const auto& b : p.blocks())
      if (b.size() < 2) return;
    if (IsCoveringBySpanning(tree, p)) out.push_back(p);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Character> ConvexCharacters(const PhyloTree& input) {
  const PhyloTree tree = Unroot(input);
  std::vector<Character> out;
  ForEachPartition(tree.taxon_count(), [&](const Character& p) {
    if (IsConvexBySpanning(tree, p)) out.push_back(p);
  });
  std::sort(out.begin(), out.end());
  return out;
}

int BruteMp2(const PhyloTree& t1, const PhyloTree& t2) {
  const PhyloTree u1 = Unroot(t1), u2 = Unroot(t2);
  const int n = u1.taxon_count();
  int best = 0;
  std::vector<int> states(n, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    for (int t = 1; t < n; ++t) states[t] = (mask >> (t - 1)) & 1;
    const Character f = Character::FromStates(states);
    best = std::max(best, std::abs(ExhaustiveParsimony(u1, f) - ExhaustiveParsimony(u2, f)));
  }
  return best;
}

bool IsLegalByDefinition(const CoreTree& core, const Matching& m) {
  std::vector<char> covered(core.node_count(), 0), in_m(core.edge_count(), 0);
  for (EdgeId e : m.edges) {
    in_m[e] = 1;
    covered[core.edge(e).u] = covered[core.edge(e).v] = 1;
  }
  for (EdgeId e = 0; e < core.edge_count(); ++e) {
    if (in_m[e]) continue;
    const auto [u, v] = core.edge(e);
    // Component {u, v}: no other unmatched edge at either end.
    auto isolated = [&](NodeId x) {
      for (auto [w, e2] : core.neighbors(x))
        if (e2 != e && !in_m[e2]) return false;
      return true;
    };
    if (isolated(u) && isolated(v) && covered[u] && covered[v]) return false;
  }
  return true;
}

}  // namespace convexforest::oracle
