#include "convexforest/matchings.hpp"

#include <algorithm>

namespace convexforest {

namespace {

struct Rooting {
  std::vector<NodeId> order;  // preorder
  std::vector<NodeId> left, right;
  std::vector<EdgeId> left_edge, right_edge;
};

Rooting RootCore(const CoreTree& core, NodeId root) {
  if (root < 0 || root >= core.node_count()) throw DomainError("root is not a core node");
  if (core.degree(root) > 1) throw DomainError("core root must be a leaf");
  const int n = core.node_count();
  Rooting r;
  r.left.assign(n, kNoNode);
  r.right.assign(n, kNoNode);
  r.left_edge.assign(n, -1);
  r.right_edge.assign(n, -1);
  std::vector<NodeId> parent(n, kNoNode);
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    r.order.push_back(v);
    std::vector<Incidence> kids;
    for (const Incidence& inc : core.neighbors(v))
      if (inc.node != parent[v]) kids.push_back(inc);
    std::sort(kids.begin(), kids.end(), [](auto a, auto b) { return a.node < b.node; });
    if (kids.size() > 2) throw DomainError("node of degree > 3 in core tree");
    for (std::size_t i = 0; i < kids.size(); ++i) {
      parent[kids[i].node] = v;
      stack.push_back(kids[i].node);
      (i == 0 ? r.left : r.right)[v] = kids[i].node;
      (i == 0 ? r.left_edge : r.right_edge)[v] = kids[i].edge;
    }
  }
  return r;
}

BigInt Sum4(const MatchVector& v) { return v[0] + v[1] + v[2] + v[3]; }

}  // namespace

MatchVector CombineBranches(const MatchVector& l, const MatchVector& r) {
  const auto& [v1, w1, x1, y1, z1] = l;
  const auto& [v2, w2, x2, y2, z2] = r;
  return {(v1 + w1 + x1 + y1 + z1) * (v2 + w2 + x2 + y2 + z2) - y1 * z2 - z1 * y2,
          (v1 + w1 + x1 + y1) * v2 + v1 * (v2 + w2 + x2 + y2),
          y1 * z2 + z1 * y2,
          v1 * z2 + z1 * v2,
          0};
}

NodeId DefaultCoreRoot(const CoreTree& core) {
  for (NodeId v = 0; v < core.node_count(); ++v)
    if (core.degree(v) <= 1) return v;
  throw DomainError("core tree has no leaf");
}

std::vector<MatchVector> MatchVectors(const CoreTree& core, NodeId root) {
  const Rooting r = RootCore(core, root);
  std::vector<MatchVector> out(core.node_count());
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    const NodeId u = *it;
    const MatchVector l = r.left[u] == kNoNode ? EmptyTreeVector() : out[r.left[u]];
    const MatchVector rr = r.right[u] == kNoNode ? EmptyTreeVector() : out[r.right[u]];
    out[u] = CombineBranches(l, rr);
  }
  return out;
}

MatchingIndex::MatchingIndex(const CoreTree& core, MatchingKind kind)
    : core_(&core), kind_(kind), root_(DefaultCoreRoot(core)) {
  if (kind == MatchingKind::kLegal) {
    enum { A0, A1, B0, B1, E };
    empty_class_ = E;
    summands_.assign(4, {});
    const int all[] = {A0, A1, B0, B1, E};
    for (int cl : all)
      for (int cr : all)
        if (!((cl == B1 && cr == E) || (cl == E && cr == B1))) summands_[A0].push_back({cl, cr, 0});
    for (int x : {A0, A1, B0, B1}) summands_[A1].push_back({A0, x, 1});
    for (int x : {A0, A1, B0, B1}) summands_[A1].push_back({x, A0, 2});
    summands_[B0] = {{B1, E, 0}, {E, B1, 0}};
    summands_[B1] = {{A0, E, 1}, {E, A0, 2}};
  } else {
    enum { U0, U1, E };
    empty_class_ = E;
    summands_.assign(2, {});
    for (int cl : {U0, U1, E})
      for (int cr : {U0, U1, E}) summands_[U0].push_back({cl, cr, 0});
    for (int x : {U0, U1, E}) summands_[U1].push_back({U0, x, 1});
    for (int x : {U0, U1, E}) summands_[U1].push_back({x, U0, 2});
  }
  const int classes = empty_class_ + 1;
  empty_counts_.assign(classes, 0);
  empty_counts_[empty_class_] = 1;

  Rooting r = RootCore(core, root_);
  left_ = std::move(r.left);
  right_ = std::move(r.right);
  left_edge_ = std::move(r.left_edge);
  right_edge_ = std::move(r.right_edge);
  counts_.assign(core.node_count(), std::vector<BigInt>(classes, 0));
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    const NodeId u = *it;
    const auto& cl = Counts(left_[u]);
    const auto& cr = Counts(right_[u]);
    for (int c = 0; c < empty_class_; ++c)
      for (const Summand& s : summands_[c]) counts_[u][c] += cl[s.left] * cr[s.right];
  }
}

const std::vector<BigInt>& MatchingIndex::Counts(NodeId v) const {
  return v == kNoNode ? empty_counts_ : counts_[v];
}

BigInt MatchingIndex::Count() const {
  BigInt total = 0;
  for (int c = 0; c < empty_class_; ++c) total += counts_[root_][c];
  return total;
}

void MatchingIndex::UnrankInto(NodeId u, int cls, BigInt index, std::vector<EdgeId>& out) const {
  const auto& cl = Counts(left_[u]);
  const auto& cr = Counts(right_[u]);
  for (const Summand& s : summands_[cls]) {
    const BigInt count = cl[s.left] * cr[s.right];
    if (index >= count) {
      index -= count;
      continue;
    }
    const BigInt& width = cr[s.right];
    if (s.matched == 1) out.push_back(left_edge_[u]);
    if (s.matched == 2) out.push_back(right_edge_[u]);
    if (s.left != empty_class_) UnrankInto(left_[u], s.left, index / width, out);
    if (s.right != empty_class_) UnrankInto(right_[u], s.right, index % width, out);
    return;
  }
  throw DomainError("matching index out of range");
}

Matching MatchingIndex::Unrank(const BigInt& index) const {
  if (index < 0 || index >= Count()) throw DomainError("matching index out of range");
  BigInt rest = index;
  for (int c = 0; c < empty_class_; ++c) {
    if (rest < counts_[root_][c]) {
      Matching m;
      UnrankInto(root_, c, rest, m.edges);
      std::sort(m.edges.begin(), m.edges.end());
      return m;
    }
    rest -= counts_[root_][c];
  }
  throw DomainError("matching index out of range");
}

BigInt CountMatchings(const CoreTree& core, MatchingKind kind) {
  return MatchingIndex(core, kind).Count();
}

std::vector<Matching> BruteForceMatchings(const CoreTree& core, int edge_cap) {
  if (core.edge_count() > edge_cap)
    throw DomainError("core has " + std::to_string(core.edge_count()) +
                      " edges, above the brute-force cap of " + std::to_string(edge_cap));
  std::vector<Matching> out;
  std::vector<char> used(core.node_count(), 0);
  std::vector<EdgeId> current;
  auto rec = [&](auto&& self, EdgeId e) -> void {
    if (e == core.edge_count()) {
      out.push_back({current});
      return;
    }
    self(self, e + 1);
    const auto [u, v] = core.edge(e);
    if (used[u] || used[v]) return;
    used[u] = used[v] = 1;
    current.push_back(e);
    self(self, e + 1);
    current.pop_back();
    used[u] = used[v] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool IsMatching(const CoreTree& core, const Matching& m) {
  std::vector<char> used(core.node_count(), 0);
  for (EdgeId e : m.edges) {
    if (e < 0 || e >= core.edge_count()) return false;
    const auto [u, v] = core.edge(e);
    if (used[u] || used[v]) return false;
    used[u] = used[v] = 1;
  }
  return true;
}

LegalityReport Legality(const CoreTree& core, const Matching& m, std::optional<int> k) {
  if (!IsMatching(core, m)) throw DomainError("edge set is not a matching");
  const int n = core.node_count();
  std::vector<char> in_m(core.edge_count(), 0);
  for (EdgeId e : m.edges) in_m[e] = 1;
  std::vector<int> comp(n, -1);
  LegalityReport report;
  report.k = k;
  for (NodeId start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(report.components.size());
    LegalityComponent c;
    std::vector<NodeId> stack{start};
    comp[start] = id;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      c.nodes.push_back(v);
      c.weight += core.weight(v);
      for (auto [w, e] : core.neighbors(v)) {
        if (in_m[e]) {
          ++c.m;
        } else if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(c.nodes.begin(), c.nodes.end());
    c.s = static_cast<int>(c.nodes.size());
    if (c.weight != c.s - c.m + 2) throw DomainError("component weight identity violated");
    if ((!k || c.s <= *k) && !(c.s > 2 * c.m - 2)) report.legal = false;
    report.components.push_back(std::move(c));
  }
  return report;
}

bool IsKLegal(const CoreTree& core, const Matching& m, std::optional<int> k) {
  return Legality(core, m, k).legal;
}

BigInt CountKLegalBrute(const CoreTree& core, std::optional<int> k, int edge_cap) {
  BigInt count = 0;
  for (const Matching& m : BruteForceMatchings(core, edge_cap))
    if (IsKLegal(core, m, k)) ++count;
  return count;
}

}  // namespace convexforest
