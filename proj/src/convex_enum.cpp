#include "convexforest/convex_enum.hpp"

#include <algorithm>

namespace convexforest {

ConvexCounter::ConvexCounter(const PhyloTree& tree)
    : rooted_(tree.rooted() || tree.node_count() == 1
                  ? tree
                  : RootBySubdivision(tree, PendantEdge(tree, 0))),
      taxon_count_(tree.taxon_count()) {
  const int n = rooted_.node_count();
  g_.assign(n, {});
  h_.assign(n, {});
  leaves_below_.assign(n, 0);
  if (!rooted_.rooted()) {
    g_[0] = h_[0] = {0, 1};
    leaves_below_[0] = 1;
    view_.root = 0;
    view_.children.assign(1, {});
    return;
  }
  view_ = MakeRootedView(rooted_);
  for (auto it = view_.preorder.rbegin(); it != view_.preorder.rend(); ++it) {
    const NodeId u = *it;
    if (rooted_.is_leaf(u)) {
      leaves_below_[u] = 1;
      g_[u] = h_[u] = {0, 1};
      continue;
    }
    const NodeId l = view_.children[u][0], r = view_.children[u][1];
    const int ml = leaves_below_[l], mr = leaves_below_[r], m = ml + mr;
    leaves_below_[u] = m;
    auto& g = g_[u];
    auto& h = h_[u];
    g.assign(m + 1, 0);
    h.assign(m + 1, 0);
    for (int i = 1; i <= ml; ++i)
      for (int j = 1; j <= mr; ++j) {
        g[i + j] += g_[l][i] * g_[r][j];
        h[i + j] += h_[l][i] * g_[r][j] + g_[l][i] * h_[r][j];
        const BigInt hh = h_[l][i] * h_[r][j];
        g[i + j - 1] += hh;
        h[i + j - 1] += hh;
      }
  }
}

BigInt ConvexCounter::Count(int k, CountMode mode) const {
  if (k < 1 || k > taxon_count_) throw DomainError("state count k out of range");
  const auto& row = g_[view_.root];
  if (mode == CountMode::kExact) return row[k];
  BigInt total = 0;
  for (int r = k; r <= taxon_count_; ++r) total += row[r];
  return total;
}

ConvexCounter::Partial ConvexCounter::UnrankNode(NodeId u, int k, BigInt index, bool open) const {
  if (rooted_.is_leaf(u)) return {{{rooted_.taxon_of(u)}}, open ? 0 : -1};
  const NodeId l = view_.children[u][0], r = view_.children[u][1];
  const int ml = leaves_below_[l], mr = leaves_below_[r];

  // kind: 0 = both closed, 1 = left open, 2 = right open, 3 = both open (merged)
  auto combine = [&](int kind, int i, int j, const BigInt& cnt_r, const BigInt& idx) {
    const BigInt il = idx / cnt_r, ir = idx % cnt_r;
    Partial left = UnrankNode(l, i, il, kind == 1 || kind == 3);
    Partial right = UnrankNode(r, j, ir, kind == 2 || kind == 3);
    Partial out;
    out.blocks = std::move(left.blocks);
    const int offset = static_cast<int>(out.blocks.size());
    if (kind == 3) {
      auto& merged = out.blocks[left.open];
      merged.insert(merged.end(), right.blocks[right.open].begin(), right.blocks[right.open].end());
      for (int b = 0; b < static_cast<int>(right.blocks.size()); ++b)
        if (b != right.open) out.blocks.push_back(std::move(right.blocks[b]));
      out.open = open ? left.open : -1;
    } else {
      for (auto& b : right.blocks) out.blocks.push_back(std::move(b));
      if (open) out.open = kind == 1 ? left.open : offset + right.open;
    }
    return out;
  };

  struct Sum {
    int kind;
    const std::vector<std::vector<BigInt>>* left;
    const std::vector<std::vector<BigInt>>* right;
    int shift;  // j = k + shift - i
  };
  std::vector<Sum> sums;
  if (open)
    sums = {{1, &h_, &g_, 0}, {2, &g_, &h_, 0}, {3, &h_, &h_, 1}};
  else
    sums = {{0, &g_, &g_, 0}, {3, &h_, &h_, 1}};
  for (const Sum& s : sums)
    for (int i = 1; i <= ml; ++i) {
      const int j = k + s.shift - i;
      if (j < 1 || j > mr) continue;
      const BigInt& cl = (*s.left)[l][i];
      const BigInt& cr = (*s.right)[r][j];
      const BigInt cnt = cl * cr;
      if (index < cnt) return combine(s.kind, i, j, cr, index);
      index -= cnt;
    }
  throw DomainError("unrank index out of range");
}

Character ConvexCounter::Unrank(int k, const BigInt& index) const {
  if (k < 1 || k > taxon_count_) throw DomainError("state count k out of range");
  if (index < 0 || index >= g_[view_.root][k]) throw DomainError("unrank index out of range");
  Partial p = UnrankNode(view_.root, k, index, false);
  return Character(std::move(p.blocks), taxon_count_);
}

void ConvexCounter::Enumerate(int min_size, const BigInt& offset, long long limit,
                              const std::function<bool(const Character&)>& visit) const {
  if (min_size < 1 || min_size > taxon_count_) throw DomainError("min size out of range");
  if (offset < 0) throw DomainError("offset must be nonnegative");
  BigInt skip = offset;
  long long emitted = 0;
  for (int k = min_size; k <= taxon_count_; ++k) {
    const BigInt& count = g_[view_.root][k];
    if (skip >= count) {
      skip -= count;
      continue;
    }
    for (BigInt i = skip; i < count; ++i) {
      if (limit >= 0 && emitted >= limit) return;
      ++emitted;
      if (!visit(Unrank(k, i))) return;
    }
    skip = 0;
  }
}

BigInt Binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

BigInt SteelCount(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw DomainError("state count k out of range");
  return Binomial(2 * n - k - 1, k - 1);
}

BigInt SteelTail(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw DomainError("state count k out of range");
  BigInt total = 0;
  for (int r = k; r <= n; ++r) total += Binomial(2 * n - r - 1, r - 1);
  return total;
}

}  // namespace convexforest
