#include "convexforest/agreement.hpp"

#include "convexforest/convex_enum.hpp"
#include "convexforest/parallel.hpp"

#include <cmath>
#include <mutex>
#include <numeric>

namespace convexforest {

namespace {

std::vector<char> BlockMask(int taxa, const std::vector<TaxonId>& block) {
  std::vector<char> mask(taxa, 0);
  for (TaxonId t : block) mask[t] = 1;
  return mask;
}

std::string BlockName(const PhyloTree& tree, const std::vector<TaxonId>& block) {
  std::string out = "{";
  for (std::size_t i = 0; i < block.size(); ++i) out += (i ? "," : "") + tree.taxa()[block[i]];
  return out + "}";
}

// Empty string when the blocks' spanning subtrees are pairwise
// vertex-disjoint in `tree`, otherwise a description of the first overlap.
std::string FindOverlap(const PhyloTree& tree, const Character& p, const char* which) {
  std::vector<int> owner(tree.node_count(), -1);
  for (int b = 0; b < p.block_count(); ++b) {
    const std::vector<char> span = SpanningNodes(tree, BlockMask(tree.taxon_count(), p.block(b)));
    for (NodeId v = 0; v < tree.node_count(); ++v) {
      if (!span[v]) continue;
      if (owner[v] >= 0)
        return std::string("spanning subtrees of ") + BlockName(tree, p.block(owner[v])) +
               " and " + BlockName(tree, p.block(b)) + " overlap in " + which;
      owner[v] = b;
    }
  }
  return {};
}

AgreementForest Verdict(const Character& p, std::string reason) {
  AgreementForest out;
  out.partition = p;
  out.size = p.block_count();
  out.valid = reason.empty();
  out.reason = std::move(reason);
  return out;
}

using Predicate = std::function<AgreementForest(const Character&)>;

std::uint64_t SmallCount(const BigInt& count) {
  if (count > BigInt(std::numeric_limits<std::int64_t>::max()))
    throw DomainError("enumeration space too large");
  return static_cast<std::uint64_t>(count);
}

// Smallest valid forest among characters convex on `tree` with >= min_size
// states.
std::optional<AgreementForest> EnumerateSmallest(const PhyloTree& tree, int min_size, int jobs,
                                                 const Predicate& is_forest) {
  const ConvexCounter counter(tree);
  for (int k = std::max(min_size, 1); k <= counter.taxon_count(); ++k) {
    const std::uint64_t count = SmallCount(counter.Count(k));
    std::vector<std::optional<AgreementForest>> best(std::max(1, jobs));
    ParallelChunks(count, jobs, [&](int chunk, std::uint64_t begin, std::uint64_t end) {
      for (std::uint64_t i = begin; i < end; ++i) {
        AgreementForest af = is_forest(counter.Unrank(k, BigInt(i)));
        if (af.valid && (!best[chunk] || af.partition < best[chunk]->partition))
          best[chunk] = std::move(af);
      }
    });
    std::optional<AgreementForest> winner;
    for (auto& b : best)
      if (b && (!winner || b->partition < winner->partition)) winner = std::move(b);
    if (winner) return winner;
  }
  return std::nullopt;
}

std::optional<AgreementForest> EdgeDeletionSearch(const PhyloTree& tree, int k,
                                                  const Predicate& is_forest) {
  if (k < 1) return std::nullopt;
  const int edges = tree.edge_count();
  const int max_cut = std::min(k - 1, edges);
  std::vector<char> cut(edges, 0);
  std::vector<int> chosen;
  auto test = [&]() -> std::optional<AgreementForest> {
    std::vector<int> parent(tree.node_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (EdgeId e = 0; e < edges; ++e)
      if (!cut[e]) parent[find(tree.edge(e).u)] = find(tree.edge(e).v);
    std::vector<int> states(tree.taxon_count());
    for (TaxonId t = 0; t < tree.taxon_count(); ++t) states[t] = find(tree.leaf_of(t));
    AgreementForest af = is_forest(Character::FromStates(states));
    if (af.valid && af.size <= k) return af;
    return std::nullopt;
  };
  // Combinations of each size in lexicographic order.
  for (int size = 0; size <= max_cut; ++size) {
    std::vector<int> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::fill(cut.begin(), cut.end(), 0);
      for (int e : idx) cut[e] = 1;
      if (auto af = test()) return af;
      int pos = size - 1;
      while (pos >= 0 && idx[pos] == edges - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int j = pos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

int Threshold(double c, int n) {
  if (!(c > 0 && c <= 1)) throw DomainError("tipping point c must lie in (0, 1]");
  return static_cast<int>(std::ceil(c * n - 1e-9));
}

}  // namespace

AgreementForest IsAgreementForest(const PhyloTree& t1, const PhyloTree& t2,
                                  const Character& partition) {
  RequireSameTaxa(t1, t2);
  if (partition.taxon_count() != t1.taxon_count())
    throw DomainError("partition taxa do not match the trees");
  const PhyloTree u1 = Unroot(t1), u2 = Unroot(t2);
  for (const auto& block : partition.blocks()) {
    if (block.size() < 4) continue;  // at most one unrooted topology
    const std::vector<char> mask = BlockMask(u1.taxon_count(), block);
    if (SerializeNewick(Restrict(u1, mask)) != SerializeNewick(Restrict(u2, mask)))
      return Verdict(partition, "restrictions to " + BlockName(u1, block) + " differ");
  }
  if (auto why = FindOverlap(u1, partition, "tree 1"); !why.empty()) return Verdict(partition, why);
  if (auto why = FindOverlap(u2, partition, "tree 2"); !why.empty()) return Verdict(partition, why);
  return Verdict(partition, {});
}

PhyloTree AugmentRooted(const PhyloTree& rooted) { return AttachRootTaxon(rooted, kRootTaxon); }

AgreementForest IsRootedAgreementForest(const PhyloTree& t1, const PhyloTree& t2,
                                        const Character& partition) {
  if (!t1.rooted() || !t2.rooted()) throw DomainError("rooted agreement forests need rooted trees");
  RequireSameTaxa(t1, t2);
  const int n = t1.taxon_count();
  if (partition.taxon_count() != n + 1)
    throw DomainError("partition must cover the taxa plus the root taxon");
  const PhyloTree a1 = AugmentRooted(t1), a2 = AugmentRooted(t2);
  for (const auto& block : partition.blocks()) {
    std::vector<char> mask(n, 0);
    int kept = 0;
    for (TaxonId t : block)
      if (t < n) mask[t] = 1, ++kept;
    if (kept < 3) continue;  // at most one rooted topology
    if (SerializeNewick(Restrict(t1, mask)) != SerializeNewick(Restrict(t2, mask)))
      return Verdict(partition, "rooted restrictions to " + BlockName(a1, block) + " differ");
  }
  if (auto why = FindOverlap(a1, partition, "tree 1"); !why.empty()) return Verdict(partition, why);
  if (auto why = FindOverlap(a2, partition, "tree 2"); !why.empty()) return Verdict(partition, why);
  return Verdict(partition, {});
}

AgreementForest MafEnumerate(const PhyloTree& t1, const PhyloTree& t2, int min_size, int jobs) {
  RequireSameTaxa(t1, t2);
  if (min_size < 1) throw DomainError("min size must be at least 1");
  const PhyloTree u1 = Unroot(t1), u2 = Unroot(t2);
  auto best = EnumerateSmallest(u1, min_size, jobs, [&](const Character& p) {
    return IsAgreementForest(u1, u2, p);
  });
  // Only reachable when min_size exceeds n.
  if (!best) return IsAgreementForest(u1, u2, Character::Singletons(u1.taxon_count()));
  return *best;
}

std::optional<AgreementForest> FptBaseline(const PhyloTree& t1, const PhyloTree& t2, int k) {
  RequireSameTaxa(t1, t2);
  const PhyloTree u1 = Unroot(t1), u2 = Unroot(t2);
  return EdgeDeletionSearch(u1, k, [&](const Character& p) { return IsAgreementForest(u1, u2, p); });
}

HybridResult MafHybrid(const PhyloTree& t1, const PhyloTree& t2, const FptOracle& oracle,
                       double c, int jobs) {
  RequireSameTaxa(t1, t2);
  const int n = t1.taxon_count();
  const int threshold = Threshold(c, n);
  HybridResult out;
  for (int k = 1; k <= std::min(threshold, n); ++k) {
    out.k_tried = k;
    if (auto af = oracle(k)) {
      out.forest = std::move(*af);
      out.mode_used = "oracle";
      return out;
    }
  }
  out.forest = MafEnumerate(t1, t2, threshold + 1, jobs);
  out.mode_used = "enumeration";
  return out;
}

HybridResult MafHybrid(const PhyloTree& t1, const PhyloTree& t2, double c, int jobs) {
  return MafHybrid(t1, t2, [&](int k) { return FptBaseline(t1, t2, k); }, c, jobs);
}

HybridResult Rmaf(const PhyloTree& t1, const PhyloTree& t2, RmafMode mode, double c, int jobs) {
  if (!t1.rooted() || !t2.rooted()) throw DomainError("rooted agreement forests need rooted trees");
  RequireSameTaxa(t1, t2);
  const PhyloTree a1 = AugmentRooted(t1);
  const Predicate is_forest = [&](const Character& p) { return IsRootedAgreementForest(t1, t2, p); };
  HybridResult out;
  int min_size = 1;
  if (mode == RmafMode::kHybrid) {
    const int threshold = Threshold(c, t1.taxon_count());
    for (int k = 1; k <= threshold; ++k) {
      out.k_tried = k;
      if (auto af = EdgeDeletionSearch(a1, k, is_forest)) {
        out.forest = std::move(*af);
        out.mode_used = "oracle";
        return out;
      }
    }
    min_size = threshold + 1;
  }
  auto best = EnumerateSmallest(a1, min_size, jobs, is_forest);
  if (!best) throw DomainError("no rooted agreement forest found");  // singletons always qualify
  out.forest = std::move(*best);
  out.mode_used = "enumeration";
  return out;
}

double Entropy(double p) {
  if (p <= 0 || p >= 1) return 0;
  return -p * std::log(p) - (1 - p) * std::log(1 - p);
}

TippingPoint SolveTippingPoint(double base, double tol) {
  if (!(base >= 1)) throw DomainError("FPT base must be at least 1");
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  TippingPoint out{base, 1.0, base};
  if (base == 1) return out;
  const double c0 = 1 - 1 / std::sqrt(5.0);
  const double log_base = std::log(base);
  // Positive while the FPT side is still the cheaper one.
  auto balance = [&](double c) {
    const double ce = std::max(c, c0);
    return (2 - ce) * Entropy(ce / (2 - ce)) - c * log_base;
  };
  double lo = 0, hi = 1;
  while (hi - lo > tol) {
    const double mid = (lo + hi) / 2;
    (balance(mid) > 0 ? lo : hi) = mid;
  }
  out.c = (lo + hi) / 2;
  out.runtime_base = std::pow(base, out.c);
  return out;
}

}  // namespace convexforest
