#pragma once

#include "convexforest/character.hpp"
#include "convexforest/phylo_tree.hpp"

#include <functional>
#include <vector>

namespace convexforest {

enum class CountMode { kExact, kAtLeast };

// g(T_u, k): convex characters of the subtree at u with k states.
// h(T_u, k): pairs (f, C) where state C of f may be extended through u's
// parent edge. Unrooted trees are rooted on the pendant edge of taxon 0;
// the left child of a node is the one whose subtree holds the smaller taxon.
class ConvexCounter {
 public:
  explicit ConvexCounter(const PhyloTree& tree);

  int taxon_count() const { return taxon_count_; }
  const PhyloTree& rooted_tree() const { return rooted_; }
  // Row k = 0..m_u (entry 0 is always 0).
  const std::vector<BigInt>& g(NodeId u) const { return g_[u]; }
  const std::vector<BigInt>& h(NodeId u) const { return h_[u]; }

  // Throws DomainError unless 1 <= k <= n.
  BigInt Count(int k, CountMode mode = CountMode::kExact) const;
  BigInt Total() const { return Count(1, CountMode::kAtLeast); }

  // The index-th character with exactly k states, in the order of the
  // summands: for h, all h(l,i)g(r,k-i), then g(l,i)h(r,k-i), then
  // h(l,i)h(r,k+1-i); for g, all g(l,i)g(r,k-i), then h(l,i)h(r,k+1-i);
  // i ascending within each sum, left-major within a product.
  Character Unrank(int k, const BigInt& index) const;

  // Characters with >= min_size states, size by size, skipping the first
  // `offset` and stopping after `limit` (negative = no limit) or when the
  // callback returns false.
  void Enumerate(int min_size, const BigInt& offset, long long limit,
                 const std::function<bool(const Character&)>& visit) const;

 private:
  struct Partial {
    std::vector<std::vector<TaxonId>> blocks;
    int open = -1;
  };
  Partial UnrankNode(NodeId u, int k, BigInt index, bool open) const;

  PhyloTree rooted_;
  RootedView view_;
  int taxon_count_ = 0;
  std::vector<int> leaves_below_;
  std::vector<std::vector<BigInt>> g_, h_;
};

BigInt Binomial(int n, int k);
// g(T, k) = C(2n-k-1, k-1), independent of the shape.
BigInt SteelCount(int n, int k);
// sum_{r >= k} C(2n-r-1, r-1).
BigInt SteelTail(int n, int k);

}  // namespace convexforest
